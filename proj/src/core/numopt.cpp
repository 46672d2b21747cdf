#include "duopoly/numopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "duopoly/errors.hpp"

namespace duopoly {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Candidate {
  double x;
  double value;
};

class CountingObjective {
 public:
  explicit CountingObjective(const Objective& f) : f_(f) {}

  // Infeasible points evaluate to -inf so comparisons stay total.
  double operator()(double x) {
    ++evaluations_;
    const std::optional<double> v = f_(x);
    return (v && std::isfinite(*v)) ? *v : kNegInf;
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  const Objective& f_;
  std::size_t evaluations_ = 0;
};

// a >= b up to the tie tolerance.
bool at_least(double a, double b, double tie_tol) {
  if (b == kNegInf) return true;
  if (a == kNegInf) return false;
  return a >= b || values_tied(a, b, tie_tol);
}

Candidate golden_section(CountingObjective& f, double a, double b, double refine_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while ((b - a) > refine_tol * std::max(1.0, std::abs(0.5 * (a + b)))) {
    // On equal values keep the right part, so plateaus drift upward.
    if (f1 > f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 > f2 ? Candidate{x1, f1} : Candidate{x2, f2};
}

}  // namespace

void OptConfig::validate() const {
  if (grid_points < 16) throw ValidationError("OptConfig: grid_points >= 16");
  if (!(refine_tol > 0.0)) throw ValidationError("OptConfig: refine_tol > 0");
  if (!(tie_tol > 0.0)) throw ValidationError("OptConfig: tie_tol > 0");
}

bool values_tied(double a, double b, double tie_tol) noexcept {
  if (!std::isfinite(a) || !std::isfinite(b)) return a == b;
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tie_tol * scale;
}

OptResult maximize_scalar(const Objective& objective, double lo, double hi,
                          const OptConfig& config) {
  config.validate();
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw ValidationError("maximize_scalar: requires finite lo < hi");
  }

  CountingObjective f(objective);
  const auto n = static_cast<std::size_t>(config.grid_points);
  const double step = (hi - lo) / static_cast<double>(n - 1);

  std::vector<double> xs(n);
  std::vector<double> vs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = (i + 1 == n) ? hi : lo + step * static_cast<double>(i);
    vs[i] = f(xs[i]);
  }

  OptResult result;
  if (std::all_of(vs.begin(), vs.end(), [](double v) { return v == kNegInf; })) {
    result.status = OptStatus::NoFeasiblePoint;
    result.evaluations = f.evaluations();
    return result;
  }

  // Grid local maxima, grouped into runs of consecutive indices (clusters).
  auto is_local_max = [&](std::size_t i) {
    if (vs[i] == kNegInf) return false;
    const bool left = i == 0 || at_least(vs[i], vs[i - 1], config.tie_tol);
    const bool right = i + 1 == n || at_least(vs[i], vs[i + 1], config.tie_tol);
    return left && right;
  };

  std::vector<Candidate> candidates;
  std::size_t i = 0;
  while (i < n) {
    if (!is_local_max(i)) {
      ++i;
      continue;
    }
    std::size_t best = i;
    std::size_t j = i;
    for (; j < n && is_local_max(j); ++j) {
      if (vs[j] >= vs[best]) best = j;
    }
    i = j;

    const double a = xs[best == 0 ? 0 : best - 1];
    const double b = xs[best + 1 == n ? n - 1 : best + 1];
    Candidate refined = golden_section(f, a, b, config.refine_tol);
    // The grid point itself competes, which pins boundary maxima exactly.
    candidates.push_back(refined.value > vs[best] ? refined : Candidate{xs[best], vs[best]});
  }

  double best_value = kNegInf;
  for (const auto& c : candidates) best_value = std::max(best_value, c.value);

  for (const auto& c : candidates) {
    if (values_tied(c.value, best_value, config.tie_tol)) result.tied_argmaxes.push_back(c.x);
  }
  std::sort(result.tied_argmaxes.begin(), result.tied_argmaxes.end());
  // Merge duplicates produced by neighbouring clusters converging together.
  const auto same_point = [&](double a, double b) {
    return std::abs(a - b) <= 10.0 * config.refine_tol * std::max(1.0, std::abs(b));
  };
  result.tied_argmaxes.erase(
      std::unique(result.tied_argmaxes.begin(), result.tied_argmaxes.end(), same_point),
      result.tied_argmaxes.end());

  result.status = OptStatus::Ok;
  result.argmax = result.tied_argmaxes.back();
  // std::unique keeps the first of each merged run, so argmax is a candidate.
  for (const auto& c : candidates) {
    if (c.x == result.argmax) result.max_value = c.value;
  }
  result.evaluations = f.evaluations();
  return result;
}

}  // namespace duopoly
