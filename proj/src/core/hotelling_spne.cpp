#include "duopoly/hotelling_spne.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "duopoly/errors.hpp"

namespace duopoly::hotelling {

namespace {

// Label tolerance: the Stage-1 maximizer sits on the floor (Outcome B).
constexpr double kFloorTol = 1e-7;

void require_hotelling(const MarketParams& params) {
  if (params.model_case != ModelCase::Hotelling) {
    throw ValidationError("hotelling solver requires model_case = hotelling");
  }
  validate(params);
}

bool tail_is_decreasing(const MarketParams& params, double cap) {
  std::array<double, 5> xs{};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = cap * (0.95 + 0.05 * static_cast<double>(i) / (xs.size() - 1));
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(stage1_objective(params, xs[i]) < stage1_objective(params, xs[i - 1]))) return false;
  }
  return true;
}

// Revenue n (p - c) of one provider; price moves leave lease fee and
// investment cost untouched, so payoff gains equal revenue gains.
double revenue(const MarketParams& params, const Investments& inv, const Prices& prices,
               Provider who) {
  const MarketSplit split = hotelling_split(inv, prices);
  return who == Provider::Leader ? split.n_l_total * (prices.p_l - params.c)
                                 : split.n_f_total * (prices.p_f - params.c);
}

CornerDeviation deviate(const MarketParams& params, const Investments& inv, const Prices& from,
                        Provider who, double new_price) {
  Prices to = from;
  CornerDeviation dev;
  dev.who = who;
  if (who == Provider::Leader) {
    dev.old_price = from.p_l;
    to.p_l = new_price;
  } else {
    dev.old_price = from.p_f;
    to.p_f = new_price;
  }
  dev.new_price = new_price;
  dev.gain = revenue(params, inv, to, who) - revenue(params, inv, from, who);
  return dev;
}

}  // namespace

Prices stage3_prices(const Investments& inv, double c) {
  const double i_l = inv.i_l();
  const double i_f = inv.i_f();
  return {c + (2.0 * i_l - i_f) / (3.0 * i_l), c + (i_l + i_f) / (3.0 * i_l)};
}

double full_lease_threshold(double s) {
  if (!(s > 0.0)) throw DomainError("full_lease_threshold: s > 0");
  return std::sqrt(2.0 / (9.0 * s));
}

double stage2_if(const MarketParams& params, double i_l) {
  if (!(i_l > 0.0)) throw DomainError("stage2_if: i_l > 0");
  if (i_l <= full_lease_threshold(params.s)) return i_l;
  return std::min(i_l, i_l / (9.0 * params.s * i_l * i_l - 1.0));
}

double stage1_objective(const MarketParams& params, double i_l) {
  const double floor = full_lease_threshold(params.s);
  if (i_l < floor) {
    std::ostringstream os;
    os << "stage1_objective: i_l = " << i_l << " below the full-lease threshold " << floor;
    throw DomainError(os.str());
  }
  const double ratio = 1.0 / (9.0 * params.s * i_l * i_l - 1.0);  // i_f / i_l
  const double share = 2.0 - ratio;
  const double i_f = i_l * ratio;
  return share * share / 9.0 + params.s * i_f * i_f - params.gamma * i_l * i_l;
}

double stage1_search_cap(const MarketParams& params) {
  return std::max(10.0 * full_lease_threshold(params.s), 2.0 / std::sqrt(params.gamma));
}

EquilibriumPath path_at(const MarketParams& params, const Investments& inv) {
  const Prices prices = stage3_prices(inv, params.c);
  const MarketSplit split = hotelling_split(inv, prices);
  return {inv, prices, split, payoffs(params, inv, prices, split)};
}

SpneSolution solve_spne(const MarketParams& params, const OptConfig& config) {
  require_hotelling(params);

  SpneSolution sol;
  sol.model_case = ModelCase::Hotelling;
  const double floor = full_lease_threshold(params.s);
  sol.i_l_floor = floor;

  double cap = stage1_search_cap(params);
  if (!tail_is_decreasing(params, cap)) {
    cap *= 10.0;
    if (!tail_is_decreasing(params, cap)) {
      sol.notes.push_back("stage-1 objective not decreasing at the search cap");
    }
  }

  const OptResult opt = maximize_scalar(
      [&](double x) -> std::optional<double> { return stage1_objective(params, std::max(x, floor)); },
      floor, cap, config);
  if (!opt.ok()) throw NoEquilibriumError("stage-1 objective has no feasible point");

  double i_l = opt.argmax;
  if (i_l - floor <= kFloorTol * std::max(1.0, floor)) {
    i_l = floor;
    sol.outcome = Outcome::B;
  } else {
    sol.outcome = Outcome::A;
  }
  if (i_l >= cap * (1.0 - 1e-9)) sol.notes.push_back("stage-1 maximizer at the search cap");

  sol.path = path_at(params, Investments(i_l, stage2_if(params, i_l)));
  return sol;
}

double corner_epsilon(double c) { return 1e-6 * std::max(1.0, c); }

CornerDeviation corner_deviation_witness(const MarketParams& params, const Investments& inv,
                                         const Prices& corner) {
  const double x_n = indifferent_eu(inv, corner);
  const double tol = 1e-12 * std::max({1.0, std::abs(corner.p_l), std::abs(corner.p_f)});
  const PreferenceWeights t = preference_weights(inv);
  const double eps0 = corner_epsilon(params.c);

  if (x_n <= tol) {
    // Leader has no end users. The follower's payoff rises with its price
    // until the indifferent user reaches 0.
    if (x_n < -tol) return deviate(params, inv, corner, Provider::Follower, corner.p_l - t.t_f);
    if (corner.p_l > params.c) {
      const double eps = std::min(eps0, 0.5 * (corner.p_l - params.c));
      return deviate(params, inv, corner, Provider::Leader, corner.p_l - eps);
    }
    return deviate(params, inv, corner, Provider::Follower, corner.p_f + std::min(eps0, 0.5));
  }
  if (x_n >= 1.0 - tol) {
    // Follower has no end users; mirror image.
    if (x_n > 1.0 + tol) return deviate(params, inv, corner, Provider::Leader, corner.p_f - t.t_l);
    if (corner.p_f > params.c) {
      const double eps = std::min(eps0, 0.5 * (corner.p_f - params.c));
      return deviate(params, inv, corner, Provider::Follower, corner.p_f - eps);
    }
    return deviate(params, inv, corner, Provider::Leader, corner.p_l + std::min(eps0, 0.5));
  }
  throw ValidationError("corner_deviation_witness: prices must give n_l = 0 or n_f = 0");
}

}  // namespace duopoly::hotelling
