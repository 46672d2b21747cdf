#include "duopoly/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "duopoly/errors.hpp"

namespace duopoly::oracle {

namespace {

// Uniform grid with hi appended when the step does not land on it.
class Grid {
 public:
  Grid(double lo, double hi, double step) : lo_(lo), hi_(hi), step_(step) {
    if (!(step > 0.0) || !(hi >= lo)) throw ValidationError("grid: need step > 0 and hi >= lo");
    steps_ = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    const double last = lo + static_cast<double>(steps_) * step;
    extra_ = hi - last > 1e-12 * std::max(1.0, std::abs(hi));
  }
  long size() const { return steps_ + 1 + (extra_ ? 1 : 0); }
  double at(long i) const {
    if (i > steps_) return hi_;
    return i == steps_ && !extra_ ? hi_ : lo_ + static_cast<double>(i) * step_;
  }
  long nearest(double x) const {
    const long i = std::lround((x - lo_) / step_);
    return std::clamp(i, 0L, size() - 1);
  }

 private:
  double lo_, hi_, step_;
  long steps_ = 0;
  bool extra_ = false;
};

double own_payoff(const MarketParams& params, const Investments& inv, const Prices& prices,
                  Provider who) {
  const Payoffs pi = stage_payoffs(params, inv, prices);
  return who == Provider::Leader ? pi.pi_l : pi.pi_f;
}

Prices with_price(Prices prices, Provider who, double p) {
  (who == Provider::Leader ? prices.p_l : prices.p_f) = p;
  return prices;
}

long grid_best_response(const MarketParams& params, const Investments& inv,
                        const Prices& prices, Provider who, const Grid& grid) {
  long best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (long i = 0; i < grid.size(); ++i) {
    const double v = own_payoff(params, inv, with_price(prices, who, grid.at(i)), who);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  return best;
}

double continuous_best_response(const MarketParams& params, const Investments& inv,
                                const Prices& prices, Provider who, double lo, double hi) {
  constexpr int kScan = 400;
  const auto value = [&](double p) { return own_payoff(params, inv, with_price(prices, who, p), who); };
  const double h = (hi - lo) / kScan;
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kScan; ++i) {
    const double v = value(lo + h * i);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double a = lo + h * std::max(0, best - 1);
  double b = lo + h * std::min(kScan, best + 1);
  const double tol = 1e-15 * std::max(1.0, std::abs(b));
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (value(m1) < value(m2)) {
      a = m1;
    } else {
      b = m2;
    }
  }
  double refined = 0.5 * (a + b);
  // Ternary search stalls where the payoff is flat to rounding; a parabola
  // through three nearby points is exact on quadratic pieces.
  const double d = std::min(1e-4, 0.25 * h);
  const double f0 = value(refined), fm = value(refined - d), fp = value(refined + d);
  const double curvature = fp - 2.0 * f0 + fm;
  if (curvature < 0.0) {
    const double step = -d * (fp - fm) / (2.0 * curvature);
    const double x = std::clamp(refined + step, lo, hi);
    if (std::abs(step) < d && value(x) >= f0) refined = x;
  }
  const double grid_point = lo + h * best;
  return value(refined) >= best_value ? refined : grid_point;
}

}  // namespace

PriceGrid default_price_grid(double c) { return {c - 1.0, c + 3.0, 1e-4}; }

BestResponseReport best_response_prices(const MarketParams& params, const Investments& inv,
                                        const PriceGrid& spec, int max_iterations) {
  const Grid grid(spec.lo, spec.hi, spec.step);
  BestResponseReport report;
  if (grid.size() == 1) {
    report.converged = true;
    report.prices = {grid.at(0), grid.at(0)};
    return report;
  }
  long il = grid.nearest(0.5 * (spec.lo + spec.hi));
  long jf = il;
  for (int it = 1; it <= max_iterations; ++it) {
    report.iterations = it;
    const long new_il =
        grid_best_response(params, inv, {grid.at(il), grid.at(jf)}, Provider::Leader, grid);
    const long new_jf =
        grid_best_response(params, inv, {grid.at(new_il), grid.at(jf)}, Provider::Follower, grid);
    const bool still = new_il == il && new_jf == jf;
    il = new_il;
    jf = new_jf;
    if (still) {
      report.converged = true;
      break;
    }
  }
  report.prices = {grid.at(il), grid.at(jf)};
  return report;
}

BestResponseReport best_response_prices_continuous(const MarketParams& params,
                                                   const Investments& inv, double lo, double hi,
                                                   double tol, int max_iterations) {
  if (!(hi > lo)) throw ValidationError("best_response_prices_continuous: hi > lo");
  BestResponseReport report;
  Prices p{0.5 * (lo + hi), 0.5 * (lo + hi)};
  for (int it = 1; it <= max_iterations; ++it) {
    report.iterations = it;
    Prices next = p;
    next.p_l = continuous_best_response(params, inv, next, Provider::Leader, lo, hi);
    next.p_f = continuous_best_response(params, inv, next, Provider::Follower, lo, hi);
    const bool still = std::abs(next.p_l - p.p_l) < tol && std::abs(next.p_f - p.p_f) < tol;
    p = next;
    if (still) {
      report.converged = true;
      break;
    }
  }
  report.prices = p;
  return report;
}

std::pair<double, double> price_search_window(const MarketParams& params,
                                              const Investments& inv) {
  const double extra = params.model_case == ModelCase::OutsideOption
                           ? std::abs(params.k) + params.b * inv.i_l()
                           : 0.0;
  return {params.c - 1.0 - extra, params.c + 3.0 + extra};
}

GridMax argmax_grid(const std::function<double(double)>& objective, double lo, double hi,
                    double step) {
  const Grid grid(lo, hi, step);
  GridMax best{lo, -std::numeric_limits<double>::infinity()};
  for (long i = 0; i < grid.size(); ++i) {
    const double x = grid.at(i);
    const double v = objective(x);
    if (v >= best.value) best = {x, v};
  }
  return best;
}

double max_deviation_gain(const MarketParams& params, const Investments& inv,
                          const Prices& prices, Provider who, const PriceGrid& spec) {
  const Grid grid(spec.lo, spec.hi, spec.step);
  const double base = own_payoff(params, inv, prices, who);
  double best = -std::numeric_limits<double>::infinity();
  for (long i = 0; i < grid.size(); ++i) {
    best = std::max(best, own_payoff(params, inv, with_price(prices, who, grid.at(i)), who) - base);
  }
  return best;
}

DeviationFound corner_deviation_search(const MarketParams& params, const Investments& inv,
                                       const Prices& prices, const PriceGrid& spec) {
  const Grid grid(spec.lo, spec.hi, spec.step);
  DeviationFound found{Provider::Leader, prices.p_l, -std::numeric_limits<double>::infinity()};
  for (Provider who : {Provider::Leader, Provider::Follower}) {
    const double base = own_payoff(params, inv, prices, who);
    for (long i = 0; i < grid.size(); ++i) {
      const double p = grid.at(i);
      const double gain = own_payoff(params, inv, with_price(prices, who, p), who) - base;
      if (gain > found.gain) found = {who, p, gain};
    }
  }
  return found;
}

double Axis::at(int i) const {
  if (points <= 1) return lo;
  return i == points - 1 ? hi : lo + (hi - lo) * i / (points - 1);
}

NbsGridResult nbs_product_grid(const MarketParams& params,
                               const bargaining::DisagreementPoint& d, const NbsGrids& grids) {
  NbsGridResult result;
  double best = -1.0;
  const double w = params.w;
  const auto admissible = [](double gain, double scale) {
    return gain >= -1e-12 * std::max(1.0, std::abs(scale));
  };
  for (int a = 0; a < grids.i_l.points; ++a) {
    const double i_l = grids.i_l.at(a);
    if (!(i_l > 0.0)) continue;
    for (int r = 0; r < grids.lease_ratio.points; ++r) {
      const double i_f = std::clamp(grids.lease_ratio.at(r), 0.0, 1.0) * i_l;
      const Investments inv(i_l, i_f);
      const auto [lo, hi] = price_search_window(params, inv);
      const BestResponseReport br = best_response_prices_continuous(params, inv, lo, hi);
      if (!br.converged) continue;  // no pure price equilibrium found
      const Prices& prices = br.prices;
      const MarketSplit split = market_split(params, inv, prices);
      const double rev_l = split.n_l_total * (prices.p_l - params.c);
      const double rev_f = split.n_f_total * (prices.p_f - params.c);
      for (int k = 0; k < grids.s.points; ++k) {
        const double s = grids.s.at(k);
        const double pi_f = rev_f - s * i_f * i_f;
        const double pi_l = rev_l + s * i_f * i_f - params.gamma * i_l * i_l;
        const double gain_f = pi_f - d.d_f;
        const double gain_l = pi_l - d.d_l;
        if (!admissible(gain_f, pi_f) || !admissible(gain_l, pi_l)) continue;
        const double product =
            std::pow(std::max(gain_f, 0.0), w) * std::pow(std::max(gain_l, 0.0), 1.0 - w);
        if (product > best) {
          best = product;
          result = {true, i_l, i_f, s, product, {pi_l, pi_f}};
        }
      }
    }
  }
  return result;
}

}  // namespace duopoly::oracle
