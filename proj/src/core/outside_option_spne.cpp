#include "duopoly/outside_option_spne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "duopoly/errors.hpp"

namespace duopoly::outside_option {

namespace {

constexpr double kBoundaryTol = 1e-12;

void require_outside_option(const MarketParams& params) {
  if (params.model_case != ModelCase::OutsideOption) {
    throw ValidationError("outside-option solver requires model_case = outside-option");
  }
}

void require_open_interval(const MarketParams& params, double i_l, const char* where) {
  if (interiority(params, i_l) != Interiority::Interior) {
    std::ostringstream os;
    os << where << ": requires 0 < i_l < 4/b (i_l = " << i_l
       << ", 4/b = " << interiority_limit(params) << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

FgPair fg(const MarketParams& params, double i_l) {
  if (!(i_l > 0.0)) throw DomainError("fg: i_l > 0");
  return {1.0 / (5.0 * i_l) + params.b / 5.0,
          params.b * i_l / 15.0 + 1.0 / 15.0 - params.c / 3.0 + params.k / 3.0};
}

double interiority_limit(const MarketParams& params) {
  if (!(params.b > 0.0)) throw ValidationError("b > 0");
  return 4.0 / params.b;
}

Interiority interiority(const MarketParams& params, double i_l) {
  const double limit = interiority_limit(params);
  if (!(i_l > 0.0)) return Interiority::Violated;
  if (std::abs(i_l - limit) <= kBoundaryTol * limit) return Interiority::Boundary;
  return i_l < limit ? Interiority::Interior : Interiority::Violated;
}

double psi(const MarketParams& params, double i_l, double i_f) {
  if (!(i_l > 0.0)) throw DomainError("psi: i_l > 0");
  const double b = params.b;
  return 0.8 - b * i_l / 5.0 + (2.0 * b / 5.0 - 3.0 / (5.0 * i_l)) * i_f;
}

Prices stage3_prices(const MarketParams& params, const Investments& inv) {
  if (interiority(params, inv.i_l()) == Interiority::Violated) {
    std::ostringstream os;
    os << "stage3_prices: interiority violated, i_l = " << inv.i_l()
       << " > 4/b = " << interiority_limit(params);
    throw DomainError(os.str());
  }
  const PreferenceWeights t = preference_weights(inv);
  const double b = params.b;
  const double base = 1.0 / 15.0 + 2.0 * params.c / 3.0 + params.k / 3.0;
  Prices p;
  p.p_l = base + t.t_f / 5.0 - b / 5.0 * inv.i_f() + 4.0 * b / 15.0 * inv.i_l();
  p.p_f = base + t.t_l / 5.0 + b / 15.0 * inv.i_l() + b / 5.0 * inv.i_f();
  return p;
}

double follower_stage2_payoff(const MarketParams& params, double i_l, double i_f) {
  const auto [f, g] = fg(params, i_l);
  return (2.0 * f * f - params.s) * i_f * i_f + 4.0 * f * g * i_f + 2.0 * g * g;
}

namespace {

// Payoff (alpha - beta p)(p - c) on [lo, hi]: clamped vertex.
double piece_vertex(double alpha, double beta, double c, double lo, double hi) {
  return std::clamp(0.5 * (alpha / beta + c), lo, hi);
}

}  // namespace

PriceDeviation best_price_deviation(const MarketParams& params, const Investments& inv,
                                    const Prices& prices) {
  using hotelling::Provider;
  const PreferenceWeights t = preference_weights(inv);
  const double c = params.c;
  const double inf = std::numeric_limits<double>::infinity();
  const Payoffs base = stage_payoffs(params, inv, prices);

  PriceDeviation best{Provider::Leader, prices.p_l, -inf};
  const auto consider = [&](Provider who, double p) {
    Prices moved = prices;
    (who == Provider::Leader ? moved.p_l : moved.p_f) = p;
    const Payoffs after = stage_payoffs(params, inv, moved);
    const double gain =
        who == Provider::Leader ? after.pi_l - base.pi_l : after.pi_f - base.pi_f;
    if (gain > best.gain) best = {who, p, gain};
  };

  // leader: x = t_f + p_f - p_l, phi_L = K_l - p_l
  const double k_l = params.k + params.b * (inv.i_l() - inv.i_f());
  const double l_full = t.t_f + prices.p_f - 1.0;  // x = 1 below this price
  const double l_none = t.t_f + prices.p_f;        // x = 0 above this price
  consider(Provider::Leader, piece_vertex(1.0 + k_l, 1.0, c, -inf, l_full));
  consider(Provider::Leader, piece_vertex(t.t_f + prices.p_f + k_l, 2.0, c, l_full, l_none));
  consider(Provider::Leader, piece_vertex(k_l, 1.0, c, l_none, inf));

  // follower: 1 - x = t_l + p_l - p_f, phi_F = K_f - p_f
  const double k_f = params.k + params.b * inv.i_f();
  const double f_full = prices.p_l - t.t_f;
  const double f_none = prices.p_l + t.t_l;
  consider(Provider::Follower, piece_vertex(1.0 + k_f, 1.0, c, -inf, f_full));
  consider(Provider::Follower, piece_vertex(t.t_l + prices.p_l + k_f, 2.0, c, f_full, f_none));
  consider(Provider::Follower, piece_vertex(k_f, 1.0, c, f_none, inf));
  return best;
}

Stage2Region stage2_if(const MarketParams& params, double i_l) {
  require_open_interval(params, i_l, "stage2_if");
  const auto [f, g] = fg(params, i_l);
  const double s = params.s;
  const double curvature = 2.0 * f * f;  // the quadratic's leading term is curvature - s

  Stage2Region region;
  if (g >= 0.0) {
    if (s > curvature + 2.0 * f * g / i_l) {
      region = {Stage2Label::Interior, 2.0 * f * g / (s - curvature)};
    } else {
      // Concave with the vertex beyond i_l, linear increasing, or convex with
      // the right end the better boundary.
      region = {Stage2Label::FullLease, i_l};
    }
  } else if (curvature > s && s <= curvature + 4.0 * f * g / i_l) {
    region = {Stage2Label::FullLease, i_l};
  } else {
    // Only i_f = 0 remains, which forces a markup below cost.
    return {Stage2Label::NoCooperation, 0.0};
  }
  // An interior vertex that reaches i_l is the full-lease edge.
  if (region.label == Stage2Label::Interior && region.i_f >= i_l * (1.0 - 1e-9)) {
    region = {Stage2Label::FullLease, i_l};
  }
  if (follower_stage2_payoff(params, i_l, region.i_f) < 0.0) {
    return {Stage2Label::NoCooperation, 0.0};
  }
  return region;
}

std::optional<double> stage1_objective(const MarketParams& params, double i_l) {
  require_open_interval(params, i_l, "stage1_objective");
  const Stage2Region region = stage2_if(params, i_l);
  if (region.label == Stage2Label::NoCooperation) return std::nullopt;
  const auto [f, g] = fg(params, i_l);
  const double markup = params.b * i_l / 5.0 + 0.2 + g - f * region.i_f;  // p_l - c
  const double value = 2.0 * markup * markup + params.s * region.i_f * region.i_f -
                       params.gamma * i_l * i_l;
  if (value < 0.0) return std::nullopt;
  return value;
}

EquilibriumPath path_at(const MarketParams& params, const Investments& inv) {
  const Prices prices = stage3_prices(params, inv);
  const MarketSplit split = outside_option_split(params, inv, prices);
  return {inv, prices, split, payoffs(params, inv, prices, split)};
}

SpneSolution solve_spne(const MarketParams& params, const OptConfig& config) {
  require_outside_option(params);
  SpneSolution sol;
  sol.model_case = ModelCase::OutsideOption;
  sol.notes = validate(params);

  const double limit = interiority_limit(params);
  const double delta = 1e-6 * limit;
  const OptResult opt = maximize_scalar(
      [&](double i_l) { return stage1_objective(params, i_l); }, delta, limit - delta, config);

  if (!opt.ok()) {
    sol.outcome = Outcome::NoCooperation;
    sol.stage2 = Stage2Label::NoCooperation;
    sol.notes.push_back("no leader investment in (0, 4/b) admits a cooperative stage 2");
    return sol;
  }

  const double i_l = opt.argmax;
  const Stage2Region region = stage2_if(params, i_l);
  sol.stage2 = region.label;
  sol.outcome = region.label == Stage2Label::Interior ? Outcome::A : Outcome::B;
  sol.path = path_at(params, Investments(i_l, region.i_f));

  if (i_l >= limit - 2.0 * delta) {
    sol.notes.push_back("leader investment at the interiority limit 4/b; the boundary "
                        "itself is excluded from the search");
  }
  const MarketSplit& split = sol.path->split;
  if (split.n_l_total < 0.0 || split.n_l_total > 1.0 || split.n_f_total < 0.0 ||
      split.n_f_total > 1.0) {
    sol.notes.push_back("demand totals outside [0, 1]");
  }
  const PriceDeviation dev = best_price_deviation(params, sol.path->inv, sol.path->prices);
  if (dev.gain > 1e-9 * std::max(1.0, std::abs(sol.path->payoffs.pi_l) +
                                          std::abs(sol.path->payoffs.pi_f))) {
    std::ostringstream os;
    os << "stage-3 prices are a local equilibrium only: "
       << (dev.who == hotelling::Provider::Leader ? "leader" : "follower") << " gains "
       << dev.gain << " at price " << dev.price;
    sol.notes.push_back(os.str());
  }
  return sol;
}

}  // namespace duopoly::outside_option
