#include "duopoly/bargaining.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "duopoly/errors.hpp"
#include "duopoly/hotelling_spne.hpp"
#include "duopoly/outside_option_spne.hpp"

namespace duopoly::bargaining {

namespace {

EquilibriumPath path_for(const MarketParams& params, const Investments& inv) {
  return params.model_case == ModelCase::OutsideOption
             ? outside_option::path_at(params, inv)
             : hotelling::path_at(params, inv);
}

double follower_revenue(const MarketParams& params, const EquilibriumPath& path) {
  return path.split.n_f_total * (path.prices.p_f - params.c);
}

double leader_revenue(const MarketParams& params, const EquilibriumPath& path) {
  return path.split.n_l_total * (path.prices.p_l - params.c);
}

// Settles the bargain at inv: prices, split, transfer and payoffs.
void settle(const MarketParams& params, NbsSolution& sol) {
  const EquilibriumPath path = path_for(params, sol.inv);
  sol.prices = path.prices;
  sol.split = path.split;
  sol.feasible = sol.u_excess > 0.0;
  if (!sol.feasible) {
    sol.payoffs = {sol.d.d_l, sol.d.d_f};
    return;
  }
  const double transfer = lump_transfer(params, sol.inv, sol.d, sol.u_excess);
  sol.transfer = transfer;
  if (sol.inv.i_f() > 0.0) {
    MarketParams at_fee = params;
    at_fee.s = transfer / (sol.inv.i_f() * sol.inv.i_f());
    sol.s_star = at_fee.s;
    sol.payoffs = payoffs(at_fee, sol.inv, path.prices, path.split);
  } else {
    sol.payoffs.pi_f = follower_revenue(params, path) - transfer;
    sol.payoffs.pi_l = leader_revenue(params, path) + transfer -
                       params.gamma * sol.inv.i_l() * sol.inv.i_l();
  }
}

NbsSolution solve_hotelling(const MarketParams& params, const DisagreementPoint& d) {
  if (!(params.i_min_l > 0.0)) {
    throw ValidationError("i_min_l > 0 is required for hotelling bargaining");
  }
  NbsSolution sol;
  sol.model_case = ModelCase::Hotelling;
  sol.d = d;
  // The excess profit falls with i_l at any fixed ratio i_f / i_l and is
  // convex in the ratio, so the optimum is i_l = i_min_l with a boundary lease.
  const double i_l = params.i_min_l;
  for (double i_f : {0.0, i_l}) {
    const Investments inv(i_l, i_f);
    sol.branches.push_back({inv, u_excess_hotelling(params, inv, d)});
  }
  sol.inv = sol.branches.back().inv;
  sol.u_excess = sol.branches.back().u_excess;
  settle(params, sol);
  return sol;
}

NbsSolution solve_outside_option(const MarketParams& params, const DisagreementPoint& d,
                                 const OptConfig& config) {
  const double limit = outside_option::interiority_limit(params);
  double lo = 1e-6 * limit;
  if (params.outside_option_floor) {
    if (!(params.i_min_l > 0.0)) throw ValidationError("outside_option_floor needs i_min_l > 0");
    if (params.i_min_l > limit) throw ValidationError("i_min_l <= 4/b");
    lo = std::max(lo, params.i_min_l);
  }

  NbsSolution sol;
  sol.model_case = ModelCase::OutsideOption;
  sol.d = d;
  for (bool full_lease : {false, true}) {
    auto objective = [&](double i_l) -> std::optional<double> {
      return u_excess_outside_option(params, Investments(i_l, full_lease ? i_l : 0.0), d);
    };
    double i_l = limit;
    if (lo < limit) {
      const OptResult opt = maximize_scalar(objective, lo, limit, config);
      i_l = opt.argmax;
    }
    const Investments inv(i_l, full_lease ? i_l : 0.0);
    sol.branches.push_back({inv, u_excess_outside_option(params, inv, d)});
  }

  const NbsBranch& none = sol.branches[0];
  const NbsBranch& full = sol.branches[1];
  const bool pick_none =
      none.u_excess > full.u_excess && !values_tied(none.u_excess, full.u_excess, config.tie_tol);
  const NbsBranch& chosen = pick_none ? none : full;
  sol.inv = chosen.inv;
  sol.u_excess = chosen.u_excess;
  settle(params, sol);
  const outside_option::PriceDeviation dev =
      outside_option::best_price_deviation(params, sol.inv, sol.prices);
  if (dev.gain > 1e-9 * std::max(1.0, std::abs(sol.payoffs.pi_l) + std::abs(sol.payoffs.pi_f))) {
    std::ostringstream os;
    os << "stage-3 prices are a local equilibrium only: "
       << (dev.who == hotelling::Provider::Leader ? "leader" : "follower") << " gains "
       << dev.gain << " at price " << dev.price;
    sol.notes.push_back(os.str());
  }
  return sol;
}

}  // namespace

DisagreementPoint disagreement_from_spne(const MarketParams& params) {
  const SpneSolution spne = params.model_case == ModelCase::OutsideOption
                                ? outside_option::solve_spne(params)
                                : hotelling::solve_spne(params);
  if (!spne.path) {
    throw NoEquilibriumError("the sequential game has no equilibrium path; supply the "
                             "disagreement point explicitly");
  }
  return {spne.path->payoffs.pi_l, spne.path->payoffs.pi_f};
}

double u_excess_hotelling(const MarketParams& params, const Investments& inv,
                          const DisagreementPoint& d) {
  const double t = inv.lease_ratio();
  const double leader_share = (2.0 - t) / 3.0;
  const double follower_share = (1.0 + t) / 3.0;
  return leader_share * leader_share + follower_share * follower_share -
         params.gamma * inv.i_l() * inv.i_l() - d.d_l - d.d_f;
}

double u_excess_outside_option(const MarketParams& params, const Investments& inv,
                               const DisagreementPoint& d) {
  const double i_l = inv.i_l();
  const double i_f = inv.i_f();
  if (outside_option::interiority(params, i_l) == outside_option::Interiority::Violated) {
    throw DomainError("u_excess_outside_option: requires 0 < i_l <= 4/b");
  }
  const auto [f, g] = outside_option::fg(params, i_l);
  // 4f^2 i_f^2 - 4f^2 i_l i_f, factored so both lease boundaries give exactly 0.
  const double lease_term = 4.0 * f * f * i_f * (i_f - i_l);
  const double h = f * i_l + g;
  return lease_term + 2.0 * g * g + 2.0 * h * h - params.gamma * i_l * i_l - d.d_f - d.d_l;
}

double u_excess(const MarketParams& params, const Investments& inv,
                const DisagreementPoint& d) {
  return params.model_case == ModelCase::OutsideOption
             ? u_excess_outside_option(params, inv, d)
             : u_excess_hotelling(params, inv, d);
}

double lump_transfer(const MarketParams& params, const Investments& inv,
                     const DisagreementPoint& d, double u_excess_value) {
  const EquilibriumPath path = path_for(params, inv);
  return follower_revenue(params, path) - d.d_f - params.w * u_excess_value;
}

double s_star(const MarketParams& params, const Investments& inv, const DisagreementPoint& d,
              double u_excess_value) {
  if (!(inv.i_f() > 0.0)) {
    throw DegenerateTransferError("s_star: i_f = 0, the surplus split is a lump transfer");
  }
  return lump_transfer(params, inv, d, u_excess_value) / (inv.i_f() * inv.i_f());
}

NbsSolution solve_nbs(const MarketParams& params,
                      const std::optional<DisagreementPoint>& d_override,
                      const OptConfig& config) {
  validate(params);
  const DisagreementPoint d = d_override ? *d_override : disagreement_from_spne(params);
  NbsSolution sol = params.model_case == ModelCase::OutsideOption
                        ? solve_outside_option(params, d, config)
                        : solve_hotelling(params, d);
  sol.d_overridden = d_override.has_value();
  return sol;
}

std::optional<double> nash_product(const Payoffs& payoffs, const DisagreementPoint& d,
                                   double w) {
  // Rounding can leave a zero surplus share a few ulps negative.
  const auto clamp_gain = [](double pi, double dv) -> std::optional<double> {
    const double gain = pi - dv;
    if (gain >= 0.0) return gain;
    if (gain >= -1e-12 * std::max({1.0, std::abs(pi), std::abs(dv)})) return 0.0;
    return std::nullopt;
  };
  const auto gain_f = clamp_gain(payoffs.pi_f, d.d_f);
  const auto gain_l = clamp_gain(payoffs.pi_l, d.d_l);
  if (!gain_f || !gain_l) return std::nullopt;
  return std::pow(*gain_f, w) * std::pow(*gain_l, 1.0 - w);
}

}  // namespace duopoly::bargaining
