#pragma once

// Backward induction for the hotelling-only market (no outside option).
//
//   Stage 3: closed-form interior price equilibrium.
//   Stage 2: closed-form lease decision of the follower.
//   Stage 1: numerical maximization of the leader's payoff over
//            [sqrt(2/(9s)), I_cap], largest maximizer on ties.

#include "duopoly/model.hpp"
#include "duopoly/numopt.hpp"
#include "duopoly/solution.hpp"

namespace duopoly::hotelling {

/// p_f = c + (i_l + i_f) / (3 i_l),  p_l = c + (2 i_l - i_f) / (3 i_l).
Prices stage3_prices(const Investments& inv, double c);

/// sqrt(2 / (9 s)): below it the follower leases everything.
double full_lease_threshold(double s);

/// Follower's optimal lease given the leader's investment.
double stage2_if(const MarketParams& params, double i_l);

/// Leader's payoff with the Stage-2 and Stage-3 responses substituted.
/// Throws DomainError when i_l < full_lease_threshold(s).
double stage1_objective(const MarketParams& params, double i_l);

/// Upper end of the Stage-1 search bracket.
double stage1_search_cap(const MarketParams& params);

/// Full equilibrium. Throws ValidationError if params are invalid for this
/// market (in particular s < gamma).
SpneSolution solve_spne(const MarketParams& params, const OptConfig& config = {});

/// Equilibrium path for fixed investments (Stages 3 and 4).
EquilibriumPath path_at(const MarketParams& params, const Investments& inv);

// ---------------------------------------------------------------------------
// Corner profiles: no price pair that leaves one provider without end users
// is an equilibrium. Given such a profile, build the profitable unilateral
// deviation that breaks it.

enum class Provider { Leader, Follower };

struct CornerDeviation {
  Provider who = Provider::Leader;
  double old_price = 0.0;
  double new_price = 0.0;
  double gain = 0.0;  ///< payoff after minus payoff before, > 0
};

/// Deviation step for corner witnesses: 1e-6 * max(1, c).
double corner_epsilon(double c);

/// Throws ValidationError unless prices put the indifferent end user at or
/// beyond an end of the segment (n_l = 0 or n_f = 0).
CornerDeviation corner_deviation_witness(const MarketParams& params, const Investments& inv,
                                         const Prices& corner_prices);

}  // namespace duopoly::hotelling
