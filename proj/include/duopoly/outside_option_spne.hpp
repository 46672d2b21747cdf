#pragma once

// Backward induction when end users have an outside option: hotelling demand
// plus phi_L = k - p_L + b (I_L - I_F) and phi_F = k - p_F + b I_F.
//
// Interior Stage-3 prices exist iff 0 < I_L < 4/b. The follower's Stage-2
// choice is one of three regimes (interior lease, full lease, no lease) and
// the leader's Stage-1 investment is found numerically on (0, 4/b).

#include <optional>

#include "duopoly/hotelling_spne.hpp"
#include "duopoly/model.hpp"
#include "duopoly/numopt.hpp"
#include "duopoly/solution.hpp"

namespace duopoly::outside_option {

/// f = 1/(5 i_l) + b/5 and g = b i_l/15 + 1/15 - c/3 + k/3 at a given i_l.
struct FgPair {
  double f = 0.0;
  double g = 0.0;
};

FgPair fg(const MarketParams& params, double i_l);

/// Where i_l sits relative to the interiority limit 4/b.
enum class Interiority { Interior, Boundary, Violated };

Interiority interiority(const MarketParams& params, double i_l);

/// 4 / b.
double interiority_limit(const MarketParams& params);

/// Indifferent end user at the Stage-3 prices, affine in i_f:
/// 4/5 - (b/5) i_l + (2b/5 - 3/(5 i_l)) i_f.
double psi(const MarketParams& params, double i_l, double i_f);

/// Interior Stage-3 prices. Throws DomainError when i_l > 4/b; at exactly
/// 4/b the prices are returned but may not be an interior equilibrium (check
/// interiority()).
Prices stage3_prices(const MarketParams& params, const Investments& inv);

/// Most profitable unilateral price deviation. Each provider's payoff is a
/// concave quadratic on each of the three pieces cut by the hotelling clamp,
/// so the global best response is exact. gain <= 0: prices are a global
/// Stage-3 equilibrium.
struct PriceDeviation {
  hotelling::Provider who = hotelling::Provider::Leader;
  double price = 0.0;
  double gain = 0.0;
};

PriceDeviation best_price_deviation(const MarketParams& params, const Investments& inv,
                                    const Prices& prices);

struct Stage2Region {
  Stage2Label label = Stage2Label::NoCooperation;
  double i_f = 0.0;  ///< 0 when label is NoCooperation
};

/// Follower's payoff at Stage-3 prices, as a quadratic in i_f:
/// (2f^2 - s) i_f^2 + 4 f g i_f + 2 g^2.
double follower_stage2_payoff(const MarketParams& params, double i_l, double i_f);

/// Follower's optimal lease. Requires 0 < i_l < 4/b.
Stage2Region stage2_if(const MarketParams& params, double i_l);

/// Leader's payoff with Stage 2 and 3 substituted, or std::nullopt when
/// Stage 2 yields no cooperation or the leader's payoff would be negative.
/// Throws DomainError outside (0, 4/b).
std::optional<double> stage1_objective(const MarketParams& params, double i_l);

/// Equilibrium path for fixed investments.
EquilibriumPath path_at(const MarketParams& params, const Investments& inv);

SpneSolution solve_spne(const MarketParams& params, const OptConfig& config = {});

}  // namespace duopoly::outside_option
