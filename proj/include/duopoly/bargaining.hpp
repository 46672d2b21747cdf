#pragma once

// Nash bargaining over (I_L, I_F, s) with disagreement payoffs from the
// sequential game. The weighted Nash product reduces to maximizing the
// aggregate excess profit u_excess over investments, after which the lease
// fee s* splits the surplus in proportion w : (1 - w).

#include <optional>
#include <string>
#include <vector>

#include "duopoly/model.hpp"
#include "duopoly/numopt.hpp"

namespace duopoly::bargaining {

/// Payoffs if bargaining fails.
struct DisagreementPoint {
  double d_l = 0.0;
  double d_f = 0.0;
};

/// SPNE payoffs of the sequential game with the same parameters. Throws
/// NoEquilibriumError if the game has no equilibrium path.
DisagreementPoint disagreement_from_spne(const MarketParams& params);

/// Hotelling market: ((2-t)/3)^2 + ((1+t)/3)^2 - gamma i_l^2 - d_l - d_f,
/// t = i_f / i_l. Independent of s.
double u_excess_hotelling(const MarketParams& params, const Investments& inv,
                          const DisagreementPoint& d);

/// Outside-option market:
/// 4f^2 i_f^2 - 4f^2 i_l i_f + 2g^2 + 2(f i_l + g)^2 - gamma i_l^2 - d_f - d_l.
/// Requires 0 < i_l <= 4/b.
double u_excess_outside_option(const MarketParams& params, const Investments& inv,
                               const DisagreementPoint& d);

/// Dispatches on params.model_case.
double u_excess(const MarketParams& params, const Investments& inv,
                const DisagreementPoint& d);

/// Lump-sum payment T from follower to leader that gives the follower
/// d_f + w u_excess: T = n_f (p_f - c) - d_f - w u_excess.
double lump_transfer(const MarketParams& params, const Investments& inv,
                     const DisagreementPoint& d, double u_excess_value);

/// Per-resource fee s* = T / i_f^2. Throws DegenerateTransferError if i_f = 0.
double s_star(const MarketParams& params, const Investments& inv, const DisagreementPoint& d,
              double u_excess_value);

/// One boundary candidate of the lease decision.
struct NbsBranch {
  Investments inv;
  double u_excess = 0.0;
};

struct NbsSolution {
  ModelCase model_case = ModelCase::Hotelling;
  Investments inv{1.0, 1.0};
  /// Absent when bargaining fails or when i_f = 0.
  std::optional<double> s_star;
  /// Payment follower -> leader (s* i_f^2 when s* exists). Absent when
  /// bargaining fails.
  std::optional<double> transfer;
  Prices prices;
  MarketSplit split;
  Payoffs payoffs;  ///< equals (d_l, d_f) when infeasible
  double u_excess = 0.0;
  DisagreementPoint d;
  bool d_overridden = false;
  bool feasible = false;  ///< u_excess > 0
  /// Both lease boundaries, i_f = 0 first. They tie in value; the full lease
  /// is the canonical choice.
  std::vector<NbsBranch> branches;
  std::vector<std::string> notes;
};

/// Solves the bargaining problem for params.model_case. Disagreement payoffs
/// come from the matching SPNE solver unless d_override is given.
/// The hotelling market requires i_min_l > 0.
NbsSolution solve_nbs(const MarketParams& params,
                      const std::optional<DisagreementPoint>& d_override = std::nullopt,
                      const OptConfig& config = {});

/// Weighted Nash product (pi_f - d_f)^w (pi_l - d_l)^(1-w), or std::nullopt
/// if either factor is negative.
std::optional<double> nash_product(const Payoffs& payoffs, const DisagreementPoint& d,
                                   double w);

}  // namespace duopoly::bargaining
