#pragma once

// Market model shared by every solver: one infrastructure owner (the leader,
// MNO) and one virtual operator leasing from it (the follower, MVNO), with
// end users spread on a hotelling segment and, optionally, an exogenous
// demand term acting as an outside option.

#include <string>
#include <utility>
#include <vector>

namespace duopoly {

/// Which end-user model is active. Selected explicitly: k = b = 0 with the
/// outside option is not the same game as the pure hotelling market.
enum class ModelCase {
  Hotelling = 1,      // end users must pick one of the two providers
  OutsideOption = 2,  // hotelling demand plus phi_L, phi_F demand terms
};

std::string to_string(ModelCase model_case);

/// Exogenous constants of the market.
struct MarketParams {
  ModelCase model_case = ModelCase::Hotelling;
  double c = 0.0;        ///< marginal service cost per end user
  double s = 1.0;        ///< fee per squared leased resource unit
  double gamma = 0.1;    ///< marginal investment cost
  double k = 0.0;        ///< demand intercept (outside option only)
  double b = 0.0;        ///< demand sensitivity to investment (outside option only)
  double w = 0.5;        ///< follower's relative bargaining power
  double i_min_l = 0.0;  ///< regulator's investment floor (bargaining)
  /// Apply i_min_l to outside-option bargaining too. Off by default; the
  /// floor is only defined for the hotelling-only market.
  bool outside_option_floor = false;
};

/// Checks the invariants common to all solvers and the case-specific ones.
/// Throws ValidationError naming the first violated invariant. Returns
/// warnings for conditions that are legal but unusual (s < gamma with the
/// outside option).
std::vector<std::string> validate(const MarketParams& params);

/// Leader investment and follower lease, 0 <= i_f <= i_l, i_l > 0.
class Investments {
 public:
  Investments(double i_l, double i_f);

  double i_l() const noexcept { return i_l_; }
  double i_f() const noexcept { return i_f_; }
  /// i_f / i_l.
  double lease_ratio() const noexcept { return i_f_ / i_l_; }

  friend bool operator==(const Investments&, const Investments&) = default;

 private:
  double i_l_;
  double i_f_;
};

/// Access fees charged to end users.
struct Prices {
  double p_l = 0.0;
  double p_f = 0.0;
  friend bool operator==(const Prices&, const Prices&) = default;
};

/// Hotelling transport weights; t_l + t_f = 1.
struct PreferenceWeights {
  double t_l = 0.0;
  double t_f = 0.0;
};

/// End-user split. n_l, n_f come from the hotelling segment, phi_* from the
/// outside-option demand (zero in the hotelling-only market).
struct MarketSplit {
  double n_l = 0.0;
  double n_f = 0.0;
  double phi_l = 0.0;
  double phi_f = 0.0;
  double n_l_total = 0.0;
  double n_f_total = 0.0;
  friend bool operator==(const MarketSplit&, const MarketSplit&) = default;
};

struct Payoffs {
  double pi_l = 0.0;
  double pi_f = 0.0;
  friend bool operator==(const Payoffs&, const Payoffs&) = default;
};

/// Utility v* - t*x - p of an end user at preference distance x. The common
/// valuation v* cancels out of every equilibrium quantity under full market
/// coverage; this is kept for documentation and tests only.
double eu_utility(double v_star, double t, double distance, double price);

PreferenceWeights preference_weights(const Investments& inv);

/// Position of the indifferent end user, unclamped.
double indifferent_eu(const Investments& inv, const Prices& prices);

/// Hotelling split with the indifferent position clamped to [0, 1].
MarketSplit hotelling_split(const Investments& inv, const Prices& prices);

/// Outside-option demand terms (phi_l, phi_f). Either may be negative.
std::pair<double, double> demand_phi(const MarketParams& params, const Investments& inv,
                                     const Prices& prices);

/// Hotelling split plus the demand terms. Totals are not clamped.
MarketSplit outside_option_split(const MarketParams& params, const Investments& inv,
                                 const Prices& prices);

/// Split for whichever case params selects.
MarketSplit market_split(const MarketParams& params, const Investments& inv,
                         const Prices& prices);

/// Provider payoffs:
///   pi_f = n_f_total (p_f - c) - s i_f^2
///   pi_l = n_l_total (p_l - c) + s i_f^2 - gamma i_l^2
Payoffs payoffs(const MarketParams& params, const Investments& inv, const Prices& prices,
                const MarketSplit& split);

/// market_split followed by payoffs.
Payoffs stage_payoffs(const MarketParams& params, const Investments& inv,
                      const Prices& prices);

}  // namespace duopoly
