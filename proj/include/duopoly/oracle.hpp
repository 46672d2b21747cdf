#pragma once

// Brute-force verifiers for the closed forms. Nothing here calls the solver
// modules: prices come from best-response iteration on the model payoffs,
// investments from exhaustive scans. Used by the test suites only.

#include <functional>
#include <optional>

#include "duopoly/bargaining.hpp"
#include "duopoly/hotelling_spne.hpp"
#include "duopoly/model.hpp"

namespace duopoly::oracle {

using hotelling::Provider;

/// Uniform grid lo, lo + step, ..., hi (hi always included).
struct PriceGrid {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1e-4;
};

/// [c - 1, c + 3] with step 1e-4.
PriceGrid default_price_grid(double c);

struct BestResponseReport {
  bool converged = false;
  Prices prices;
  int iterations = 0;
};

/// Alternating exact best responses restricted to the grid, until neither
/// price moves (at most max_iterations rounds). Non-convergence is reported.
BestResponseReport best_response_prices(const MarketParams& params, const Investments& inv,
                                        const PriceGrid& grid, int max_iterations = 200);

/// Same iteration with continuous best responses (coarse scan, ternary
/// refinement, parabolic polish) on [lo, hi]; converged when both prices move
/// less than tol.
BestResponseReport best_response_prices_continuous(const MarketParams& params,
                                                   const Investments& inv, double lo, double hi,
                                                   double tol = 1e-10, int max_iterations = 500);

/// A price window wide enough to contain the equilibrium for params and inv.
std::pair<double, double> price_search_window(const MarketParams& params,
                                              const Investments& inv);

struct GridMax {
  double argmax = 0.0;
  double value = 0.0;
};

/// Exhaustive scan; ties go to the largest abscissa.
GridMax argmax_grid(const std::function<double(double)>& objective, double lo, double hi,
                    double step);

/// Best payoff gain available to `who` by a unilateral price move on the
/// grid, holding the other price fixed. <= 0 at a Nash equilibrium.
double max_deviation_gain(const MarketParams& params, const Investments& inv,
                          const Prices& prices, Provider who, const PriceGrid& grid);

struct DeviationFound {
  Provider who = Provider::Leader;
  double price = 0.0;
  double gain = 0.0;
};

/// Scans both providers' unilateral moves from a profile; returns the most
/// profitable one.
DeviationFound corner_deviation_search(const MarketParams& params, const Investments& inv,
                                       const Prices& prices, const PriceGrid& grid);

struct Axis {
  double lo = 0.0;
  double hi = 0.0;
  int points = 2;  ///< >= 1; a single point uses lo
  double at(int i) const;
};

struct NbsGrids {
  Axis i_l;
  Axis lease_ratio{0.0, 1.0, 11};  ///< i_f = ratio * i_l
  Axis s;
};

struct NbsGridResult {
  bool feasible = false;  ///< some grid point satisfies pi >= d
  double i_l = 0.0;
  double i_f = 0.0;
  double s = 0.0;
  double product = 0.0;
  Payoffs payoffs;
};

/// Direct scan of the weighted Nash product over (i_l, i_f, s) subject to
/// 0 <= i_f <= i_l and pi >= d, with prices from continuous best responses.
/// Points where best responses do not converge are skipped.
NbsGridResult nbs_product_grid(const MarketParams& params,
                               const bargaining::DisagreementPoint& d, const NbsGrids& grids);

}  // namespace duopoly::oracle
