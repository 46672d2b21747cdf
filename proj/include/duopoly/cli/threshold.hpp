#pragma once

// Locates outcome-label flips along an s-sweep of the hotelling market.

#include <string>
#include <vector>

#include "duopoly/model.hpp"

namespace duopoly::cli {

struct Transition {
  double s_dagger = 0.0;  ///< midpoint of the final bracket
  double s_below = 0.0;
  double s_above = 0.0;
  std::string label_below;
  std::string label_above;
  double i_l_below = 0.0, i_l_above = 0.0;
  double i_f_below = 0.0, i_f_above = 0.0;
  double jump_i_l() const { return i_l_above - i_l_below; }
  double jump_i_f() const { return i_f_above - i_f_below; }
};

struct ThresholdReport {
  std::vector<double> scanned_s;
  std::vector<std::string> scanned_labels;
  std::vector<double> scanned_i_l;
  std::vector<Transition> transitions;  ///< empty: no threshold found
};

/// Scans s over [lo, hi] (count points, linear or log) and bisects every
/// label change down to a bracket of width tol.
ThresholdReport find_thresholds(const MarketParams& params, double lo, double hi, int count,
                                bool log_scale, double tol = 1e-6);

}  // namespace duopoly::cli
