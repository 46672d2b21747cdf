#pragma once

// Deterministic scalar maximization on a closed interval.
//
// A uniform grid locates every local-maximum cluster, each cluster is refined
// by golden-section search, and among the candidates whose values tie within
// tie_tol the largest abscissa wins. The objective may return std::nullopt to
// mark a point infeasible; such points are never candidates.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace duopoly {

struct OptConfig {
  int grid_points = 4096;
  double refine_tol = 1e-9;  ///< abscissa tolerance, relative to max(1, |x|)
  double tie_tol = 1e-10;    ///< relative objective tolerance for ties

  /// Throws ValidationError unless grid_points >= 16 and tolerances > 0.
  void validate() const;
};

enum class OptStatus { Ok, NoFeasiblePoint };

struct OptResult {
  OptStatus status = OptStatus::NoFeasiblePoint;
  double argmax = 0.0;
  double max_value = 0.0;
  /// Every refined candidate tied with the maximum, ascending.
  std::vector<double> tied_argmaxes;
  std::size_t evaluations = 0;

  bool ok() const noexcept { return status == OptStatus::Ok; }
};

using Objective = std::function<std::optional<double>(double)>;

/// True when a and b differ by at most tie_tol * max(1, |a|, |b|).
bool values_tied(double a, double b, double tie_tol) noexcept;

/// Maximizes objective on [lo, hi]. Requires lo < hi.
OptResult maximize_scalar(const Objective& objective, double lo, double hi,
                          const OptConfig& config = {});

}  // namespace duopoly
