#pragma once

// Parameter sweeps and their CSV / sidecar output.

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "duopoly/bargaining.hpp"
#include "duopoly/model.hpp"

namespace duopoly::cli {

inline constexpr std::string_view kSchemaLine = "# duopoly-spectrum-games schema v1";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Solver { Spne, Nbs };

std::string to_string(Solver solver);

/// Names accepted for the swept parameter: s, gamma (g), c, k, b, w, imin (i_min_l).
bool is_sweepable(std::string_view name);

/// Writes value into the MarketParams field called name.
void set_param(MarketParams& params, std::string_view name, double value);

struct SweepSpec {
  std::string param = "s";
  double lo = 0.0;
  double hi = 1.0;
  int count = 2;
  bool log_scale = false;
  MarketParams base;
  Solver solver = Solver::Spne;
  std::optional<bargaining::DisagreementPoint> d_override;

  /// Throws ValidationError: count >= 2, finite lo != hi, lo > 0 for log
  /// spacing, sweepable param, and valid MarketParams at every point.
  void validate() const;
  /// Sweep points in order; endpoints are exact.
  std::vector<double> values() const;
};

/// One sweep point. Undefined entries (no equilibrium, or NBS-only columns
/// in SPNE runs) are empty optionals.
struct SweepRow {
  double swept_value = 0.0;
  std::optional<double> i_l, i_f, p_l, p_f, n_l, n_f, pi_l, pi_f;
  std::string outcome_label;
  std::optional<double> s_star, u_excess;
};

/// Outcome labels: SPNE rows use A, B or NoCooperation; NBS rows use
/// full-lease, no-lease, infeasible or no-disagreement-point.
SweepRow solve_point(const MarketParams& params, Solver solver, double swept_value,
                     const std::optional<bargaining::DisagreementPoint>& d_override = std::nullopt);

/// Evaluates every point concurrently; rows come back in sweep order.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 0);

/// Shortest round-trip decimal form, independent of the locale.
std::string format_number(double value);

/// Column names, comma separated.
std::string csv_header();

/// Schema line, header and rows.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// True when a demand total lies outside [0, 1].
bool demand_outside_unit_interval(const SweepRow& row);

/// key=value metadata: tool version, schema, sweep and full MarketParams.
void write_meta(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

}  // namespace duopoly::cli
