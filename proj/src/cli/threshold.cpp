#include "duopoly/cli/threshold.hpp"

#include "duopoly/cli/sweep.hpp"
#include "duopoly/errors.hpp"
#include "duopoly/hotelling_spne.hpp"

namespace duopoly::cli {

namespace {

struct Probe {
  std::string label;
  double i_l = 0.0;
  double i_f = 0.0;
};

Probe probe(MarketParams params, double s) {
  params.s = s;
  const SpneSolution sol = hotelling::solve_spne(params);
  return {to_string(sol.outcome), sol.path->inv.i_l(), sol.path->inv.i_f()};
}

}  // namespace

ThresholdReport find_thresholds(const MarketParams& params, double lo, double hi, int count,
                                bool log_scale, double tol) {
  if (params.model_case != ModelCase::Hotelling) {
    throw ValidationError("threshold detection requires --case 1");
  }
  if (!(tol > 0.0)) throw ValidationError("tol > 0");
  SweepSpec spec;
  spec.param = "s";
  spec.lo = lo;
  spec.hi = hi;
  spec.count = count;
  spec.log_scale = log_scale;
  spec.base = params;
  const std::vector<SweepRow> rows = run_sweep(spec);

  ThresholdReport report;
  for (const SweepRow& r : rows) {
    report.scanned_s.push_back(r.swept_value);
    report.scanned_labels.push_back(r.outcome_label);
    report.scanned_i_l.push_back(r.i_l.value_or(0.0));
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].outcome_label == rows[i - 1].outcome_label) continue;
    double a = rows[i - 1].swept_value;
    double b = rows[i].swept_value;
    Probe pa = probe(params, a);
    Probe pb = probe(params, b);
    if (a > b) {
      std::swap(a, b);
      std::swap(pa, pb);
    }
    while (b - a > tol) {
      const double mid = 0.5 * (a + b);
      Probe pm = probe(params, mid);
      if (pm.label == pa.label) {
        a = mid;
        pa = std::move(pm);
      } else {
        b = mid;
        pb = std::move(pm);
      }
    }
    Transition t;
    t.s_dagger = 0.5 * (a + b);
    t.s_below = a;
    t.s_above = b;
    t.label_below = pa.label;
    t.label_above = pb.label;
    t.i_l_below = pa.i_l;
    t.i_l_above = pb.i_l;
    t.i_f_below = pa.i_f;
    t.i_f_above = pb.i_f;
    report.transitions.push_back(t);
  }
  return report;
}

}  // namespace duopoly::cli
