#include "duopoly/cli/sweep.hpp"

#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <thread>

#include "duopoly/errors.hpp"
#include "duopoly/hotelling_spne.hpp"
#include "duopoly/outside_option_spne.hpp"

namespace duopoly::cli {

namespace {

void fill_path(SweepRow& row, const Investments& inv, const Prices& prices,
               const MarketSplit& split, const Payoffs& pi) {
  row.i_l = inv.i_l();
  row.i_f = inv.i_f();
  row.p_l = prices.p_l;
  row.p_f = prices.p_f;
  row.n_l = split.n_l_total;
  row.n_f = split.n_f_total;
  row.pi_l = pi.pi_l;
  row.pi_f = pi.pi_f;
}

void put(std::ostream& out, const std::optional<double>& v) {
  if (v) out << format_number(*v);
}

}  // namespace

std::string to_string(Solver solver) { return solver == Solver::Nbs ? "nbs" : "spne"; }

bool is_sweepable(std::string_view name) {
  static constexpr std::array<std::string_view, 9> names{"s", "gamma", "g",    "c",      "k",
                                                         "b", "w",     "imin", "i_min_l"};
  for (auto n : names) {
    if (n == name) return true;
  }
  return false;
}

void set_param(MarketParams& params, std::string_view name, double value) {
  if (name == "s") {
    params.s = value;
  } else if (name == "gamma" || name == "g") {
    params.gamma = value;
  } else if (name == "c") {
    params.c = value;
  } else if (name == "k") {
    params.k = value;
  } else if (name == "b") {
    params.b = value;
  } else if (name == "w") {
    params.w = value;
  } else if (name == "imin" || name == "i_min_l") {
    params.i_min_l = value;
  } else {
    throw ValidationError("unknown sweep parameter: " + std::string(name));
  }
}

void SweepSpec::validate() const {
  if (!is_sweepable(param)) throw ValidationError("unknown sweep parameter: " + param);
  if (count < 2) throw ValidationError("points >= 2");
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo == hi) {
    throw ValidationError("sweep range needs finite from != to");
  }
  if (log_scale && !(lo > 0.0 && hi > 0.0)) {
    throw ValidationError("log sweep needs from > 0 and to > 0");
  }
  for (double v : values()) {
    MarketParams p = base;
    set_param(p, param, v);
    try {
      duopoly::validate(p);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(e.what()) + " at " + param + " = " + format_number(v));
    }
  }
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    if (log_scale) {
      out[i] = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
    } else {
      out[i] = lo + t * (hi - lo);
    }
  }
  if (count >= 2) {
    out.front() = lo;
    out.back() = hi;
  }
  return out;
}

SweepRow solve_point(const MarketParams& params, Solver solver, double swept_value,
                     const std::optional<bargaining::DisagreementPoint>& d_override) {
  SweepRow row;
  row.swept_value = swept_value;
  if (solver == Solver::Spne) {
    const SpneSolution sol = params.model_case == ModelCase::OutsideOption
                                 ? outside_option::solve_spne(params)
                                 : hotelling::solve_spne(params);
    row.outcome_label = to_string(sol.outcome);
    if (sol.path) {
      fill_path(row, sol.path->inv, sol.path->prices, sol.path->split, sol.path->payoffs);
    }
    return row;
  }
  try {
    const bargaining::NbsSolution sol = bargaining::solve_nbs(params, d_override);
    row.u_excess = sol.u_excess;
    if (!sol.feasible) {
      row.outcome_label = "infeasible";
      return row;
    }
    row.outcome_label = sol.inv.i_f() > 0.0 ? "full-lease" : "no-lease";
    fill_path(row, sol.inv, sol.prices, sol.split, sol.payoffs);
    row.s_star = sol.s_star;
  } catch (const NoEquilibriumError&) {
    row.outcome_label = "no-disagreement-point";
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  const std::vector<double> xs = spec.values();
  std::vector<SweepRow> rows(xs.size());
  std::vector<std::exception_ptr> errors(xs.size());
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (std::size_t i = next++; i < xs.size(); i = next++) {
      try {
        MarketParams p = spec.base;
        set_param(p, spec.param, xs[i]);
        rows[i] = solve_point(p, spec.solver, xs[i], spec.d_override);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(xs.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("format_number failed");
  return std::string(buf.data(), end);
}

std::string csv_header() {
  return "swept_value,i_l,i_f,p_l,p_f,n_l,n_f,pi_l,pi_f,outcome_label,s_star,u_excess";
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSchemaLine << '\n' << csv_header() << '\n';
  for (const SweepRow& r : rows) {
    out << format_number(r.swept_value);
    for (const auto* v : {&r.i_l, &r.i_f, &r.p_l, &r.p_f, &r.n_l, &r.n_f, &r.pi_l, &r.pi_f}) {
      out << ',';
      put(out, *v);
    }
    out << ',' << r.outcome_label << ',';
    put(out, r.s_star);
    out << ',';
    put(out, r.u_excess);
    out << '\n';
  }
}

bool demand_outside_unit_interval(const SweepRow& row) {
  const auto outside = [](const std::optional<double>& n) { return n && (*n < 0.0 || *n > 1.0); };
  return outside(row.n_l) || outside(row.n_f);
}

void write_meta(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  const MarketParams& p = spec.base;
  out << "tool=duopoly\n"
      << "version=" << kToolVersion << '\n'
      << "schema=" << kSchemaLine.substr(2) << '\n'
      << "case=" << static_cast<int>(p.model_case) << '\n'
      << "model=" << to_string(p.model_case) << '\n'
      << "solver=" << to_string(spec.solver) << '\n'
      << "sweep=" << spec.param << '\n'
      << "from=" << format_number(spec.lo) << '\n'
      << "to=" << format_number(spec.hi) << '\n'
      << "points=" << spec.count << '\n'
      << "spacing=" << (spec.log_scale ? "log" : "linear") << '\n'
      << "c=" << format_number(p.c) << '\n'
      << "s=" << format_number(p.s) << '\n'
      << "gamma=" << format_number(p.gamma) << '\n'
      << "k=" << format_number(p.k) << '\n'
      << "b=" << format_number(p.b) << '\n'
      << "w=" << format_number(p.w) << '\n'
      << "i_min_l=" << format_number(p.i_min_l) << '\n'
      << "outside_option_floor=" << (p.outside_option_floor ? "true" : "false") << '\n';
  if (spec.d_override) {
    out << "d_l=" << format_number(spec.d_override->d_l) << '\n'
        << "d_f=" << format_number(spec.d_override->d_f) << '\n';
  }
  out << "demand_outside_unit_interval=";
  bool first = true;
  for (const SweepRow& r : rows) {
    if (!demand_outside_unit_interval(r)) continue;
    out << (first ? "" : " ") << format_number(r.swept_value);
    first = false;
  }
  out << '\n';
}

}  // namespace duopoly::cli
