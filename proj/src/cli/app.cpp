#include "duopoly/cli/app.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "duopoly/bargaining.hpp"
#include "duopoly/cli/sweep.hpp"
#include "duopoly/cli/threshold.hpp"
#include "duopoly/errors.hpp"
#include "duopoly/hotelling_spne.hpp"
#include "duopoly/outside_option_spne.hpp"

namespace duopoly::cli {

namespace {

using nlohmann::json;

struct Options {
  int model_case = 1;
  bool spne = false;
  bool nbs = false;
  MarketParams params;
  std::optional<double> d_l, d_f;
  std::string sweep_param;
  std::optional<double> from, to;
  int points = 101;
  bool log_scale = false;
  std::string out_path;
  bool json = false;
};

MarketParams resolved_params(const Options& o) {
  MarketParams p = o.params;
  p.model_case = o.model_case == 2 ? ModelCase::OutsideOption : ModelCase::Hotelling;
  return p;
}

std::optional<bargaining::DisagreementPoint> resolved_d(const Options& o) {
  if (o.d_l.has_value() != o.d_f.has_value()) {
    throw ValidationError("--dl and --df must be given together");
  }
  if (!o.d_l) return std::nullopt;
  return bargaining::DisagreementPoint{*o.d_l, *o.d_f};
}

json params_json(const MarketParams& p) {
  return {{"case", static_cast<int>(p.model_case)}, {"model", to_string(p.model_case)},
          {"c", p.c}, {"s", p.s}, {"gamma", p.gamma}, {"k", p.k}, {"b", p.b}, {"w", p.w},
          {"i_min_l", p.i_min_l}, {"outside_option_floor", p.outside_option_floor}};
}

json path_json(const Investments& inv, const Prices& pr, const MarketSplit& sp,
               const Payoffs& pi) {
  return {{"i_l", inv.i_l()},     {"i_f", inv.i_f()},     {"p_l", pr.p_l},
          {"p_f", pr.p_f},        {"n_l", sp.n_l},        {"n_f", sp.n_f},
          {"phi_l", sp.phi_l},    {"phi_f", sp.phi_f},    {"n_l_total", sp.n_l_total},
          {"n_f_total", sp.n_f_total}, {"pi_l", pi.pi_l}, {"pi_f", pi.pi_f}};
}

void print_path(std::ostream& out, const MarketParams& p, const Investments& inv,
                const Prices& pr, const MarketSplit& sp, const Payoffs& pi) {
  out << "  I_L  = " << format_number(inv.i_l()) << '\n'
      << "  I_F  = " << format_number(inv.i_f()) << '\n'
      << "  p_L  = " << format_number(pr.p_l) << '\n'
      << "  p_F  = " << format_number(pr.p_f) << '\n'
      << "  n_L  = " << format_number(sp.n_l) << '\n'
      << "  n_F  = " << format_number(sp.n_f) << '\n';
  if (p.model_case == ModelCase::OutsideOption) {
    out << "  phi_L = " << format_number(sp.phi_l) << '\n'
        << "  phi_F = " << format_number(sp.phi_f) << '\n'
        << "  n_L total = " << format_number(sp.n_l_total) << '\n'
        << "  n_F total = " << format_number(sp.n_f_total) << '\n';
  }
  out << "  pi_L = " << format_number(pi.pi_l) << '\n'
      << "  pi_F = " << format_number(pi.pi_f) << '\n';
}

void print_header(std::ostream& out, const MarketParams& p, Solver solver) {
  out << "model: " << to_string(p.model_case) << " (case " << static_cast<int>(p.model_case)
      << "), solver: " << to_string(solver) << '\n'
      << "params: c=" << format_number(p.c) << " s=" << format_number(p.s)
      << " gamma=" << format_number(p.gamma);
  if (p.model_case == ModelCase::OutsideOption) {
    out << " k=" << format_number(p.k) << " b=" << format_number(p.b);
  }
  if (solver == Solver::Nbs) {
    out << " w=" << format_number(p.w) << " i_min_l=" << format_number(p.i_min_l);
  }
  out << '\n';
}

int cmd_solve_spne(const Options& o, std::ostream& out) {
  const MarketParams p = resolved_params(o);
  const SpneSolution sol = p.model_case == ModelCase::OutsideOption
                               ? outside_option::solve_spne(p)
                               : hotelling::solve_spne(p);
  if (o.json) {
    json j{{"solver", "spne"}, {"params", params_json(p)}, {"outcome", to_string(sol.outcome)},
           {"notes", sol.notes}};
    if (sol.stage2) j["stage2"] = to_string(*sol.stage2);
    if (sol.i_l_floor) j["i_l_floor"] = *sol.i_l_floor;
    if (sol.path) {
      j["path"] = path_json(sol.path->inv, sol.path->prices, sol.path->split, sol.path->payoffs);
    }
    out << j.dump(2) << '\n';
  } else {
    print_header(out, p, Solver::Spne);
    out << "outcome: " << to_string(sol.outcome) << '\n';
    if (sol.stage2) out << "stage 2 regime: " << to_string(*sol.stage2) << '\n';
    if (sol.i_l_floor) out << "I_L floor: " << format_number(*sol.i_l_floor) << '\n';
    if (sol.path) {
      out << "equilibrium path:\n";
      print_path(out, p, sol.path->inv, sol.path->prices, sol.path->split, sol.path->payoffs);
    } else {
      out << "no equilibrium path\n";
    }
    for (const auto& note : sol.notes) out << "note: " << note << '\n';
  }
  return sol.path ? kExitOk : kExitNoSolution;
}

int cmd_solve_nbs(const Options& o, std::ostream& out) {
  const MarketParams p = resolved_params(o);
  const bargaining::NbsSolution sol = bargaining::solve_nbs(p, resolved_d(o));
  if (o.json) {
    json branches = json::array();
    for (const auto& br : sol.branches) {
      branches.push_back({{"i_l", br.inv.i_l()}, {"i_f", br.inv.i_f()}, {"u_excess", br.u_excess}});
    }
    json j{{"solver", "nbs"},
           {"params", params_json(p)},
           {"feasible", sol.feasible},
           {"u_excess", sol.u_excess},
           {"d_l", sol.d.d_l},
           {"d_f", sol.d.d_f},
           {"d_overridden", sol.d_overridden},
           {"branches", branches},
           {"notes", sol.notes},
           {"path", path_json(sol.inv, sol.prices, sol.split, sol.payoffs)}};
    j["s_star"] = sol.s_star ? json(*sol.s_star) : json(nullptr);
    j["transfer"] = sol.transfer ? json(*sol.transfer) : json(nullptr);
    out << j.dump(2) << '\n';
  } else {
    print_header(out, p, Solver::Nbs);
    out << "disagreement: d_L = " << format_number(sol.d.d_l)
        << ", d_F = " << format_number(sol.d.d_f)
        << (sol.d_overridden ? " (given)" : " (from the sequential game)") << '\n'
        << "u_excess = " << format_number(sol.u_excess) << '\n';
    for (const auto& br : sol.branches) {
      out << "branch I_F = " << format_number(br.inv.i_f())
          << ": I_L = " << format_number(br.inv.i_l())
          << ", u_excess = " << format_number(br.u_excess) << '\n';
    }
    if (!sol.feasible) {
      out << "bargaining infeasible: u_excess <= 0, payoffs stay at the disagreement point\n";
    } else {
      out << "bargain:\n";
      print_path(out, p, sol.inv, sol.prices, sol.split, sol.payoffs);
      if (sol.s_star) out << "  s*   = " << format_number(*sol.s_star) << '\n';
      if (sol.transfer) out << "  transfer F->L = " << format_number(*sol.transfer) << '\n';
    }
    for (const auto& note : sol.notes) out << "note: " << note << '\n';
  }
  return sol.feasible ? kExitOk : kExitNoSolution;
}

SweepSpec sweep_spec(const Options& o) {
  if (o.sweep_param.empty()) throw ValidationError("--sweep <param> is required");
  if (!o.from || !o.to) throw ValidationError("--from and --to are required");
  SweepSpec spec;
  spec.param = o.sweep_param;
  spec.lo = *o.from;
  spec.hi = *o.to;
  spec.count = o.points;
  spec.log_scale = o.log_scale;
  spec.base = resolved_params(o);
  spec.solver = o.nbs ? Solver::Nbs : Solver::Spne;
  spec.d_override = resolved_d(o);
  return spec;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.out_path.empty()) throw ValidationError("--out <path> is required");
  const SweepSpec spec = sweep_spec(o);
  const std::vector<SweepRow> rows = run_sweep(spec);

  std::ofstream csv(o.out_path, std::ios::binary);
  if (!csv) {
    err << "error: cannot open " << o.out_path << " for writing\n";
    return kExitIo;
  }
  write_csv(csv, rows);
  const std::string meta_path = o.out_path + ".meta.txt";
  std::ofstream meta(meta_path, std::ios::binary);
  if (!meta) {
    err << "error: cannot open " << meta_path << " for writing\n";
    return kExitIo;
  }
  write_meta(meta, spec, rows);
  csv.close();
  meta.close();
  if (!csv || !meta) {
    err << "error: write failed for " << o.out_path << '\n';
    return kExitIo;
  }
  out << "wrote " << rows.size() << " rows to " << o.out_path << " (metadata " << meta_path
      << ")\n";
  return kExitOk;
}

int cmd_threshold(const Options& o, std::ostream& out) {
  if (o.model_case != 1) throw ValidationError("threshold detection requires --case 1");
  MarketParams p = resolved_params(o);
  const double lo = o.from.value_or(p.gamma);
  const double hi = o.to.value_or(10.0);
  p.s = lo;
  const ThresholdReport report = find_thresholds(p, lo, hi, o.points, o.log_scale);
  out << "scan: s in [" << format_number(lo) << ", " << format_number(hi) << "], "
      << report.scanned_s.size() << " points, gamma=" << format_number(p.gamma)
      << " c=" << format_number(p.c) << '\n';
  if (report.transitions.empty()) {
    out << "no threshold found\n";
    return kExitNoSolution;
  }
  out << "transitions: " << report.transitions.size() << '\n';
  for (const Transition& t : report.transitions) {
    out << "s_dagger = " << format_number(t.s_dagger) << " (bracket "
        << format_number(t.s_below) << " .. " << format_number(t.s_above) << ")\n"
        << "  label " << t.label_below << " -> " << t.label_above << '\n'
        << "  I_L " << format_number(t.i_l_below) << " -> " << format_number(t.i_l_above)
        << " (jump " << format_number(t.jump_i_l()) << ")\n"
        << "  I_F " << format_number(t.i_f_below) << " -> " << format_number(t.i_f_above)
        << " (jump " << format_number(t.jump_i_f()) << ")\n";
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Equilibria and bargaining solutions for a two-provider spectrum market",
               "duopoly"};
  app.require_subcommand(1);
  app.add_option("--case", o.model_case, "1: hotelling, 2: hotelling plus outside option")
      ->check(CLI::IsMember({1, 2}));
  auto* spne = app.add_flag("--spne", o.spne, "sequential game (default)");
  auto* nbs = app.add_flag("--nbs", o.nbs, "Nash bargaining");
  spne->excludes(nbs);
  app.add_option("-s", o.params.s, "per-resource lease fee");
  app.add_option("-g,--gamma", o.params.gamma, "investment cost coefficient");
  app.add_option("-c", o.params.c, "marginal cost");
  app.add_option("-k", o.params.k, "demand intercept (case 2)");
  app.add_option("-b", o.params.b, "demand sensitivity to investment (case 2)");
  app.add_option("-w", o.params.w, "follower bargaining weight");
  app.add_option("--imin", o.params.i_min_l, "minimum leader investment");
  app.add_flag("--floor", o.params.outside_option_floor, "apply --imin in case 2 bargaining");
  app.add_option("--dl", o.d_l, "leader disagreement payoff (with --df)");
  app.add_option("--df", o.d_f, "follower disagreement payoff (with --dl)");
  app.add_option("--sweep", o.sweep_param, "swept parameter: s, gamma, c, k, b, w, imin");
  app.add_option("--from", o.from, "sweep start");
  app.add_option("--to", o.to, "sweep end");
  app.add_option("--points", o.points, "number of sweep points");
  app.add_flag("--log", o.log_scale, "log spacing");
  app.add_option("--out", o.out_path, "CSV output path");
  app.add_flag("--json", o.json, "machine-readable solve output");
  app.set_config("--config", "", "key=value file; flags override its entries");

  auto* solve = app.add_subcommand("solve", "solve one parameter point")->fallthrough();
  auto* sweep = app.add_subcommand("sweep", "sweep one parameter and write CSV")->fallthrough();
  auto* threshold =
      app.add_subcommand("threshold", "locate outcome transitions in s (case 1)")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::FileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (solve->parsed()) return o.nbs ? cmd_solve_nbs(o, out) : cmd_solve_spne(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out, err);
    if (threshold->parsed()) return cmd_threshold(o, out);
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NoEquilibriumError& e) {
    err << "no solution: " << e.what() << '\n';
    return kExitNoSolution;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DegenerateTransferError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNoSolution;
  }
  return kExitValidation;
}

}  // namespace duopoly::cli
