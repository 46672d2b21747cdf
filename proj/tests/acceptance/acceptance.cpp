// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "duopoly/bargaining.hpp"
#include "duopoly/cli/app.hpp"
#include "duopoly/cli/sweep.hpp"
#include "duopoly/cli/threshold.hpp"
#include "duopoly/hotelling_spne.hpp"
#include "duopoly/oracle.hpp"
#include "duopoly/outside_option_spne.hpp"

using namespace duopoly;
namespace oo = duopoly::outside_option;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;  // <= 0: none
  std::function<Verdict()> body;
};

std::string fmt(double v) { return cli::format_number(v); }

MarketParams hotelling(double c, double s, double gamma) {
  MarketParams p;
  p.model_case = ModelCase::Hotelling;
  p.c = c;
  p.s = s;
  p.gamma = gamma;
  return p;
}

MarketParams outside(double c, double s, double gamma, double k, double b) {
  MarketParams p = hotelling(c, s, gamma);
  p.model_case = ModelCase::OutsideOption;
  p.k = k;
  p.b = b;
  return p;
}

double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

Verdict outcome_b_exactness() {
  Verdict v;
  const double c = 1.0, gamma = 0.1, s = 0.5;
  const SpneSolution sol = hotelling::solve_spne(hotelling(c, s, gamma));
  v.require(sol.outcome == Outcome::B, "label is not B at s = 0.5");
  if (!sol.path) {
    v.require(false, "no path");
    return v;
  }
  const EquilibriumPath& e = *sol.path;
  const double tol = 1e-9;
  v.require(close(e.prices.p_f, c + 2.0 / 3.0, tol), "p_F = " + fmt(e.prices.p_f));
  v.require(close(e.prices.p_l, c + 1.0 / 3.0, tol), "p_L = " + fmt(e.prices.p_l));
  v.require(close(e.split.n_f, 2.0 / 3.0, tol), "n_F = " + fmt(e.split.n_f));
  v.require(close(e.split.n_l, 1.0 / 3.0, tol), "n_L = " + fmt(e.split.n_l));
  v.require(close(e.payoffs.pi_f, 2.0 / 9.0, tol), "pi_F = " + fmt(e.payoffs.pi_f));
  v.require(close(e.payoffs.pi_l, 1.0 / 3.0 - 2 * gamma / (9 * s), tol),
            "pi_L = " + fmt(e.payoffs.pi_l));
  if (v.pass) v.detail = "s = 0.5, all six values within 1e-9";
  return v;
}

Verdict payoff_dominance_threshold() {
  Verdict v;
  const double c = 1.0, gamma = 0.1;
  const auto gap = [&](double s) {
    const SpneSolution sol = hotelling::solve_spne(hotelling(c, s, gamma));
    return std::pair{sol.outcome, sol.path->payoffs.pi_l - sol.path->payoffs.pi_f};
  };
  int checked = 0;
  for (int i = 0; i <= 600; ++i) {
    const double s = gamma + (0.78 - gamma) * i / 600.0;
    if (std::abs(s - 2 * gamma) < 1e-12) continue;
    const auto [outcome, d] = gap(s);
    if (outcome != Outcome::B) {
      v.require(false, "left the B regime at s = " + fmt(s));
      break;
    }
    v.require((d > 0.0) == (s > 2 * gamma), "dominance flips wrongly at s = " + fmt(s));
    ++checked;
  }
  double lo = gamma, hi = 0.7;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid).second > 0.0 ? hi : lo) = mid;
  }
  const double crossing = 0.5 * (lo + hi);
  v.require(std::abs(crossing - 2 * gamma) <= 1e-6, "crossing at " + fmt(crossing));
  if (v.pass) {
    v.detail = std::to_string(checked) + " sweep points; crossing at " + fmt(crossing);
  }
  return v;
}

Verdict stage2_oracle_equivalence() {
  Verdict v;
  std::mt19937_64 g(3);
  const double gamma = 0.1;
  double worst = 0.0;
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    MarketParams p = hotelling(1.0, uniform(g, gamma, 10.0), gamma);
    const double i_l = uniform(g, 0.02, 2.0);
    const double closed = hotelling::stage2_if(p, i_l);
    const oracle::GridMax best = oracle::argmax_grid(
        [&](double f) {
          const double share = (i_l + f) / (3.0 * i_l);
          return share * share - p.s * f * f;
        },
        0.0, i_l, 1e-5);
    worst = std::max(worst, std::abs(best.argmax - closed));
  }
  v.require(worst <= 1e-4, "max deviation " + fmt(worst));
  if (v.pass) v.detail = std::to_string(n) + " pairs, max |closed - grid| = " + fmt(worst);
  return v;
}

Verdict stage3_nash_property() {
  Verdict v;
  std::mt19937_64 g(4);
  const int n = 200;
  const auto both = [](const MarketParams& p, const Investments& inv, const Prices& pr,
                       const oracle::PriceGrid& grid) {
    return std::max(oracle::max_deviation_gain(p, inv, pr, hotelling::Provider::Leader, grid),
                    oracle::max_deviation_gain(p, inv, pr, hotelling::Provider::Follower, grid));
  };

  int bad_1 = 0, split_1 = 0;
  double worst_1 = -INFINITY;
  for (int i = 0; i < n; ++i) {
    const double c = uniform(g, 0.0, 2.0);
    const double i_l = uniform(g, 0.05, 5.0);
    const Investments inv(i_l, uniform(g, 0.0, 1.0) * i_l);
    const MarketParams p = hotelling(c, 1.0, 0.1);
    const Prices pr = hotelling::stage3_prices(inv, c);
    const double x = indifferent_eu(inv, pr);
    if (!(x > 0.0 && x < 1.0)) ++split_1;
    const double gain = both(p, inv, pr, oracle::default_price_grid(c));
    worst_1 = std::max(worst_1, gain);
    if (gain > 1e-6) ++bad_1;
  }

  int bad_2 = 0, split_2 = 0;
  double worst_2 = -INFINITY;
  for (int i = 0; i < n; ++i) {
    const MarketParams p = outside(uniform(g, 0.0, 2.0), 1.0, 0.1, uniform(g, 0.0, 2.0),
                                   uniform(g, 0.2, 2.0));
    const double i_l = uniform(g, 0.001, 0.999) * oo::interiority_limit(p);
    const Investments inv(i_l, uniform(g, 0.0, 1.0) * i_l);
    const Prices pr = oo::stage3_prices(p, inv);
    const double psi = oo::psi(p, i_l, inv.i_f());
    if (!(psi > 0.0 && psi < 1.0)) ++split_2;
    const auto [lo, hi] = oracle::price_search_window(p, inv);
    const double gain = both(p, inv, pr, {lo, hi, 1e-4});
    worst_2 = std::max(worst_2, gain);
    if (gain > 1e-6) ++bad_2;
  }

  v.require(split_1 == 0 && split_2 == 0, "interior split violated: " + std::to_string(split_1) +
                                              " hotelling, " + std::to_string(split_2) +
                                              " outside-option");
  v.require(bad_1 == 0 && bad_2 == 0,
            "profitable deviations: hotelling " + std::to_string(bad_1) + "/" +
                std::to_string(n) + " (max gain " + fmt(worst_1) + "), outside-option " +
                std::to_string(bad_2) + "/" + std::to_string(n) + " (max gain " + fmt(worst_2) +
                "; closed-form prices are a local equilibrium only)");
  if (v.pass) {
    v.detail = std::to_string(n) + " + " + std::to_string(n) + " profiles, max gains " +
               fmt(worst_1) + " and " + fmt(worst_2);
  }
  return v;
}

Verdict regime_transition() {
  Verdict v;
  const double c = 1.0;
  std::ostringstream summary;
  for (auto [gamma, lo] : {std::pair{0.1, 0.1}, std::pair{0.01, 0.01}}) {
    // command path
    std::vector<std::string> args{"duopoly", "threshold", "--case", "1", "-g", fmt(gamma),
                                  "-c",      fmt(c),      "--from", fmt(lo), "--to", "10",
                                  "--points", "400"};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    v.require(code == cli::kExitOk, "threshold command failed for gamma = " + fmt(gamma));
    v.require(out.str().find("transitions: 1\n") != std::string::npos,
              "threshold command did not report one transition for gamma = " + fmt(gamma));

    MarketParams p = hotelling(c, lo, gamma);
    const cli::ThresholdReport r = cli::find_thresholds(p, lo, 10.0, 400, false);
    v.require(r.transitions.size() == 1,
              std::to_string(r.transitions.size()) + " transitions for gamma = " + fmt(gamma));
    if (r.transitions.size() != 1) continue;
    const cli::Transition& t = r.transitions.front();
    v.require(t.label_below == "B" && t.label_above == "A", "labels not B -> A");
    v.require(t.s_above - t.s_below <= 1e-6, "bracket wider than 1e-6");
    v.require(std::abs(t.jump_i_l()) > 0.05 && std::abs(t.jump_i_f()) > 0.05,
              "no discontinuous jump for gamma = " + fmt(gamma));
    summary << "gamma=" << fmt(gamma) << ": s_dagger=" << fmt(t.s_dagger)
            << " jump(i_l)=" << fmt(t.jump_i_l()) << " jump(i_f)=" << fmt(t.jump_i_f()) << "; ";
  }

  cli::SweepSpec spec;
  spec.param = "s";
  spec.lo = 0.1;
  spec.hi = 10.0;
  spec.count = 400;
  spec.base = hotelling(c, 0.1, 0.1);
  const auto high = cli::run_sweep(spec);
  spec.base.gamma = 0.01;
  const auto low = cli::run_sweep(spec);
  for (std::size_t i = 0; i < high.size(); ++i) {
    v.require(*low[i].i_l >= *high[i].i_l,
              "i_l(gamma=0.01) < i_l(gamma=0.1) at s = " + fmt(high[i].swept_value));
  }
  if (v.pass) v.detail = summary.str() + "pointwise comparison over 400 s values";
  return v;
}

Verdict k_regime_statics() {
  Verdict v;
  std::ostringstream summary;
  for (double k : {0.75, 1.0, 1.5}) {
    std::vector<double> s_values, i_l, pi_l, pi_f;
    for (int i = 0; i <= 400; ++i) {
      const double s = 0.1 + (10.0 - 0.1) * i / 400.0;
      const SpneSolution sol = oo::solve_spne(outside(1.0, s, 0.1, k, 1.0));
      if (!sol.path || sol.stage2 != Stage2Label::Interior) continue;
      s_values.push_back(s);
      i_l.push_back(sol.path->inv.i_l());
      pi_l.push_back(sol.path->payoffs.pi_l);
      pi_f.push_back(sol.path->payoffs.pi_f);
    }
    v.require(s_values.size() >= 10, "interior regime too short for k = " + fmt(k));
    if (s_values.size() < 2) continue;
    const auto tol = [](double x) { return 1e-12 * std::max(1.0, std::abs(x)); };
    for (std::size_t i = 1; i < s_values.size(); ++i) {
      if (k == 0.75) v.require(i_l[i] <= i_l[i - 1] + tol(i_l[i]), "k=0.75: i_l rises");
      if (k == 1.5) v.require(i_l[i] >= i_l[i - 1] - tol(i_l[i]), "k=1.5: i_l falls");
      v.require(pi_l[i] >= pi_l[i - 1] - tol(pi_l[i]), "pi_L falls, k = " + fmt(k));
      v.require(pi_f[i] <= pi_f[i - 1] + tol(pi_f[i]), "pi_F rises, k = " + fmt(k));
    }
    const auto [mn, mx] = std::minmax_element(i_l.begin(), i_l.end());
    const double rel = (*mx - *mn) / std::abs(*mx);
    if (k == 1.0) v.require(rel <= 1e-3, "k=1: relative variation " + fmt(rel));
    summary << "k=" << fmt(k) << ": s in [" << fmt(s_values.front()) << ", "
            << fmt(s_values.back()) << "], i_l in [" << fmt(*mn) << ", " << fmt(*mx) << "]; ";
  }
  if (v.pass) v.detail = summary.str();
  return v;
}

Verdict nbs_case1() {
  Verdict v;
  std::mt19937_64 g(7);
  int feasible = 0, tried = 0;
  double worst = 0.0;
  while (feasible < 60 && tried < 2000) {
    ++tried;
    const double gamma = uniform(g, 0.01, 0.3);
    MarketParams p = hotelling(uniform(g, 0.0, 2.0), gamma * uniform(g, 1.0, 20.0), gamma);
    p.w = uniform(g, 0.0, 1.0);
    p.i_min_l = uniform(g, 0.05, 1.5);
    const bargaining::NbsSolution sol = bargaining::solve_nbs(p);
    if (!sol.feasible) continue;
    ++feasible;
    v.require(sol.inv.i_l() == p.i_min_l, "i_l != i_min_l");
    v.require(sol.inv.i_f() == 0.0 || sol.inv.i_f() == p.i_min_l, "i_f not on a boundary");
    worst = std::max(worst, std::abs(sol.payoffs.pi_f - sol.d.d_f - p.w * sol.u_excess));
    worst = std::max(worst, std::abs(sol.payoffs.pi_l - sol.d.d_l - (1 - p.w) * sol.u_excess));
  }
  v.require(feasible >= 50, "only " + std::to_string(feasible) + " feasible configurations");
  v.require(worst <= 1e-9, "split identity error " + fmt(worst));

  MarketParams p = hotelling(1.0, 1.0, 0.05);
  p.i_min_l = 1.0;
  double prev = INFINITY;
  for (int i = 0; i <= 50; ++i) {
    p.w = i / 50.0;
    const bargaining::NbsSolution sol = bargaining::solve_nbs(p);
    v.require(sol.s_star.has_value(), "no s* in the w sweep");
    if (!sol.s_star) break;
    v.require(*sol.s_star < prev, "s* not decreasing at w = " + fmt(p.w));
    prev = *sol.s_star;
  }
  if (v.pass) {
    v.detail = std::to_string(feasible) + " feasible configurations, split error " + fmt(worst) +
               ", s* decreasing over 51 w values";
  }
  return v;
}

Verdict nbs_case2() {
  Verdict v;
  std::mt19937_64 g(8);
  int done = 0, tried = 0;
  while (done < 60 && tried < 2000) {
    ++tried;
    MarketParams p = outside(uniform(g, 0.0, 1.2), uniform(g, 0.5, 4.0), uniform(g, 0.05, 0.5),
                             uniform(g, 0.75, 2.0), uniform(g, 0.3, 2.0));
    p.w = uniform(g, 0.0, 1.0);
    if (!oo::solve_spne(p).path) continue;
    ++done;
    const bargaining::NbsSolution sol = bargaining::solve_nbs(p);
    const double i_l = sol.inv.i_l();
    const auto u = [&](double a, double f) {
      return bargaining::u_excess_outside_option(p, Investments(a, f), sol.d);
    };
    const oracle::GridMax along_if =
        oracle::argmax_grid([&](double f) { return u(i_l, f); }, 0.0, i_l, i_l * 1e-4);
    v.require(along_if.argmax == i_l || along_if.argmax == 0.0,
              "interior grid argmax over i_f at i_l = " + fmt(i_l));
    v.require(sol.inv.i_f() == along_if.argmax, "branch differs from the grid winner");

    // joint grid over (i_l, i_f)
    const double limit = oo::interiority_limit(p);
    double best = -INFINITY, best_ratio = 0.0;
    for (int a = 1; a <= 400; ++a) {
      const double x = limit * a / 400.0;
      for (int r = 0; r <= 100; ++r) {
        const double val = u(x, x * r / 100.0);
        if (val >= best) {
          best = val;
          best_ratio = r / 100.0;
        }
      }
    }
    v.require(best_ratio == 0.0 || best_ratio == 1.0, "joint grid winner has an interior lease");
    v.require(sol.u_excess >= best - 1e-9, "grid beats the solution: " + fmt(best - sol.u_excess));
  }
  v.require(done >= 50, "only " + std::to_string(done) + " configurations");
  if (v.pass) v.detail = std::to_string(done) + " configurations";
  return v;
}

// Direct scan of the hotelling bargaining problem over (i_l >= i_min_l, i_f, s).
Verdict nbs_product_optimality() {
  Verdict v;
  std::mt19937_64 g(9);
  int done = 0;
  double worst = INFINITY;
  for (int n = 0; n < 100 && done < 12; ++n) {
    MarketParams p = hotelling(uniform(g, 0.0, 2.0), 1.0, uniform(g, 0.01, 0.1));
    p.w = uniform(g, 0.1, 0.9);
    p.i_min_l = uniform(g, 0.3, 1.2);
    const bargaining::NbsSolution sol = bargaining::solve_nbs(p);
    if (!sol.feasible) continue;
    ++done;
    const auto product = bargaining::nash_product(sol.payoffs, sol.d, p.w);
    v.require(product.has_value(), "solution violates the disagreement constraints");
    if (!product) continue;

    oracle::NbsGrids grids;
    grids.i_l = {p.i_min_l, 2.0 * p.i_min_l, 6};
    grids.lease_ratio = {0.0, 1.0, 11};
    const double centre = sol.s_star.value_or(0.0);
    grids.s = {centre - 1.0, centre + 1.0, 2001};
    const oracle::NbsGridResult r = oracle::nbs_product_grid(p, sol.d, grids);
    v.require(r.feasible, "grid found no feasible point");
    if (!r.feasible) continue;
    worst = std::min(worst, *product - r.product);
    v.require(*product >= r.product - 1e-6,
              "grid product exceeds the solution by " + fmt(r.product - *product));
  }
  v.require(done >= 10, "only " + std::to_string(done) + " configurations");
  if (v.pass) {
    v.detail = std::to_string(done) + " configurations, min(solution - grid) = " + fmt(worst);
  }
  return v;
}

Verdict corner_non_existence() {
  Verdict v;
  std::mt19937_64 g(10);
  int n_l_zero = 0, n_f_zero = 0;
  double min_gain = INFINITY;
  for (int i = 0; i < 200; ++i) {
    const double c = uniform(g, 0.0, 2.0);
    const MarketParams p = hotelling(c, 1.0, 0.1);
    const double i_l = uniform(g, 0.1, 3.0);
    const Investments inv(i_l, uniform(g, 0.0, 1.0) * i_l);
    const PreferenceWeights t = preference_weights(inv);
    const double p_l = c + uniform(g, -0.5, 1.5);
    // boundary profiles on every fourth draw, deep corners otherwise
    const double depth = i % 4 == 0 ? 0.0 : uniform(g, 0.0, 1.0);
    Prices pr;
    if (i % 2 == 0) {
      pr = {p_l, p_l - t.t_f - depth};  // x_n <= 0: n_l = 0
      ++n_l_zero;
    } else {
      pr = {p_l, p_l - t.t_f + 1.0 + depth};  // x_n >= 1: n_f = 0
      ++n_f_zero;
    }
    const hotelling::CornerDeviation d = hotelling::corner_deviation_witness(p, inv, pr);
    // recompute the gain from the payoff functions
    Prices moved = pr;
    (d.who == hotelling::Provider::Leader ? moved.p_l : moved.p_f) = d.new_price;
    const Payoffs before = stage_payoffs(p, inv, pr);
    const Payoffs after = stage_payoffs(p, inv, moved);
    const double gain = d.who == hotelling::Provider::Leader ? after.pi_l - before.pi_l
                                                             : after.pi_f - before.pi_f;
    v.require(d.gain > 0.0 && gain > 0.0, "no profitable deviation at profile " + std::to_string(i));
    min_gain = std::min(min_gain, gain);
  }
  if (v.pass) {
    v.detail = std::to_string(n_l_zero) + " n_L=0 and " + std::to_string(n_f_zero) +
               " n_F=0 profiles, min gain " + fmt(min_gain);
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "outcome-B exactness", 1.0, outcome_b_exactness},
      {2, "payoff-dominance threshold at s = 2 gamma", 0.0, payoff_dominance_threshold},
      {3, "stage-2 lease vs grid oracle", 30.0, stage2_oracle_equivalence},
      {4, "stage-3 Nash property", 60.0, stage3_nash_property},
      {5, "regime transition", 0.0, regime_transition},
      {6, "outside-option k-regime comparative statics", 0.0, k_regime_statics},
      {7, "bargaining structure, hotelling", 0.0, nbs_case1},
      {8, "bargaining structure, outside option", 0.0, nbs_case2},
      {9, "Nash product vs grid oracle", 120.0, nbs_product_optimality},
      {10, "corner profiles are not equilibria", 0.0, corner_non_existence},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && secs >= c.time_limit_s) {
      v.pass = false;
      v.detail = "took " + fmt(secs) + " s, limit " + fmt(c.time_limit_s) + " s";
    }
    if (!v.pass) ++failed;
    std::printf("%s criterion %2d: %s (%.2f s) - %s\n", v.pass ? "PASS" : "FAIL", c.id,
                c.title.c_str(), secs, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
