#include <cmath>

#include "duopoly/errors.hpp"
#include "duopoly/hotelling_spne.hpp"
#include "duopoly/numopt.hpp"
#include "duopoly/oracle.hpp"
#include "support.hpp"

using namespace duopoly;

TEST_SUITE("numopt") {
  TEST_CASE("unique quadratic maximum") {
    const OptResult r =
        maximize_scalar([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0);
    REQUIRE(r.ok());
    CHECK_CLOSE(r.argmax, 0.3, 1e-9);
    CHECK(r.tied_argmaxes.size() == 1);
    CHECK(r.evaluations > 0);
  }

  TEST_CASE("symmetric tie goes to the largest maximizer") {
    const OptResult r = maximize_scalar(
        [](double x) { return -1e3 * (x - 0.3) * (x - 0.3) * (x - 0.7) * (x - 0.7); }, 0.0, 1.0);
    REQUIRE(r.ok());
    CHECK_CLOSE(r.argmax, 0.7, 1e-6);
    REQUIRE(r.tied_argmaxes.size() == 2);
    CHECK_CLOSE(r.tied_argmaxes.front(), 0.3, 1e-6);
    CHECK(r.argmax == r.tied_argmaxes.back());
  }

  TEST_CASE("constant objective returns the right end") {
    const OptResult r = maximize_scalar([](double) { return 2.0; }, -1.0, 3.0);
    CHECK(r.argmax == 3.0);
    CHECK(r.max_value == 2.0);
  }

  TEST_CASE("infeasible points are never chosen") {
    const OptResult r = maximize_scalar(
        [](double x) -> std::optional<double> {
          if (x < 0.5) return std::nullopt;
          return -x;
        },
        0.0, 1.0);
    REQUIRE(r.ok());
    CHECK(r.argmax >= 0.5);
    CHECK_CLOSE(r.argmax, 0.5, 1e-8);

    const OptResult none =
        maximize_scalar([](double) -> std::optional<double> { return std::nullopt; }, 0.0, 1.0);
    CHECK(none.status == OptStatus::NoFeasiblePoint);
    CHECK_FALSE(none.ok());
  }

  TEST_CASE("bad configuration and interval") {
    OptConfig cfg;
    cfg.grid_points = 8;
    CHECK_THROWS_AS(maximize_scalar([](double x) { return x; }, 0, 1, cfg), ValidationError);
    cfg = {};
    cfg.refine_tol = 0.0;
    CHECK_THROWS_AS(maximize_scalar([](double x) { return x; }, 0, 1, cfg), ValidationError);
    CHECK_THROWS_AS(maximize_scalar([](double x) { return x; }, 1, 0), ValidationError);
  }

  TEST_CASE("hotelling stage-1 objective against an exhaustive scan") {
    const MarketParams p = test::hotelling(1, 1, 0.1);
    const double lo = hotelling::full_lease_threshold(p.s);
    const double hi = hotelling::stage1_search_cap(p);
    const OptResult r =
        maximize_scalar([&](double x) { return hotelling::stage1_objective(p, x); }, lo, hi);
    const oracle::GridMax g = oracle::argmax_grid(
        [&](double x) { return hotelling::stage1_objective(p, std::max(x, lo)); }, lo, hi, 1e-6);
    CHECK_CLOSE(r.argmax, g.argmax, 1e-5);
    CHECK(r.max_value >= g.value - 1e-12);
  }

  TEST_CASE("soundness on a verification grid") {
    const std::vector<std::function<double(double)>> fs{
        [](double x) { return std::sin(7 * x) + 0.3 * std::cos(23 * x); },
        [](double x) { return -std::abs(x - 0.41) + 0.1 * std::sin(50 * x); },
        [](double x) { return x < 0.6 ? x : 1.2 - x; },
    };
    for (const auto& f : fs) {
      const OptResult r = maximize_scalar([&](double x) { return f(x); }, 0.0, 1.0);
      const double eps = 1e-8 * std::max(1.0, std::abs(r.max_value));
      for (int i = 0; i <= 100000; ++i) {
        const double x = i / 100000.0;
        if (!(r.max_value >= f(x) - eps)) {
          FAIL("objective exceeds the reported maximum at x = " << x);
          break;
        }
      }
      CHECK(r.argmax == r.tied_argmaxes.back());
    }
  }

  TEST_CASE("results are bit-identical across runs") {
    const auto f = [](double x) { return std::sin(13 * x) * std::exp(-x); };
    const OptResult a = maximize_scalar(f, 0.0, 3.0);
    const OptResult b = maximize_scalar(f, 0.0, 3.0);
    CHECK(a.argmax == b.argmax);
    CHECK(a.max_value == b.max_value);
    CHECK(a.tied_argmaxes == b.tied_argmaxes);
    CHECK(a.evaluations == b.evaluations);
  }

  TEST_CASE("tie detection is relative") {
    CHECK(values_tied(1.0, 1.0 + 5e-11, 1e-10));
    CHECK_FALSE(values_tied(1.0, 1.0 + 5e-10, 1e-10));
    CHECK(values_tied(1e6, 1e6 + 5e-5, 1e-10));
    CHECK(values_tied(0.0, 5e-11, 1e-10));
  }
}
