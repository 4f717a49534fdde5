#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "thermoring/entropy.hpp"
#include "thermoring/successor.hpp"
#include "thermoring/witt.hpp"

using namespace thermoring;

TEST_CASE("successor at the origin pays the maximal entropy bonus") {
  WittContext ctx(Measure::shannon(), 1.0);
  OplusResult r = successor(ctx, 0.0);
  CHECK(std::fabs(r.value - (-std::log(2.0))) <= 1e-9);
  CHECK(std::fabs(r.argmin_p - 0.5) <= 1e-6);
  // lambda carries the binary op: x (+) y = lambda(x - y) + y
  for (double x : {-2.0, 0.3, 1.9}) {
    for (double y : {-1.1, 0.0, 2.4}) {
      double lhs = oplus(ctx, x, y).value;
      double rhs = successor(ctx, x - y).value + y;
      CHECK(std::fabs(lhs - rhs) <= 1e-8);
    }
  }
}

TEST_CASE("closed successor forms match the numeric solver") {
  struct Probe {
    WittContext ctx;
    double tol;
  };
  Probe probes[] = {
      {WittContext(Measure::shannon(), 1.0), 1e-9},
      {WittContext(Measure::shannon(0.7), 2.0), 1e-9},
      {WittContext(Measure::kl(0.3), 1.0), 1e-9},
      {WittContext(Measure::tsallis(0.5), 1.0), 1e-8},
      {WittContext(Measure::tsallis(2.0), 1.0), 1e-8},
  };
  for (const Probe& pr : probes) {
    for (double x = -6.0; x <= 6.0; x += 0.25) {
      double closed = successor_closed(pr.ctx, x);
      double numeric = successor(pr.ctx, x).value;
      CHECK(std::fabs(closed - numeric) <= pr.tol);
    }
  }
}

TEST_CASE("concave-regime successor curve matches frozen anchors") {
  // tsallis order 1/2, unit temperature: interior stationary points only
  WittContext ctx(Measure::tsallis(0.5), 1.0);
  struct Anchor {
    double x, lambda;
  };
  Anchor anchors[] = {
      {0.5, -0.621034637},
      {1.0, -0.484435332},
      {2.0, -0.330190677},
      {5.0, -0.166471964},
  };
  for (const Anchor& a : anchors) {
    CHECK(std::fabs(successor_closed(ctx, a.x) - a.lambda) <= 1e-8);
    CHECK(std::fabs(successor(ctx, a.x).value - a.lambda) <= 1e-7);
  }
  // symmetry of the measure: lambda(-x) = lambda(x) - x
  for (double x : {0.5, 1.0, 2.0}) {
    CHECK(std::fabs(successor_closed(ctx, -x) - (successor_closed(ctx, x) - x)) <= 1e-10);
  }
}

TEST_CASE("convex-regime successor saturates on exact plateaus") {
  // tsallis order 2: S'(p) = 2 - 4p has range [-2, 2], so lambda(x) = 0 for
  // x >= 2T and lambda(x) = x for x <= -2T.
  WittContext ctx(Measure::tsallis(2.0), 1.0);
  CHECK(successor_closed(ctx, 2.0) == 0.0);
  CHECK(successor_closed(ctx, 3.0) == 0.0);
  CHECK(successor_closed(ctx, 100.0) == 0.0);
  CHECK(successor_closed(ctx, -2.0) == -2.0);
  CHECK(successor_closed(ctx, -3.0) == -3.0);
  // interior point: stationary p = (2 - x/T)/4, lambda = px - 2Tp(1-p)
  double p = (2.0 - 1.0) / 4.0;
  CHECK(std::fabs(successor_closed(ctx, 1.0) - (p * 1.0 - 2.0 * p * (1.0 - p))) <= 1e-12);
  // the numeric solver lands on the same plateau values
  CHECK(std::fabs(successor(ctx, 3.0).value) <= 1e-9);
  CHECK(std::fabs(successor(ctx, -3.0).value - (-3.0)) <= 1e-9);
}

TEST_CASE("successor edge cases and rejections") {
  // order within the dispatch window of 1 falls back to the shannon form
  WittContext near1(Measure::tsallis(1.0 + 1e-9), 1.0);
  WittContext sh(Measure::shannon(), 1.0);
  CHECK(std::fabs(successor_closed(near1, 0.7) - successor_closed(sh, 0.7)) <= 1e-9);
  // renyi has no elementary closed form and is rejected
  CHECK_THROWS_AS(successor_closed(WittContext(Measure::renyi(0.5), 1.0), 1.0),
                  std::invalid_argument);
  // T = 0: lambda(x) = min(x, 0)
  WittContext cold(Measure::shannon(), 0.0);
  CHECK(successor_closed(cold, 3.0) == 0.0);
  CHECK(successor_closed(cold, -3.0) == -3.0);
  CHECK(successor(cold, 3.0).value == 0.0);
  // +inf argument: weight pins to 0, lambda = -T*S(0)
  CHECK(successor_closed(sh, kTropicalInf) == 0.0);
  WittContext kl(Measure::kl(0.3), 1.0);
  CHECK(std::fabs(successor_closed(kl, kTropicalInf) - (-std::log(0.7))) <= 1e-12);
  CHECK_THROWS_AS(successor(sh, -kTropicalInf), std::domain_error);
}

TEST_CASE("entropy is recovered from the successor curve by conjugation") {
  std::vector<double> grid;
  for (double x = -45.0; x <= 45.0; x += 0.005) grid.push_back(x);
  WittContext ctx(Measure::shannon(), 1.0);
  for (double p : {0.1, 0.25, 0.5, 0.8}) {
    double ts = recover_entropy(ctx, p, grid);
    CHECK(std::fabs(ts - entropy2(ctx.measure, p)) <= 1e-5);
  }
  WittContext ts2(Measure::tsallis(2.0), 1.0);
  CHECK(std::fabs(recover_entropy(ts2, 0.3, grid) - entropy2(ts2.measure, 0.3)) <= 1e-5);
  // endpoints recover the (zero) boundary entropy
  CHECK(std::fabs(recover_entropy(ctx, 0.0, grid)) <= 1e-5);
  CHECK(std::fabs(recover_entropy(ctx, 1.0, grid)) <= 1e-5);

  CHECK_THROWS_AS(recover_entropy(ctx, -0.1, grid), std::domain_error);
  CHECK_THROWS_AS(recover_entropy(ctx, 1.1, grid), std::domain_error);
  CHECK_THROWS_AS(recover_entropy(WittContext(Measure::shannon(), 0.0), 0.5, grid),
                  std::domain_error);
  std::vector<double> short_grid = {-1.0, 0.0, 1.0};
  CHECK_THROWS_AS(recover_entropy(ctx, 0.5, short_grid), std::invalid_argument);
  CHECK_THROWS_AS(recover_entropy(ctx, 0.5, {0.0}), std::invalid_argument);
}

TEST_CASE("euler and first-cumulant identities hold to difference accuracy") {
  WittContext sh(Measure::shannon(), 1.0);
  WittContext ry(Measure::renyi(0.9), 2.0);
  for (double x : {-2.0, -0.5, 0.4, 1.8}) {
    CumulantResiduals r = cumulant_residuals(sh, x, 1e-4);
    CHECK(r.euler <= 1e-5);
    CHECK(r.first_cumulant <= 1e-5);
    r = cumulant_residuals(ry, x, 1e-4);
    CHECK(r.euler <= 1e-5);
    CHECK(r.first_cumulant <= 1e-5);
  }
  CHECK_THROWS_AS(cumulant_residuals(sh, 0.0, 1e-7), std::invalid_argument);
  CHECK_THROWS_AS(cumulant_residuals(sh, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(cumulant_residuals(sh, kTropicalInf, 1e-4), std::invalid_argument);
  CHECK_THROWS_AS(cumulant_residuals(WittContext(Measure::shannon(), 0.0), 0.0, 1e-4),
                  std::domain_error);
}

TEST_CASE("curve sampling is inclusive and serializes cleanly") {
  WittContext ctx(Measure::shannon(), 1.0);
  SuccessorCurve c = sample_curve(ctx, -5.0, 5.0, 0.01);
  REQUIRE(c.xs.size() == 1001);
  CHECK(c.xs.front() == -5.0);
  CHECK(std::fabs(c.xs.back() - 5.0) <= 1e-12);
  REQUIRE(c.values.size() == c.xs.size());
  REQUIRE(c.argmins.size() == c.xs.size());
  // lambda is nondecreasing and dominated by min(x, 0)
  for (std::size_t i = 1; i < c.values.size(); ++i) {
    CHECK(c.values[i] >= c.values[i - 1] - 1e-9);
    CHECK(c.values[i] <= std::min(c.xs[i], 0.0) + 1e-12);
  }
  CHECK_THROWS_AS(sample_curve(ctx, 1.0, -1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(sample_curve(ctx, -1.0, 1.0, 0.0), std::invalid_argument);

  std::ostringstream out;
  write_curve_csv(c, out);
  std::string text = out.str();
  CHECK(text.rfind("x,lambda,argmin_p\n", 0) == 0);
  std::size_t rows = 0;
  for (char ch : text) rows += (ch == '\n');
  CHECK(rows == c.xs.size() + 1);
}
