#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "thermoring/entropy.hpp"
#include "thermoring/legendre.hpp"

using namespace thermoring;

namespace {

SampledFunction sample(double lo, double hi, double step, double (*fn)(double)) {
  std::vector<double> grid = uniform_grid(lo, hi, step);
  std::vector<double> vals;
  vals.reserve(grid.size());
  for (double x : grid) vals.push_back(fn(x));
  return make_sampled(std::move(grid), std::move(vals));
}

}  // namespace

TEST_CASE("uniform_grid is inclusive on both ends") {
  auto g = uniform_grid(-1.0, 1.0, 0.5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == -1.0);
  CHECK(g.back() == doctest::Approx(1.0));
  CHECK(uniform_grid(-5.0, 5.0, 0.01).size() == 1001);
  CHECK_THROWS_AS(uniform_grid(1.0, -1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(uniform_grid(-1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("sampled functions are validated") {
  CHECK_THROWS_AS(make_sampled({0.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(make_sampled({0.0, 1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(make_sampled({1.0, 0.0}, {1.0, 2.0}), std::domain_error);
  CHECK_THROWS_AS(make_sampled({0.0, 0.0}, {1.0, 2.0}), std::domain_error);
  CHECK_THROWS_AS(make_sampled({0.0, 1.0}, {1.0, -kTropicalInf}), std::domain_error);
  // +inf values are allowed (points outside the effective domain)
  CHECK_NOTHROW(make_sampled({0.0, 1.0}, {kTropicalInf, 2.0}));
}

TEST_CASE("conjugate of a parabola is the dual parabola") {
  // f(x) = x^2/2 is self-conjugate
  auto f = sample(-4.0, 4.0, 0.001, [](double x) { return 0.5 * x * x; });
  auto star = conjugate(f, uniform_grid(-2.0, 2.0, 0.25));
  for (std::size_t j = 0; j < star.grid.size(); ++j) {
    double y = star.grid[j];
    CHECK(star.values[j] == doctest::Approx(0.5 * y * y).epsilon(1e-6));
  }
}

TEST_CASE("conjugate of an affine function is a point mass") {
  // f(x) = 2x + 1 gives f*(y) = -1 at y = 2 and grows linearly away from it
  auto f = sample(-10.0, 10.0, 0.01, [](double x) { return 2.0 * x + 1.0; });
  auto star = conjugate(f, {1.0, 2.0, 3.0});
  CHECK(star.values[1] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(star.values[0] == doctest::Approx(9.0).epsilon(1e-9));   // (1-2)*(-10) - 1
  CHECK(star.values[2] == doctest::Approx(9.0).epsilon(1e-9));   // (3-2)*10 - 1
}

TEST_CASE("conjugate skips +inf samples and rejects the empty domain") {
  SampledFunction f = make_sampled({0.0, 1.0, 2.0}, {kTropicalInf, 3.0, kTropicalInf});
  auto star = conjugate(f, {-1.0, 0.0, 1.0});
  // only the node at x = 1 participates: f*(y) = y - 3
  CHECK(star.values[0] == doctest::Approx(-4.0));
  CHECK(star.values[1] == doctest::Approx(-3.0));
  CHECK(star.values[2] == doctest::Approx(-2.0));
  SampledFunction all_inf = make_sampled({0.0, 1.0}, {kTropicalInf, kTropicalInf});
  CHECK_THROWS_AS(conjugate(all_inf, {0.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(conjugate(f, {0.0}), std::invalid_argument);
}

TEST_CASE("biconjugate recovers a convex function and never exceeds it") {
  auto f = sample(-3.0, 3.0, 0.001, [](double x) { return 0.5 * x * x; });
  auto back = biconjugate(f, uniform_grid(-4.0, 4.0, 0.001), f.grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    CHECK(back.values[i] <= f.values[i]);  // exact, not approximate
    worst = std::max(worst, std::fabs(back.values[i] - f.values[i]));
  }
  CHECK(worst <= 2e-3);
}

TEST_CASE("biconjugate of a double well is its convex hull") {
  // f(x) = (x^2 - 1)^2 has wells at +-1; the hull is flat and equal to 0
  // between them.
  auto f = sample(-2.0, 2.0, 0.001, [](double x) {
    double t = x * x - 1.0;
    return t * t;
  });
  auto back = biconjugate(f, uniform_grid(-20.0, 20.0, 0.001), f.grid);
  for (std::size_t i = 0; i < back.grid.size(); ++i) {
    double x = back.grid[i];
    if (std::fabs(x) <= 1.0) {
      CHECK(std::fabs(back.values[i]) <= 2e-3);     // flat hull segment
    } else {
      CHECK(back.values[i] <= f.values[i]);
    }
  }
  // the hull is convex even though f is not; adjacent-triple violations of
  // the well scale as |f''| h^2 / 2 = 2e-6 at this step
  CHECK(convexity_defect(back) <= 1e-12);
  double t = 0.25 * 0.25 - 1.0;  // f has a genuine bump at the origin
  CHECK(f.values[(f.grid.size() - 1) / 2] > t * t);
  CHECK(convexity_defect(f) > 1e-6);
}

TEST_CASE("biconjugate rejects primal points outside the sampled hull") {
  auto f = sample(-1.0, 1.0, 0.01, [](double x) { return x * x; });
  CHECK_THROWS_AS(biconjugate(f, uniform_grid(-5.0, 5.0, 0.1), {-2.0, 0.0}),
                  std::domain_error);
  CHECK_THROWS_AS(biconjugate(f, uniform_grid(-5.0, 5.0, 0.1), {0.0}),
                  std::invalid_argument);
}

TEST_CASE("negated shannon entropy round trips through conjugation") {
  Measure m = Measure::shannon();
  std::vector<double> grid = uniform_grid(0.0, 1.0, 1e-3);
  std::vector<double> vals;
  for (double p : grid) vals.push_back(-entropy2(m, p));
  auto f = make_sampled(grid, vals);
  auto back = biconjugate(f, uniform_grid(-40.0, 40.0, 1e-2), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(back.values[i] <= f.values[i]);
    CHECK(std::fabs(back.values[i] - f.values[i]) <= 2e-3);
  }
}

TEST_CASE("csv round trip preserves values including +inf") {
  SampledFunction f = make_sampled({-1.5, 0.0, 0.25, 3.0},
                                   {2.25, kTropicalInf, -0.125, 9.0});
  std::stringstream buf;
  write_csv(f, buf);
  SampledFunction g = read_csv(buf);
  REQUIRE(g.grid.size() == f.grid.size());
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    CHECK(g.grid[i] == f.grid[i]);      // bit-exact round trip
    CHECK(g.values[i] == f.values[i]);
  }
}

TEST_CASE("csv reader rejects malformed input") {
  {
    std::stringstream buf("wrong,header\n0,1\n1,2\n");
    CHECK_THROWS_AS(read_csv(buf), std::invalid_argument);
  }
  {
    std::stringstream buf("x,f\n0;1\n");
    CHECK_THROWS_AS(read_csv(buf), std::invalid_argument);
  }
  {
    std::stringstream buf("x,f\n0,abc\n");
    CHECK_THROWS_AS(read_csv(buf), std::invalid_argument);
  }
  {
    // fewer than two rows cannot form a grid
    std::stringstream buf("x,f\n0,1\n");
    CHECK_THROWS_AS(read_csv(buf), std::invalid_argument);
  }
  {
    // windows line endings are tolerated
    std::stringstream buf("x,f\r\n0,1\r\n1,2\r\n");
    SampledFunction g = read_csv(buf);
    CHECK(g.values[1] == 2.0);
  }
}
