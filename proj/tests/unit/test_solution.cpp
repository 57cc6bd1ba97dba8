#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <algorithm>

#include "sdnls/cli_io.hpp"
#include "sdnls/error.hpp"
#include "sdnls/solution.hpp"

using namespace sdnls;

namespace {

Solution preset_solution(const char* name) {
  const ScenarioConfig cfg = preset(name);
  return Solution(build_spectrum(cfg), solver_options(cfg));
}

}  // namespace

TEST_CASE("grid specification") {
  GridSpec g;
  g.x_min = -1.0;
  g.x_max = 1.0;
  g.nx = 5;
  g.t_min = 2.0;
  g.t_max = 2.0;
  g.nt = 1;
  CHECK(g.x_at(0) == -1.0);
  CHECK(g.x_at(2) == 0.0);
  CHECK(g.x_at(4) == 1.0);
  CHECK(g.t_at(0) == 2.0);
  CHECK_NOTHROW(g.validate());
  g.nx = 0;
  CHECK_THROWS_AS(g.validate(), Error);
  g.nx = 3;
  g.x_max = -2.0;
  CHECK_THROWS_AS(g.validate(), Error);
}

TEST_CASE("empty spectrum reproduces the background everywhere") {
  BackgroundParams bg;
  bg.q_minus = std::polar(1.5, 0.4);
  bg.x0 = 3.0;
  const Solution sol(validate_spectrum(bg, {}));
  GridSpec g;
  g.nx = 11;
  g.nt = 7;
  for (const auto& s : sol.evaluate_grid(g, 2)) {
    CHECK_FALSE(s.singular);
    CHECK(std::abs(s.q - bg.q_minus) < 1e-14);
    CHECK(std::abs(s.m_minus) < 1e-14);
  }
}

TEST_CASE("one-point grid matches direct evaluation") {
  const Solution sol = preset_solution("fig2b");
  GridSpec g;
  g.x_min = g.x_max = 1.25;
  g.t_min = g.t_max = -0.5;
  g.nx = g.nt = 1;
  const auto grid = sol.evaluate_grid(g, 1);
  REQUIRE(grid.size() == 1);
  const SolutionSample direct = sol.evaluate(1.25, -0.5);
  CHECK(std::abs(grid[0].q - direct.q) < 1e-10);
  CHECK(std::abs(grid[0].P - direct.P) < 1e-13);
}

TEST_CASE("cumulative row sweep agrees with single quadratures") {
  const Solution sol = preset_solution("fig1b");
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-30.0, 30.0);
  for (double t : {-10.0, 3.0}) {
    std::vector<double> xs;
    for (int i = 0; i < 8; ++i) xs.push_back(ux(rng));
    std::sort(xs.begin(), xs.end());
    const auto row = sol.evaluate_row(t, xs);
    REQUIRE(row.size() == xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      CAPTURE(xs[i]);
      CHECK(std::abs(row[i].m_minus - sol.m_minus(xs[i], t)) < 1e-9);
    }
  }
}

TEST_CASE("grid output does not depend on the worker count") {
  const Solution sol = preset_solution("fig4b");
  GridSpec g;
  g.x_min = -20.0;
  g.x_max = 20.0;
  g.nx = 41;
  g.t_min = -6.0;
  g.t_max = 6.0;
  g.nt = 9;
  const auto one = sol.evaluate_grid(g, 1);
  const auto three = sol.evaluate_grid(g, 3);
  REQUIRE(one.size() == three.size());
  bool identical = true;
  for (std::size_t i = 0; i < one.size(); ++i) {
    identical = identical && one[i].x == three[i].x && one[i].t == three[i].t && one[i].q == three[i].q;
  }
  CHECK(identical);
}

TEST_CASE("far field of a single soliton") {
  const Solution sol = preset_solution("fig1b");
  const BackgroundParams& bg = sol.background();
  const SolutionSample left = sol.evaluate(-250.0, 0.0);
  const SolutionSample right = sol.evaluate(250.0, 0.0);
  CHECK(std::abs(left.q - bg.q_minus) < 1e-8);
  CHECK(std::abs(right.q - bg.q_plus()) < 1e-8);
}

TEST_CASE("far field of a shifted variant") {
  const Solution sol = preset_solution("fig1d");
  const BackgroundParams& bg = sol.background();
  const double tm = 0.5 * bg.t0;
  CHECK(std::abs(sol.evaluate(0.5 * bg.x0 - 250.0, tm).q - bg.q_minus) < 1e-8);
  CHECK(std::abs(sol.evaluate(0.5 * bg.x0 + 250.0, tm).q - bg.q_plus()) < 1e-8);
}
