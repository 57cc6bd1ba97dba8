#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sdnls/cli_io.hpp"
#include "sdnls/error.hpp"
#include "sdnls/verification.hpp"

using namespace sdnls;

namespace {

constexpr double kPi = std::numbers::pi;

struct PlaneWave {
  double amplitude;
  double k;
  double omega;
  cplx operator()(double x, double t) const { return amplitude * std::exp(cplx(0.0, k * x - omega * t)); }
};

}  // namespace

TEST_CASE("residual of a constant background vanishes") {
  BackgroundParams bg;
  bg.q_minus = std::polar(1.0, 0.7);
  const PointEvaluator q = [&](double, double) { return bg.q_minus; };
  CHECK(std::abs(pde_residual(q, bg, 0.3, -1.2, 1e-3)) == 0.0);
}

TEST_CASE("residual of plane waves") {
  // With x0 = t0 = 0 the wave A exp(i(kx - wt)) solves the equation when
  // w = k^2 - sigma k A^2; any other w leaves the residual i(k^2 - sigma k A^2 - w) q.
  BackgroundParams bg;
  bg.sigma = -1;
  const double A = 0.8;
  const double k = 0.6;
  const double w = k * k - bg.sigma * k * A * A;
  const PlaneWave exact{A, k, w};
  const double r1 = std::abs(pde_residual(exact, bg, 0.4, 0.2, 1e-2));
  const double r2 = std::abs(pde_residual(exact, bg, 0.4, 0.2, 5e-3));
  CHECK(r1 < 1e-3);
  CHECK(std::log2(r1 / r2) == doctest::Approx(2.0).epsilon(0.02));

  const PlaneWave detuned{A, k, w + 0.25};
  const cplx expected = cplx(0.0, -0.25) * detuned(0.4, 0.2);
  CHECK(std::abs(pde_residual(detuned, bg, 0.4, 0.2, 1e-3) - expected) < 1e-5);
}

TEST_CASE("mbar offsets modulo pi") {
  const auto [rem, k] = mbar_offset(cplx(0.2 + 3.0 * kPi + 1e-3, 0.0), cplx(0.2, 0.0));
  CHECK(rem == doctest::Approx(1e-3).epsilon(1e-6));
  CHECK(k == 3);
  const auto [rem2, k2] = mbar_offset(cplx(-kPi, 1e-4), 0.0);
  CHECK(rem2 == doctest::Approx(1e-4).epsilon(1e-6));
  CHECK(k2 == -1);
}

TEST_CASE("determinant ratio on a hand-computed system") {
  Eigen::MatrixXcd G(2, 2);
  G << 2.0, 1.0, 0.0, 4.0;
  Eigen::RowVectorXcd Y(2);
  Y << 1.0, cplx(0.0, 1.0);
  Eigen::VectorXcd H(2);
  H << 3.0, 8.0;
  // G^{-1} H = (0.5, 2), so Y G^{-1} H = 0.5 + 2i.
  CHECK(std::abs(determinant_ratio(G, Y, H) - cplx(0.5, 2.0)) < 1e-15);
  CHECK(std::abs(schur_ratio(G, Y, H) - cplx(0.5, 2.0)) < 1e-15);
}

TEST_CASE("trace zeros have the declared order on every preset") {
  for (const auto& info : list_presets()) {
    CAPTURE(info.name);
    const TraceZeroReport r = trace_zero_check(build_spectrum(preset(info.name)));
    CHECK(r.pass);
    CHECK(r.entries.size() == preset(info.name).eigenvalues.size() * 2);
  }
}

TEST_CASE("identity suite") {
  IdentityOptions opts;
  opts.sum_rule_points = 6;
  opts.oracle_points = 3;
  opts.schur_trials = 20;

  BackgroundParams bg;
  const Solution empty(validate_spectrum(bg, {}));
  CHECK(identity_suite(empty, opts).pass);

  const ScenarioConfig cfg = preset("fig4b");
  opts.region = cfg.grid;
  const Solution sol(build_spectrum(cfg), solver_options(cfg));
  const IdentityReport good = identity_suite(sol, opts);
  for (const auto& c : good.checks) {
    CAPTURE(c.name);
    CHECK(c.pass);
  }

  DiscreteSpectrum corrupted = build_spectrum(cfg);
  REQUIRE(inject_norming_fault(corrupted));
  const Solution bad(std::move(corrupted), solver_options(cfg));
  CHECK_FALSE(identity_suite(bad, opts).pass);
}

TEST_CASE("boundary limits and residual on a double-pole preset") {
  const ScenarioConfig cfg = preset("fig4b");
  const Solution sol(build_spectrum(cfg), solver_options(cfg));
  const BoundaryReport b = boundary_check(sol, 0.0);
  CHECK(b.err_minus < 1e-6);
  CHECK(b.err_plus < 1e-6);
  CHECK(b.err_mbar < 1e-6);

  ResidualSurveyOptions ro;
  ro.points = 12;
  const ResidualReport r = residual_survey(sol, cfg.grid, ro);
  CHECK(r.samples.size() == 12);
  CHECK(r.max_abs_residual < 1e-4);
  CHECK(std::abs(r.richardson_order - 2.0) < 0.3);
}

TEST_CASE("a corrupted norming constant breaks the residual") {
  const ScenarioConfig cfg = preset("fig1b");
  DiscreteSpectrum s = build_spectrum(cfg);
  REQUIRE(inject_norming_fault(s));
  const Solution bad(std::move(s), solver_options(cfg));
  ResidualSurveyOptions ro;
  ro.points = 10;
  GridSpec core = cfg.grid;
  core.x_min = -15.0;
  core.x_max = 15.0;
  core.t_min = -5.0;
  core.t_max = 5.0;
  CHECK(residual_survey(bad, core, ro).max_abs_residual > 1e-2);

  BackgroundParams bg;
  DiscreteSpectrum empty = validate_spectrum(bg, {});
  CHECK_FALSE(inject_norming_fault(empty));
}
