#include <doctest.h>

#include <numbers>

#include "sdnls/error.hpp"
#include "sdnls/phase.hpp"
#include "sdnls/trace.hpp"

using namespace sdnls;

namespace {

constexpr double kPi = std::numbers::pi;

BackgroundParams background(int sigma, int eta, double x0 = 0.0, double t0 = 0.0) {
  BackgroundParams bg;
  bg.sigma = sigma;
  bg.eta = eta;
  bg.x0 = x0;
  bg.t0 = t0;
  return bg;
}

EigenvalueEntry entry(cplx xi, int order = 1) {
  EigenvalueEntry e;
  e.xi = xi;
  e.order = order;
  return e;
}

}  // namespace

TEST_CASE("uniformization") {
  const PhaseContext ctx(background(-1, 1));
  const auto [k, l] = ctx.k_lambda(cplx(1.0, 1.0));
  CHECK(std::abs(k - cplx(0.75, 0.25)) < 1e-15);
  CHECK(std::abs(l - cplx(0.25, 0.75)) < 1e-15);
  CHECK(std::abs(k + l - cplx(1.0, 1.0)) < 1e-15);
  CHECK(std::abs(l * l - k * k - ctx.a()) < 1e-15);
  CHECK_THROWS_AS((void)ctx.k_lambda(cplx(0.0)), Error);
}

TEST_CASE("phase properties") {
  const PhaseContext ctx(background(-1, 1, 15.0, 0.0));
  const cplx z(0.8, 0.45);
  CHECK(std::abs(ctx.theta(z, 3.0, 1.5) - ctx.theta_literal(z, 3.0, 1.5)) < 1e-14);
  CHECK(std::abs(ctx.theta(-z, 3.0, 1.5) - ctx.theta(z, 3.0, 1.5)) < 1e-14);
  CHECK(std::abs(ctx.theta(z, 7.0, 0.0) / 7.0 - ctx.theta(z, 2.0, 0.0) / 2.0) < 1e-14);
  CHECK(std::abs(ctx.theta0(std::polar(1.0, kPi / 4)) - cplx(0.0, 7.5)) < 1e-14);

  const PhaseContext circle(background(-1, -1));
  CHECK(std::abs(circle.theta(cplx(1.0), 4.0, -3.0)) < 1e-15);
  const PhaseContext unshifted(background(-1, 1));
  CHECK(std::abs(unshifted.theta0(z)) == 0.0);
}

TEST_CASE("phase jets match the scalar function") {
  const PhaseContext ctx(background(1, -1, 2.0, 1.0));
  const cplx z0(0.5, 1.2);
  const Jet th = ctx.theta(Jet::variable(z0), 1.3, -0.7);
  const double h = 1e-5;
  const cplx fd = (ctx.theta(z0 + h, 1.3, -0.7) - ctx.theta(z0 - h, 1.3, -0.7)) / (2.0 * h);
  CHECK(std::abs(th.value() - ctx.theta(z0, 1.3, -0.7)) < 1e-14);
  CHECK(std::abs(th.derivative(1) - fd) < 1e-8);
}

TEST_CASE("single-pole trace derivative") {
  const DiscreteSpectrum s = validate_spectrum(background(-1, -1), {entry(std::polar(1.0, kPi / 4))});
  const TraceContext tc(s);
  const Jet u = tc.u11(Jet::variable(s.points()[0].xi));
  CHECK(std::abs(u.value()) < 1e-15);
  CHECK(std::abs(u.derivative(1) - std::polar(1.0, -kPi / 4)) < 1e-14);
}

TEST_CASE("zero orders of u11") {
  const DiscreteSpectrum s = validate_spectrum(
      background(-1, 1), {entry({0.4, 0.9}, 1), entry(std::polar(2.0, kPi / 8), 2), entry(std::polar(0.5, kPi / 6), 3)});
  const TraceContext tc(s);
  for (const auto& p : s.points()) {
    const Jet u = tc.u11(Jet::variable(p.xi));
    for (int k = 0; k < p.order; ++k) CHECK(std::abs(u.derivative(k)) < 1e-13);
    CHECK(std::abs(u.derivative(p.order)) > 1e-8);
  }
}

TEST_CASE("trace identities") {
  const DiscreteSpectrum s =
      validate_spectrum(background(-1, 1), {entry({0.4, 0.9}, 1), entry(std::polar(2.0, kPi / 8), 2)});
  const TraceContext tc(s);
  for (cplx z : {cplx(0.3, 0.2), cplx(-1.4, 0.8), cplx(2.0, -3.0)}) {
    CHECK(std::abs(tc.u11(z) * tc.u22(z) - 1.0) < 1e-13);
    CHECK(std::abs(tc.u11(z) - tc.u11(-z)) < 1e-13);
  }
  const cplx far = std::polar(1e6, 0.3);
  CHECK(std::abs(tc.u11(far) - s.expimbar()) < 1e-5);
  CHECK_THROWS_AS((void)tc.u11(s.points()[0].hat), Error);
}
