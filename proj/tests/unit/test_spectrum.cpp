#include <doctest.h>

#include <numbers>

#include "sdnls/error.hpp"
#include "sdnls/spectrum.hpp"

using namespace sdnls;

namespace {

constexpr double kPi = std::numbers::pi;

BackgroundParams background(int sigma, int eta, double x0 = 0.0, double t0 = 0.0) {
  BackgroundParams bg;
  bg.sigma = sigma;
  bg.eta = eta;
  bg.q_minus = 1.0;
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

TEST_CASE("background parameters") {
  const BackgroundParams bg = background(-1, -1);
  CHECK(bg.a() == 1.0);
  CHECK(bg.q_plus() == cplx(-1.0));
  CHECK(background(-1, 1).a() == -1.0);
  BackgroundParams bad = bg;
  bad.sigma = 2;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = bg;
  bad.q_minus = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("empty spectrum") {
  const DiscreteSpectrum s = validate_spectrum(background(-1, 1), {});
  CHECK(s.L() == 0);
  CHECK(s.M() == 0);
  CHECK(s.points().empty());
  CHECK(s.exp2imbar() == cplx(1.0));
  CHECK(std::abs(s.mbar()) == 0.0);
}

TEST_CASE("eigenvalue validation") {
  const BackgroundParams bg = background(-1, -1);
  try {
    (void)validate_spectrum(bg, {entry({0.0, 0.5})});
    FAIL("expected NotFirstQuadrant");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotFirstQuadrant);
  }
  try {
    (void)validate_spectrum(bg, {entry({0.5, 0.5}, 4)});
    FAIL("expected InvalidOrder");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidOrder);
  }
  try {
    (void)validate_spectrum(bg, {entry({0.5, 0.5}), entry({0.5, 0.5})});
    FAIL("expected DegenerateSpectrum");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegenerateSpectrum);
  }
  auto zero_b = entry({0.6, 0.4});
  zero_b.b = 0.0;
  CHECK_THROWS_AS((void)validate_spectrum(bg, {zero_b}), Error);
}

TEST_CASE("three-soliton master list") {
  const BackgroundParams bg = background(-1, 1);
  const DiscreteSpectrum s = validate_spectrum(
      bg, {entry(std::polar(1.0, 5 * kPi / 24)), entry(std::polar(1.0, 9 * kPi / 24)), entry(std::polar(1.0, 10 * kPi / 24))});
  CHECK(s.L() == 3);
  CHECK(s.points().size() == 6);
  CHECK(s.M() == 6);
  for (std::size_t n = 0; n < 3; ++n) {
    CHECK(s.points()[n].parity == 1);
    CHECK(s.points()[n + 3].parity == -1);
    CHECK(std::abs(s.points()[n + 3].xi + s.points()[n].xi) == 0.0);
    CHECK(std::abs(s.points()[n].hat - bg.a() / s.points()[n].xi) < 1e-15);
  }
}

TEST_CASE("master list groups by pole order") {
  const DiscreteSpectrum s =
      validate_spectrum(background(-1, 1), {entry({1.0, 1.0}, 3), entry({0.3, 0.2}, 1), entry({1.5, 0.4}, 2)});
  CHECK(s.n1() == 1);
  CHECK(s.n2() == 1);
  CHECK(s.n3() == 1);
  CHECK(s.M() == 2 + 4 + 6);
  const std::vector<int> orders = {1, 1, 2, 2, 3, 3};
  for (std::size_t i = 0; i < orders.size(); ++i) CHECK(s.points()[i].order == orders[i]);
}

TEST_CASE("theta condition") {
  SUBCASE("triple pole with eta = -1") {
    const auto tc = compute_mbar(background(-1, -1), {entry(std::polar(1.0, kPi / 4), 3)});
    CHECK(std::abs(tc.exp2imbar - 1.0) < 1e-14);
    CHECK(std::abs(tc.mbar) < 1e-14);
  }
  SUBCASE("reciprocal-radius double pair") {
    const auto tc =
        compute_mbar(background(-1, 1), {entry(std::polar(2.0, kPi / 8), 2), entry(std::polar(0.5, kPi / 8), 2)});
    CHECK(std::abs(tc.exp2imbar - 1.0) < 1e-13);
    CHECK(std::abs(tc.mbar) < 1e-13);
  }
  SUBCASE("principal branch and square root") {
    const auto tc = compute_mbar(background(-1, 1), {entry({0.7, 0.3})});
    CHECK(std::abs(std::exp(cplx(0.0, 2.0) * tc.mbar) - tc.exp2imbar) < 1e-14);
    CHECK(tc.mbar.real() > -kPi / 2);
    CHECK(tc.mbar.real() <= kPi / 2);
    CHECK(std::abs(tc.expimbar * tc.expimbar - tc.exp2imbar) < 1e-14);
    CHECK(tc.expimbar.real() >= 0.0);
  }
}

TEST_CASE("norming completion") {
  SUBCASE("unshifted reflection flips b") {
    const DiscreteSpectrum s = validate_spectrum(background(-1, 1), {entry(std::polar(1.0, kPi / 3))});
    CHECK(s.points()[0].norming.b == cplx(1.0));
    CHECK(s.points()[1].norming.b == cplx(-1.0));
  }
  SUBCASE("hat relation") {
    const BackgroundParams bg = background(-1, 1);
    const cplx xi = std::polar(1.0, kPi / 3);
    const NormingData hat = hat_side_norming(bg, xi, NormingData{1.0, 0.0, 0.0});
    CHECK(std::abs(hat.b - 1.0) < 1e-15);
    const NormingData b2 = hat_side_norming(bg, xi, NormingData{{0.3, 0.8}, 0.0, 0.0});
    CHECK(std::abs(b2.b - (-static_cast<double>(bg.sigma)) / cplx(0.3, 0.8)) < 1e-15);
  }
  SUBCASE("reflection") {
    const NormingData r = reflect_norming(NormingData{{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}});
    CHECK(r.b == cplx(-1.0, -2.0));
    CHECK(r.d == cplx(3.0, 4.0));
    CHECK(r.h == cplx(-5.0, -6.0));
  }
  SUBCASE("centered defaults") {
    CHECK(default_centered_b(-1) == cplx(1.0));
    CHECK(default_centered_b(1) == cplx(0.0, 1.0));
  }
  SUBCASE("transport is the identity without a shift") {
    const NormingData c{{0.2, 0.1}, {0.5, -0.3}, {1.0, 2.0}};
    const NormingData t = transport_norming(background(-1, 1), {0.6, 0.9}, c);
    CHECK(std::abs(t.b - c.b) < 1e-15);
    CHECK(std::abs(t.d - c.d) < 1e-15);
    CHECK(std::abs(t.h - c.h) < 1e-15);
  }
  SUBCASE("transport multiplies b by exp(i theta0)") {
    const BackgroundParams bg = background(-1, 1, 15.0, 0.0);
    const cplx xi = std::polar(1.0, kPi / 4);
    const NormingData t = transport_norming(bg, xi, NormingData{});
    // k lambda = (z^2 - 1/z^2)/4 = i/2 at e^{i pi/4}, so theta0 = 7.5 i.
    CHECK(std::abs(t.b - std::exp(-7.5)) < 1e-15);
  }
  SUBCASE("raw frame keeps constants verbatim") {
    auto e = entry({0.6, 0.9}, 2);
    e.b = cplx(0.5, 0.5);
    e.d = cplx(1.0, -1.0);
    const DiscreteSpectrum s = validate_spectrum(background(-1, 1, 3.0, 2.0), {e}, NormingFrame::Raw);
    CHECK(s.points()[0].norming.b == cplx(0.5, 0.5));
    CHECK(s.points()[0].norming.d == cplx(1.0, -1.0));
  }
}

TEST_CASE("fault injection scales one constant") {
  DiscreteSpectrum s = validate_spectrum(background(-1, 1), {entry({0.6, 0.9})});
  s.scale_norming(1, 1.01);
  CHECK(std::abs(s.points()[1].norming.b - cplx(-1.01)) < 1e-15);
  CHECK(s.points()[0].norming.b == cplx(1.0));
}
