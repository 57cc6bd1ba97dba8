#include <doctest.h>

#include "sdnls/error.hpp"
#include "sdnls/jet.hpp"

using namespace sdnls;

namespace {

void check_coeffs(const Jet& j, std::initializer_list<cplx> expected) {
  int k = 0;
  for (cplx e : expected) {
    CHECK(std::abs(j[k] - e) <= 1e-15 * std::max(1.0, std::abs(e)));
    ++k;
  }
}

}  // namespace

TEST_CASE("variable jets carry the identity expansion") {
  check_coeffs(Jet::variable(2.0), {2.0, 1.0, 0.0, 0.0, 0.0, 0.0});
  check_coeffs(Jet::variable({1.0, 1.0}), {{1.0, 1.0}, 1.0, 0.0, 0.0, 0.0, 0.0});
  check_coeffs(Jet::variable(0.0), {0.0, 1.0, 0.0, 0.0, 0.0, 0.0});
}

TEST_CASE("arithmetic matches hand expansions") {
  const Jet z = Jet::variable(2.0);
  check_coeffs(z * z, {4.0, 4.0, 1.0, 0.0, 0.0, 0.0});
  check_coeffs(Jet::constant(2.0, 1.0) / z, {0.5, -0.25, 0.125, -0.0625, 0.03125, -0.015625});
  const Jet zero = z + (-z);
  check_coeffs(zero, {0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
  check_coeffs(z - 2.0, {0.0, 1.0, 0.0, 0.0, 0.0, 0.0});
}

TEST_CASE("integer powers") {
  const Jet z = Jet::variable(2.0);
  check_coeffs(int_pow(z, 3), {8.0, 12.0, 6.0, 1.0, 0.0, 0.0});
  check_coeffs(int_pow(z, 0), {1.0, 0.0, 0.0, 0.0, 0.0, 0.0});
  CHECK(std::abs(int_pow(z, -2)[2] - 3.0 / 16.0) < 1e-16);
}

TEST_CASE("derivatives are factorial-scaled coefficients") {
  const Jet z = Jet::variable(2.0);
  CHECK(std::abs((z * z).derivative(1) - 4.0) < 1e-15);
  CHECK(std::abs((1.0 / z).derivative(2) - 0.25) < 1e-15);
  CHECK((z * z).derivative(0) == (z * z)[0]);
  const Jet w = Jet::variable({0.3, 0.7});
  const Jet f = int_pow(w, 5);
  CHECK(std::abs(f.derivative(5) - 120.0) < 1e-12);
  CHECK_THROWS_AS((void)f.derivative(6), Error);
}

TEST_CASE("division by a vanishing jet and mixed bases are errors") {
  const Jet z = Jet::variable(0.0);
  CHECK_THROWS_AS((void)(1.0 / z), Error);
  const Jet a = Jet::variable(1.0);
  const Jet b = Jet::variable(2.0);
  CHECK_THROWS_AS((void)(a + b), Error);
}

TEST_CASE("quotient rule on a rational function") {
  const cplx z0(0.4, 1.1);
  const Jet z = Jet::variable(z0);
  const Jet f = (z * z - 1.0) / (z * z + 3.0);
  // f = 1 - 4/(z^2+3); f' = 8z/(z^2+3)^2
  const cplx d = z0 * z0 + 3.0;
  CHECK(std::abs(f.derivative(1) - 8.0 * z0 / (d * d)) < 1e-14);
  // f'' = 8/(d^2) - 32 z^2/d^3
  CHECK(std::abs(f.derivative(2) - (8.0 / (d * d) - 32.0 * z0 * z0 / (d * d * d))) < 1e-13);
}
