#pragma once

#include <complex>

namespace sdnls {

using cplx = std::complex<double>;

/// Constant backgrounds q(x,t) -> q_minus (x -> -inf) and q_plus (x -> +inf)
/// together with the reduction signs and the space-time shift.
struct BackgroundParams {
  int sigma = -1;
  int eta = 1;
  cplx q_minus{1.0, 0.0};
  double x0 = 0.0;
  double t0 = 0.0;

  double q0() const noexcept { return std::abs(q_minus); }
  cplx q_plus() const noexcept { return static_cast<double>(eta) * std::conj(q_minus); }
  /// Uniformization constant sigma * eta * q0^2.
  double a() const noexcept { return sigma * eta * q0() * q0(); }

  /// Throws Error(InvalidBackground) when the signs or the amplitude are not admissible.
  void validate() const;
};

}  // namespace sdnls
