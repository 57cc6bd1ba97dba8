#pragma once

#include <utility>

#include "sdnls/background.hpp"
#include "sdnls/error.hpp"
#include "sdnls/jet.hpp"

namespace sdnls {

/// Uniformization map and phase functions for a fixed background.
///
/// All member templates accept either a plain complex number or a Jet; with a
/// jet the result carries z-derivatives at fixed (x, t).
class PhaseContext {
 public:
  explicit PhaseContext(const BackgroundParams& bg) : a_(bg.a()), x0_(bg.x0), t0_(bg.t0) {}
  PhaseContext(double a, double x0, double t0) : a_(a), x0_(x0), t0_(t0) {}

  double a() const noexcept { return a_; }
  double x0() const noexcept { return x0_; }
  double t0() const noexcept { return t0_; }

  /// (k, lambda) with k = (z - a/z)/2 and lambda = (z + a/z)/2.
  template <class T>
  std::pair<T, T> k_lambda(const T& z) const {
    require_nonzero(z);
    T az = a_ / z;
    return {0.5 * (z - az), 0.5 * (z + az)};
  }

  /// k(z) * lambda(z) = (z^2 - a^2/z^2)/4.
  template <class T>
  T k_times_lambda(const T& z) const {
    require_nonzero(z);
    T z2 = z * z;
    return 0.25 * (z2 - (a_ * a_) / z2);
  }

  /// Velocity factor 2 lambda^2 + a = (z^2 + a^2/z^2)/2 + 2a.
  template <class T>
  T dispersion(const T& z) const {
    require_nonzero(z);
    T z2 = z * z;
    return 0.5 * (z2 + (a_ * a_) / z2) + 2.0 * a_;
  }

  template <class T>
  T theta(const T& z, double x, double t) const {
    return k_times_lambda(z) * (x + dispersion(z) * t);
  }

  /// The phase written literally as k * lambda * (x + (2 lambda^2 + a) t).
  template <class T>
  T theta_literal(const T& z, double x, double t) const {
    auto [k, l] = k_lambda(z);
    return k * l * (x + (2.0 * l * l + a_) * t);
  }

  template <class T>
  T theta0(const T& z) const {
    return theta(z, x0_, t0_);
  }

 private:
  static void require_nonzero(cplx z) {
    if (z == cplx(0.0)) throw Error(Errc::EvaluationAtZero, "phase evaluated at z = 0");
  }
  static void require_nonzero(const Jet& z) { require_nonzero(z.value()); }

  double a_;
  double x0_;
  double t0_;
};

}  // namespace sdnls
