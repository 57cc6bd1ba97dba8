#pragma once

#include <algorithm>
#include <cmath>

#include "sdnls/error.hpp"
#include "sdnls/jet.hpp"
#include "sdnls/spectrum.hpp"

namespace sdnls {

/// Reflectionless trace formulae for u11 and u22 over a fixed spectrum.
class TraceContext {
 public:
  explicit TraceContext(const DiscreteSpectrum& spectrum) : spectrum_(&spectrum) {}

  const DiscreteSpectrum& spectrum() const noexcept { return *spectrum_; }

  /// exp(i mbar) * prod ((z^2 - xi^2)/(z^2 - hat^2))^order over fundamental eigenvalues.
  template <class T>
  T u11(const T& z) const {
    return product(z, false) * spectrum_->expimbar();
  }

  /// The mirror product with xi and hat exchanged and exp(-i mbar).
  template <class T>
  T u22(const T& z) const {
    return product(z, true) / spectrum_->expimbar();
  }

 private:
  template <class T>
  T product(const T& z, bool inverted) const {
    const double a = spectrum_->background().a();
    const double scale = std::max(1.0, std::abs(value_of(z)) * std::abs(value_of(z)));
    T z2 = z * z;
    T result = z2 * 0.0 + 1.0;
    for (const auto& e : spectrum_->entries()) {
      const cplx xi2 = e.xi * e.xi;
      const cplx hat = a / e.xi;
      const cplx hat2 = hat * hat;
      const cplx pole = inverted ? xi2 : hat2;
      const cplx zero = inverted ? hat2 : xi2;
      if (std::abs(value_of(z2) - pole) <= 1e-14 * scale) {
        throw Error(Errc::PoleOfTraceFormula, "trace formula evaluated at one of its poles");
      }
      T factor = (z2 - zero) / (z2 - pole);
      for (int k = 0; k < e.order; ++k) result *= factor;
    }
    return result;
  }

  const DiscreteSpectrum* spectrum_;
};

}  // namespace sdnls
