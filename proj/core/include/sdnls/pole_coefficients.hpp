#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "sdnls/phase.hpp"
#include "sdnls/spectrum.hpp"
#include "sdnls/trace.hpp"

namespace sdnls {

/// Laurent data of the residue condition at one master-list eigenvalue.
///
/// Order 1 uses A; order 2 uses B and C; order 3 uses D, E and F.  When
/// log_scale is positive the exponential carriers A, B, D have been multiplied
/// by exp(-log_scale).
struct PoleCoefficients {
  int order = 1;
  cplx A{}, B{}, C{}, D{}, E{}, F{};
  double log_scale = 0.0;
};

/// theta, theta' and theta'' in z at one eigenvalue and one (x, t).
struct ThetaDerivatives {
  cplx value, d1, d2;
};

/// Per-spectrum cache of the (x,t)-independent parts of the pole coefficients.
class PoleTable {
 public:
  explicit PoleTable(const DiscreteSpectrum& spectrum);

  std::size_t size() const noexcept { return entries_.size(); }

  /// u11^(k)(E[n]) for k = 0..5.
  const std::array<cplx, 6>& u11_derivatives(std::size_t n) const { return entries_.at(n).u; }

  ThetaDerivatives theta(std::size_t n, double x, double t) const;

  /// Coefficients at E[n] and (x, t).  With rescale set, the common
  /// exponential magnitude exp(2 Im theta) is divided out whenever it exceeds one.
  PoleCoefficients coeffs(std::size_t n, double x, double t, bool rescale = false) const;

  /// Position on row t where the residue carrier of E[n] has unit modulus.
  double front(std::size_t n, double t) const;

  /// Spatial decay rate of the carrier, 2 Im(k lambda) at E[n].
  double decay_rate(std::size_t n) const { return 2.0 * entries_.at(n).kl[0].imag(); }

 private:
  struct Entry {
    int order = 1;
    NormingData norming;
    std::array<cplx, 6> u{};
    std::array<cplx, 3> kl{};   // k*lambda and two z-derivatives
    std::array<cplx, 3> klw{};  // k*lambda*(2 lambda^2 + a) and two z-derivatives
  };
  std::vector<Entry> entries_;
};

/// Convenience wrapper computing the coefficients exactly as printed.
PoleCoefficients coeffs_at(const DiscreteSpectrum& spectrum, const TraceContext& tc, const PhaseContext& ctx,
                           std::size_t n, double x, double t);

/// Threshold below which the leading u11 derivative counts as vanishing.
inline constexpr double kVanishingDerivative = 1e-12;

}  // namespace sdnls
