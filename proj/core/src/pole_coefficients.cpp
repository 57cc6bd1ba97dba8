#include "sdnls/pole_coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdnls/error.hpp"

namespace sdnls {

namespace {

const cplx kI(0.0, 1.0);

PoleCoefficients combine(int order, const NormingData& nd, const std::array<cplx, 6>& u, const ThetaDerivatives& th,
                         double log_scale) {
  PoleCoefficients pc;
  pc.order = order;
  pc.log_scale = log_scale;
  const cplx carrier = nd.b * std::exp(-2.0 * kI * th.value - log_scale);
  switch (order) {
    case 1:
      pc.A = carrier / u[1];
      break;
    case 2:
      pc.B = 2.0 * carrier / u[2];
      pc.C = nd.d / nd.b - 2.0 * kI * th.d1 - u[3] / (3.0 * u[2]);
      break;
    default:
      pc.D = 6.0 * carrier / u[3];
      pc.E = nd.d / nd.b - 2.0 * kI * th.d1 - u[4] / (4.0 * u[3]);
      pc.F = nd.h / (2.0 * nd.b) - nd.d * u[4] / (4.0 * nd.b * u[3]) + u[4] * u[4] / (16.0 * u[3] * u[3]) -
             u[5] / (20.0 * u[3]) + 2.0 * th.d1 * th.d1 - kI * th.d2 - 2.0 * kI * th.d1 * pc.E;
      break;
  }
  return pc;
}

}  // namespace

PoleTable::PoleTable(const DiscreteSpectrum& spectrum) {
  const TraceContext tc(spectrum);
  const PhaseContext phase(spectrum.background());
  for (const auto& p : spectrum.points()) {
    Entry e;
    e.order = p.order;
    e.norming = p.norming;
    const Jet z = Jet::variable(p.xi);
    const Jet u = tc.u11(z);
    for (int k = 0; k <= 5; ++k) e.u[static_cast<std::size_t>(k)] = u.derivative(k);
    const double lead = std::abs(e.u[static_cast<std::size_t>(p.order)]);
    if (!(lead >= kVanishingDerivative)) {
      throw Error(Errc::VanishingLeadingDerivative,
                  "u11 derivative of order " + std::to_string(p.order) + " vanishes at an eigenvalue");
    }
    const Jet kl = phase.k_times_lambda(z);
    const Jet klw = kl * phase.dispersion(z);
    for (int k = 0; k < 3; ++k) {
      e.kl[static_cast<std::size_t>(k)] = kl.derivative(k);
      e.klw[static_cast<std::size_t>(k)] = klw.derivative(k);
    }
    entries_.push_back(e);
  }
}

ThetaDerivatives PoleTable::theta(std::size_t n, double x, double t) const {
  const auto& e = entries_.at(n);
  return {e.kl[0] * x + e.klw[0] * t, e.kl[1] * x + e.klw[1] * t, e.kl[2] * x + e.klw[2] * t};
}

PoleCoefficients PoleTable::coeffs(std::size_t n, double x, double t, bool rescale) const {
  const auto& e = entries_.at(n);
  const ThetaDerivatives th = theta(n, x, t);
  const double log_scale = rescale ? std::max(0.0, 2.0 * th.value.imag()) : 0.0;
  return combine(e.order, e.norming, e.u, th, log_scale);
}

double PoleTable::front(std::size_t n, double t) const {
  const auto& e = entries_.at(n);
  const double lead = std::abs(e.norming.b / e.u[static_cast<std::size_t>(e.order)]);
  return -(e.klw[0].imag() * t + 0.5 * std::log(lead)) / e.kl[0].imag();
}

PoleCoefficients coeffs_at(const DiscreteSpectrum& spectrum, const TraceContext& tc, const PhaseContext& ctx,
                           std::size_t n, double x, double t) {
  const auto& p = spectrum.points().at(n);
  const Jet z = Jet::variable(p.xi);
  const Jet u = tc.u11(z);
  std::array<cplx, 6> ud{};
  for (int k = 0; k <= 5; ++k) ud[static_cast<std::size_t>(k)] = u.derivative(k);
  if (!(std::abs(ud[static_cast<std::size_t>(p.order)]) >= kVanishingDerivative)) {
    throw Error(Errc::VanishingLeadingDerivative, "leading u11 derivative vanishes");
  }
  const Jet th = ctx.theta(z, x, t);
  return combine(p.order, p.norming, ud, {th.value(), th.derivative(1), th.derivative(2)}, 0.0);
}

}  // namespace sdnls
