#include "sdnls/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdnls/error.hpp"
#include "sdnls/phase.hpp"

namespace sdnls {

namespace {

const cplx kI(0.0, 1.0);

std::string describe(cplx z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

void check_entry(const EigenvalueEntry& e) {
  if (e.order < 1 || e.order > 3) {
    throw Error(Errc::InvalidOrder, "pole order " + std::to_string(e.order) + " at xi = " + describe(e.xi));
  }
  if (!std::isfinite(e.xi.real()) || !std::isfinite(e.xi.imag()) || !(e.xi.real() > 0.0) ||
      !(e.xi.imag() > 0.0)) {
    throw Error(Errc::NotFirstQuadrant, "xi = " + describe(e.xi) + " is not in the open first quadrant");
  }
  if (e.b && *e.b == cplx(0.0)) {
    throw Error(Errc::ZeroNormingConstant, "b = 0 at xi = " + describe(e.xi));
  }
}

}  // namespace

cplx default_centered_b(int sigma) noexcept { return sigma < 0 ? cplx(1.0, 0.0) : kI; }

NormingData transport_norming(const BackgroundParams& bg, cplx xi, const NormingData& c) {
  const PhaseContext phase(bg);
  const Jet th = phase.theta0(Jet::variable(xi));
  const cplx e = std::exp(kI * th.value());
  const cplx t1 = th.derivative(1);
  const cplx t2 = th.derivative(2);
  NormingData out;
  out.b = c.b * e;
  out.d = (c.d + kI * t1 * c.b) * e;
  out.h = (c.h + 2.0 * kI * t1 * c.d + (kI * t2 - t1 * t1) * c.b) * e;
  return out;
}

NormingData reflect_norming(const NormingData& at_xi) noexcept { return {-at_xi.b, at_xi.d, -at_xi.h}; }

NormingData hat_side_norming(const BackgroundParams& bg, cplx xi, const NormingData& at_xi) noexcept {
  const double q0sq = bg.q0() * bg.q0();
  const double sigma = bg.sigma;
  const double eta = bg.eta;
  const cplx hat = bg.a() / xi;
  NormingData out;
  out.b = -sigma / at_xi.b;
  out.d = xi * xi / (eta * q0sq) * at_xi.d;
  out.h = (-sigma * q0sq * q0sq) / std::pow(hat, 4) * at_xi.h - (2.0 * eta * q0sq) / std::pow(hat, 3) * at_xi.d;
  return out;
}

ThetaCondition compute_mbar(const BackgroundParams& bg, const std::vector<EigenvalueEntry>& entries) {
  const double a = bg.a();
  cplx product = bg.q_plus() / bg.q_minus;
  for (const auto& e : entries) {
    const cplx ratio = (a / e.xi) / e.xi;
    product *= std::pow(ratio, 2 * e.order);
  }
  ThetaCondition tc;
  tc.exp2imbar = product;
  tc.mbar = std::log(product) / (2.0 * kI);
  tc.expimbar = std::sqrt(product);
  return tc;
}

DiscreteSpectrum validate_spectrum(const BackgroundParams& bg, const std::vector<EigenvalueEntry>& entries,
                                   NormingFrame frame) {
  bg.validate();
  for (const auto& e : entries) check_entry(e);

  DiscreteSpectrum s;
  s.bg_ = bg;

  std::vector<EigenvalueEntry> sorted = entries;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const EigenvalueEntry& l, const EigenvalueEntry& r) { return l.order < r.order; });

  for (const auto& e : sorted) {
    NormingData given;
    given.b = e.b.value_or(frame == NormingFrame::Centered ? default_centered_b(bg.sigma) : cplx(1.0));
    given.d = e.order >= 2 ? e.d.value_or(cplx{}) : cplx{};
    given.h = e.order >= 3 ? e.h.value_or(cplx{}) : cplx{};
    ResolvedEntry r;
    r.xi = e.xi;
    r.order = e.order;
    r.norming = frame == NormingFrame::Centered ? transport_norming(bg, e.xi, given) : given;
    s.entries_.push_back(r);
    s.n_[static_cast<std::size_t>(e.order - 1)] += 1;
  }

  const double a = bg.a();
  for (int order = 1; order <= 3; ++order) {
    for (int parity : {1, -1}) {
      for (std::size_t i = 0; i < s.entries_.size(); ++i) {
        const auto& r = s.entries_[i];
        if (r.order != order) continue;
        SpectralPoint p;
        p.xi = static_cast<double>(parity) * r.xi;
        p.hat = a / p.xi;
        p.order = order;
        p.norming = parity > 0 ? r.norming : reflect_norming(r.norming);
        p.entry = i;
        p.parity = parity;
        s.points_.push_back(p);
      }
    }
  }

  std::vector<cplx> all;
  for (const auto& p : s.points_) {
    all.push_back(p.xi);
    all.push_back(p.hat);
  }
  const double tol = kDegeneracyTolerance * bg.q0();
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (std::abs(all[i] - all[j]) < tol) {
        throw Error(Errc::DegenerateSpectrum,
                    "spectral points " + describe(all[i]) + " and " + describe(all[j]) + " collide");
      }
    }
  }

  s.theta_ = compute_mbar(bg, sorted);
  return s;
}

NormingData DiscreteSpectrum::hat_norming(std::size_t n) const {
  const auto& p = points_.at(n);
  return hat_side_norming(bg_, p.xi, p.norming);
}

void DiscreteSpectrum::scale_norming(std::size_t n, cplx factor) { points_.at(n).norming.b *= factor; }

}  // namespace sdnls
