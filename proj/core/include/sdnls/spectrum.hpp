#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "sdnls/background.hpp"

namespace sdnls {

/// How user-supplied norming constants are interpreted.
///
/// Centered: the values describe the solution relative to the shift midpoint
/// (x0/2, t0/2) and are transported to the actual constants by the factor
/// exp(i theta0(z)).  Raw: the values are used verbatim.
enum class NormingFrame { Centered, Raw };

struct EigenvalueEntry {
  cplx xi;
  int order = 1;
  std::optional<cplx> b;
  std::optional<cplx> d;
  std::optional<cplx> h;
};

struct NormingData {
  cplx b{1.0, 0.0};
  cplx d{};
  cplx h{};
};

/// One element of the master list E[0 .. 2L).
struct SpectralPoint {
  cplx xi;
  cplx hat;
  int order = 1;
  NormingData norming;
  std::size_t entry = 0;  ///< index of the fundamental eigenvalue it derives from
  int parity = 1;         ///< +1 for xi, -1 for -xi
};

struct ThetaCondition {
  cplx exp2imbar;
  cplx mbar;
  cplx expimbar;
};

struct ResolvedEntry {
  cplx xi;
  int order = 1;
  NormingData norming;
};

class DiscreteSpectrum {
 public:
  const BackgroundParams& background() const noexcept { return bg_; }
  const std::vector<ResolvedEntry>& entries() const noexcept { return entries_; }
  const std::vector<SpectralPoint>& points() const noexcept { return points_; }

  int n1() const noexcept { return n_[0]; }
  int n2() const noexcept { return n_[1]; }
  int n3() const noexcept { return n_[2]; }
  int count(int order) const { return n_.at(static_cast<std::size_t>(order - 1)); }
  int L() const noexcept { return n_[0] + n_[1] + n_[2]; }
  int M() const noexcept { return 2 * n_[0] + 4 * n_[1] + 6 * n_[2]; }

  cplx exp2imbar() const noexcept { return theta_.exp2imbar; }
  cplx mbar() const noexcept { return theta_.mbar; }
  cplx expimbar() const noexcept { return theta_.expimbar; }

  /// Norming data at the hat point a / E[n] (validation only).
  NormingData hat_norming(std::size_t n) const;

  /// Multiplies b at master index n by factor (fault injection for tests).
  void scale_norming(std::size_t n, cplx factor);

 private:
  friend DiscreteSpectrum validate_spectrum(const BackgroundParams&, const std::vector<EigenvalueEntry>&,
                                            NormingFrame);

  BackgroundParams bg_;
  std::vector<ResolvedEntry> entries_;
  std::vector<SpectralPoint> points_;
  std::array<int, 3> n_{};
  ThetaCondition theta_{};
};

/// Builds the master list, completes the norming data and runs all invariant
/// checks.  Entries may appear in any order; they are grouped by pole order.
DiscreteSpectrum validate_spectrum(const BackgroundParams& bg, const std::vector<EigenvalueEntry>& entries,
                                   NormingFrame frame = NormingFrame::Centered);

ThetaCondition compute_mbar(const BackgroundParams& bg, const std::vector<EigenvalueEntry>& entries);

/// Default centered b: a square root of -sigma.
cplx default_centered_b(int sigma) noexcept;

/// Transports centered data by exp(i theta0) with the product rule for d and h.
NormingData transport_norming(const BackgroundParams& bg, cplx xi, const NormingData& centered);

/// Norming data at -xi implied by the z -> -z parity of the Jost solutions.
NormingData reflect_norming(const NormingData& at_xi) noexcept;

/// Hat-side data b(a/xi), d(a/xi), h(a/xi) from the z -> a/z relation.
NormingData hat_side_norming(const BackgroundParams& bg, cplx xi, const NormingData& at_xi) noexcept;

/// Minimum separation used for degeneracy detection, relative to q0.
inline constexpr double kDegeneracyTolerance = 1e-8;

}  // namespace sdnls
