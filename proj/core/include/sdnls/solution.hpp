#pragma once

#include <span>
#include <vector>

#include "sdnls/linear_system.hpp"
#include "sdnls/pole_coefficients.hpp"
#include "sdnls/spectrum.hpp"

namespace sdnls {

struct SolverOptions {
  /// Absolute error target for the gauge integral, per unit length of the path.
  double quad_tol = 1e-12;
  /// Target size of the exponential tail dropped left of the cut.
  double tail_tol = 1e-12;
  /// Width of the fixed lattice of quadrature panels.
  double panel_width = 1.0;
  /// Maximum bisection depth inside one panel.
  int max_depth = 14;
  /// Rescale exponential carriers before solving.
  bool rescale = true;
  ColumnBasis basis = ColumnBasis::Reduced;
};

struct SolutionSample {
  double x = 0.0;
  double t = 0.0;
  cplx P{};
  cplx m_minus{};
  cplx gauge{};
  cplx q{};
  double cond = 0.0;
  bool singular = false;
};

struct GridSpec {
  double x_min = -40.0;
  double x_max = 40.0;
  int nx = 201;
  double t_min = -25.0;
  double t_max = 25.0;
  int nt = 101;

  double x_at(int i) const noexcept;
  double t_at(int j) const noexcept;
  void validate() const;
};

/// Reflectionless potential q(x,t) = exp(2 i m_-(x,t)) P(x,t) for a fixed spectrum.
class Solution {
 public:
  explicit Solution(DiscreteSpectrum spectrum, SolverOptions options = {});

  const DiscreteSpectrum& spectrum() const noexcept { return spectrum_; }
  const BackgroundParams& background() const noexcept { return spectrum_.background(); }
  const SolverOptions& options() const noexcept { return options_; }
  const PoleTable& pole_table() const noexcept { return table_; }

  LinearSystem system(double x, double t) const;

  /// Throws Error(SingularG) at singular points.
  BarePotential bare(double x, double t) const;

  /// sigma exp(2 i mbar) P(y,t) P(x0-y, t0-t) - a, the density of 2 m_-.
  cplx gauge_integrand(double y, double t) const;

  /// Left end of the gauge integral on the row t for samples at or beyond x_hint.
  double left_cut(double t, double x_hint) const;

  /// Integral of gauge_integrand over [lo, hi] on row t.
  cplx integrate(double t, double lo, double hi) const;

  /// m_-(x,t) by a single quadrature from the left cut.
  cplx m_minus(double x, double t) const;

  SolutionSample evaluate(double x, double t) const;

  /// Samples at ascending xs on row t with one cumulative sweep of the gauge integral.
  std::vector<SolutionSample> evaluate_row(double t, std::span<const double> xs) const;

  /// Row-major samples (t outer, x inner).  Rows are split among workers threads.
  std::vector<SolutionSample> evaluate_grid(const GridSpec& grid, unsigned workers = 1) const;

  /// Rough location of each master eigenvalue's exponential front on row t.
  std::vector<double> soliton_centers(double t) const;

 private:
  cplx panel(double t, double lo, double hi, int depth, double tol) const;

  DiscreteSpectrum spectrum_;
  SolverOptions options_;
  PoleTable table_;
  cplx gauge_factor_;
};

}  // namespace sdnls
