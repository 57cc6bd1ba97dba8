#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sdnls/solution.hpp"

namespace sdnls {

/// Point evaluator q(x, t); throws Error(SingularG) at singular points.
using PointEvaluator = std::function<cplx(double x, double t)>;

/// Evaluator backed by Solution::evaluate.
PointEvaluator point_evaluator(const Solution& solution);

/// R = D_t q - i D_xx q - sigma D_x[q(x,t)^2 q(x0-x, t0-t)] with central differences of step h.
/// Throws Error(StencilHitSingularity) when any stencil point is singular.
cplx pde_residual(const PointEvaluator& q, const BackgroundParams& bg, double x, double t, double h);

/// Residuals at steps h and h/2 at one point, computed with shared row sweeps.
struct ResidualPair {
  double x = 0.0;
  double t = 0.0;
  cplx coarse;
  cplx fine;
};

/// Same stencil as pde_residual, evaluated through Solution::evaluate_row so
/// that each time row costs one gauge sweep.
ResidualPair residual_pair(const Solution& solution, double x, double t, double h);

struct ResidualReport {
  std::vector<ResidualPair> samples;
  double h = 1e-3;
  double max_abs_residual = 0.0;
  /// log2 of the ratio of the root-mean-square residuals at h and h/2.
  double richardson_order = 0.0;
  int skipped_singular = 0;
  double seconds = 0.0;
};

struct ResidualSurveyOptions {
  int points = 100;
  double h = 1e-3;
  /// Fraction of each grid extent excluded at both ends.
  double margin = 0.1;
  std::uint64_t seed = 20240601;
  unsigned workers = 1;
  /// Attempts allowed per requested point before giving up on singular regions.
  int max_attempts_factor = 5;
};

/// Samples uniformly distributed interior points of the grid and measures the residual.
ResidualReport residual_survey(const Solution& solution, const GridSpec& region, const ResidualSurveyOptions& opts);

struct BoundaryReport {
  double t = 0.0;
  double x_minus = 0.0;
  double x_plus = 0.0;
  cplx q_minus_far;
  cplx q_plus_far;
  double err_minus = 0.0;
  double err_plus = 0.0;
  /// Distance of m_-(x_plus) from mbar + k pi, the limit that the theta
  /// condition predicts; k is reported as mbar_branch.
  double err_mbar = 0.0;
  long mbar_branch = 0;
};

/// Picks far-field abscissae from the soliton fronts and compares q with q_minus and q_plus.
/// Throws Error(NoDecayDetected) when q does not settle to a constant.
BoundaryReport boundary_check(const Solution& solution, double t, double tol = 1e-6);

struct TraceZeroEntry {
  cplx xi;
  int order = 1;
  double max_below_relative = 0.0;
  double leading = 0.0;
  bool pass = false;
};

struct TraceZeroReport {
  std::vector<TraceZeroEntry> entries;
  bool pass = true;
};

/// Checks that u11 vanishes to exactly the declared order at every master eigenvalue.
TraceZeroReport trace_zero_check(const DiscreteSpectrum& spectrum, double rel_tol = 1e-10, double abs_floor = 1e-8);

/// Bare potential from an independent dense construction: the relation is
/// differentiated with jets at each hat point, the carriers are not rescaled,
/// the printed column basis is used and the system is solved by full-pivot LU.
cplx oracle_bare_potential(const DiscreteSpectrum& spectrum, double x, double t);

/// Y G^{-1} H as -det([0 Y; H G]) / det(G) with determinants by full-pivot elimination.
cplx determinant_ratio(const Eigen::MatrixXcd& G, const Eigen::RowVectorXcd& Y, const Eigen::VectorXcd& H);

/// Y G^{-1} H through the partial-pivot factorization used in production.
cplx schur_ratio(const Eigen::MatrixXcd& G, const Eigen::RowVectorXcd& Y, const Eigen::VectorXcd& H);

struct IdentityCheck {
  std::string name;
  double error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool pass = true;
  void add(std::string name, double error, double tolerance, std::string detail = {});
};

/// Splits value - mbar into k pi plus a remainder and returns (|remainder|, k).
/// The theta condition fixes mbar only modulo pi.
std::pair<double, long> mbar_offset(cplx value, cplx mbar);

struct IdentityOptions {
  int sum_rule_points = 20;
  int oracle_points = 5;
  int schur_trials = 100;
  std::uint64_t seed = 7;
  /// Region sampled by the sum rule and the oracle.
  GridSpec region;
};

/// Gauge sum rule, norming relations, trace identities, Schur versus
/// determinants and the dense-solve oracle.
IdentityReport identity_suite(const Solution& solution, const IdentityOptions& opts);

/// Multiplies b at the first reflected master point -xi by (1 + fraction).
/// Returns false when the spectrum is empty.
bool inject_norming_fault(DiscreteSpectrum& spectrum, double fraction = 0.01);

}  // namespace sdnls
