#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "sdnls/pole_coefficients.hpp"
#include "sdnls/spectrum.hpp"

namespace sdnls {

/// The block system G nu = -H at one (x, t) together with the row Y that
/// turns the solution into the bare potential.
///
/// Unknown j is the derivative of order col_level[j] of nu_{-,12} at the
/// master eigenvalue col_eig[j]; equation i is the derivative of order
/// row_level[i] of the first-column relation evaluated at the hat point of
/// row_eig[i].
struct LinearSystem {
  int M = 0;
  Eigen::MatrixXcd G;
  Eigen::RowVectorXcd Y;
  Eigen::VectorXcd H;
  std::vector<std::size_t> col_eig;
  std::vector<int> col_level;
  std::vector<std::size_t> row_eig;
  std::vector<int> row_level;
};

/// Column and row index maps for a spectrum with counts (N1, N2, N3).
void index_maps(const DiscreteSpectrum& spectrum, std::vector<std::size_t>& col_eig, std::vector<int>& col_level,
                std::vector<std::size_t>& row_eig, std::vector<int>& row_level);

/// Basis of the unknowns.  Printed uses the derivatives of nu_{-,12}
/// directly; Reduced applies, per pole block, the unit-triangular change of
/// unknowns under which every column carries a single pole term.  Y G^{-1} H
/// is the same in both bases.
enum class ColumnBasis { Printed, Reduced };

/// Fills G, Y and H.  With rescale set, every column tied to an eigenvalue is
/// multiplied by the positive factor that keeps its exponential carrier at
/// most one in modulus; the bare potential is invariant under this scaling.
LinearSystem assemble_system(const DiscreteSpectrum& spectrum, const PoleTable& table, double x, double t,
                             bool rescale = false, ColumnBasis basis = ColumnBasis::Printed);

struct BarePotential {
  cplx P;
  double cond = 1.0;
};

/// Condition number above which G is reported as singular.
inline constexpr double kSingularCondition = 1e14;

/// P = q_minus * (1 - Y G^{-1} H) through one LU factorization.
/// Throws Error(SingularG) when the condition estimate exceeds kSingularCondition.
BarePotential bare_potential(const LinearSystem& sys, cplx q_minus);

}  // namespace sdnls
