#include "sdnls/linear_system.hpp"

#include <array>
#include <cmath>
#include <string>

#include "sdnls/error.hpp"

namespace sdnls {

namespace {

const cplx kI(0.0, 1.0);

/// Laurent coefficients c_p of (z - xi)^{-p}, p = 1..3, contributed by one unknown.
std::array<cplx, 4> laurent_terms(const PoleCoefficients& pc, int level, ColumnBasis basis) {
  std::array<cplx, 4> c{};
  const bool reduced = basis == ColumnBasis::Reduced;
  switch (pc.order) {
    case 1:
      c[1] = pc.A;
      break;
    case 2:
      if (level == 0) {
        c[2] = pc.B;
        if (!reduced) c[1] = pc.B * pc.C;
      } else {
        c[1] = pc.B;
      }
      break;
    default:
      if (level == 0) {
        c[3] = pc.D;
        if (!reduced) {
          c[2] = pc.D * pc.E;
          c[1] = pc.D * pc.F;
        }
      } else if (level == 1) {
        c[2] = pc.D;
        if (!reduced) c[1] = pc.D * pc.E;
      } else {
        c[1] = 0.5 * pc.D;
      }
      break;
  }
  return c;
}

/// r-th derivative of (z - xi)^{-p} at z = xi + w.
cplx pole_derivative(int p, int r, cplx w) {
  double coef = 1.0;
  for (int q = 0; q < r; ++q) coef *= -static_cast<double>(p + q);
  return coef / std::pow(w, p + r);
}

/// Coefficient of the unknown of level l in the r-th derivative of
/// -(i q_minus / z) nu_{-,12}(a / z) at z = hat.
cplx closure_term(int r, int l, cplx hat, cplx q_minus, double a) {
  const cplx cl = -kI * q_minus;
  switch (r) {
    case 0:
      return l == 0 ? cl / hat : cplx{};
    case 1:
      if (l == 0) return -cl / (hat * hat);
      if (l == 1) return -cl * a / std::pow(hat, 3);
      return {};
    default:
      if (l == 0) return 2.0 * cl / std::pow(hat, 3);
      if (l == 1) return 4.0 * cl * a / std::pow(hat, 4);
      return cl * a * a / std::pow(hat, 5);
  }
}

/// Closure coefficient of the unknown of level l after the change of basis
/// that removes the lower Laurent terms of each pole block.
cplx basis_closure(int r, int l, const PoleCoefficients& pc, cplx hat, cplx q_minus, double a, ColumnBasis basis) {
  const cplx c = closure_term(r, l, hat, q_minus, a);
  if (basis == ColumnBasis::Printed) return c;
  if (pc.order == 2 && l == 0) return c - pc.C * closure_term(r, 1, hat, q_minus, a);
  if (pc.order == 3 && l == 0) {
    return c - pc.E * closure_term(r, 1, hat, q_minus, a) -
           2.0 * (pc.F - pc.E * pc.E) * closure_term(r, 2, hat, q_minus, a);
  }
  if (pc.order == 3 && l == 1) return c - 2.0 * pc.E * closure_term(r, 2, hat, q_minus, a);
  return c;
}

}  // namespace

void index_maps(const DiscreteSpectrum& spectrum, std::vector<std::size_t>& col_eig, std::vector<int>& col_level,
                std::vector<std::size_t>& row_eig, std::vector<int>& row_level) {
  const std::size_t n1 = static_cast<std::size_t>(spectrum.n1());
  const std::size_t n2 = static_cast<std::size_t>(spectrum.n2());
  const std::size_t n3 = static_cast<std::size_t>(spectrum.n3());
  const std::size_t twoL = 2 * (n1 + n2 + n3);
  col_eig.clear();
  col_level.clear();
  row_eig.clear();
  row_level.clear();

  for (std::size_t n = 0; n < 2 * n1 + 2 * n2; ++n) {
    col_eig.push_back(n);
    col_level.push_back(0);
  }
  for (std::size_t j = 0; j < 2 * n2; ++j) {
    col_eig.push_back(2 * n1 + j);
    col_level.push_back(1);
  }
  for (int level = 0; level < 3; ++level) {
    for (std::size_t j = 0; j < 2 * n3; ++j) {
      col_eig.push_back(2 * n1 + 2 * n2 + j);
      col_level.push_back(level);
    }
  }

  for (std::size_t k = 0; k < twoL; ++k) {
    row_eig.push_back(k);
    row_level.push_back(0);
  }
  for (std::size_t j = 0; j < 2 * n2 + 2 * n3; ++j) {
    row_eig.push_back(2 * n1 + j);
    row_level.push_back(1);
  }
  for (std::size_t j = 0; j < 2 * n3; ++j) {
    row_eig.push_back(2 * n1 + 2 * n2 + j);
    row_level.push_back(2);
  }
}

LinearSystem assemble_system(const DiscreteSpectrum& spectrum, const PoleTable& table, double x, double t,
                             bool rescale, ColumnBasis basis) {
  LinearSystem sys;
  sys.M = spectrum.M();
  index_maps(spectrum, sys.col_eig, sys.col_level, sys.row_eig, sys.row_level);
  const int M = sys.M;
  sys.G.resize(M, M);
  sys.Y.resize(M);
  sys.H.resize(M);
  if (M == 0) return sys;

  const auto& points = spectrum.points();
  const cplx q_minus = spectrum.background().q_minus;
  const double a = spectrum.background().a();

  std::vector<PoleCoefficients> coeffs;
  coeffs.reserve(points.size());
  for (std::size_t n = 0; n < points.size(); ++n) coeffs.push_back(table.coeffs(n, x, t, rescale));

  std::vector<std::array<cplx, 4>> terms(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    terms[ju] = laurent_terms(coeffs[sys.col_eig[ju]], sys.col_level[ju], basis);
    sys.Y(j) = terms[ju][1];
  }

  for (int i = 0; i < M; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const std::size_t k = sys.row_eig[iu];
    const int r = sys.row_level[iu];
    const cplx hat = points[k].hat;
    const double row_sign = r == 1 ? -1.0 : 1.0;
    for (int j = 0; j < M; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const std::size_t n = sys.col_eig[ju];
      const cplx w = hat - points[n].xi;
      cplx v = 0.0;
      for (int p = 1; p <= 3; ++p) {
        if (terms[ju][static_cast<std::size_t>(p)] != cplx(0.0)) {
          v += terms[ju][static_cast<std::size_t>(p)] * pole_derivative(p, r, w);
        }
      }
      if (n == k) {
        v -= basis_closure(r, sys.col_level[ju], coeffs[n], hat, q_minus, a, basis) * std::exp(-coeffs[n].log_scale);
      }
      sys.G(i, j) = row_sign * v;
    }
    switch (r) {
      case 0: sys.H(i) = 1.0 / hat; break;
      case 1: sys.H(i) = 1.0 / (hat * hat); break;
      default: sys.H(i) = 2.0 / std::pow(hat, 3); break;
    }
  }
  return sys;
}

BarePotential bare_potential(const LinearSystem& sys, cplx q_minus) {
  if (sys.M == 0) return {q_minus, 1.0};
  Eigen::VectorXd row_scale(sys.M);
  for (int i = 0; i < sys.M; ++i) {
    const double m = sys.G.row(i).cwiseAbs().maxCoeff();
    row_scale(i) = m > 0.0 && std::isfinite(m) ? 1.0 / m : 1.0;
  }
  Eigen::MatrixXcd Gs = row_scale.asDiagonal() * sys.G;
  Eigen::VectorXd col_scale(sys.M);
  for (int j = 0; j < sys.M; ++j) {
    const double m = Gs.col(j).cwiseAbs().maxCoeff();
    col_scale(j) = m > 0.0 && std::isfinite(m) ? 1.0 / m : 1.0;
  }
  Gs = Gs * col_scale.asDiagonal();
  const Eigen::VectorXcd Hs = row_scale.cast<cplx>().cwiseProduct(sys.H);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(Gs);
  const double rcond = lu.rcond();
  const double cond = rcond > 0.0 ? 1.0 / rcond : INFINITY;
  if (!std::isfinite(cond) || cond > kSingularCondition) {
    throw Error(Errc::SingularG, "condition estimate " + std::to_string(cond));
  }
  const Eigen::VectorXcd sol = lu.solve(Hs);
  const cplx yg = (sys.Y * col_scale.asDiagonal()) * sol;
  const cplx P = q_minus * (1.0 - yg);
  if (!std::isfinite(P.real()) || !std::isfinite(P.imag())) {
    throw Error(Errc::SingularG, "non-finite bare potential");
  }
  return {P, cond};
}

}  // namespace sdnls
