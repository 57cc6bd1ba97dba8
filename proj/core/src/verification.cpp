#include "sdnls/verification.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <optional>
#include <random>
#include <thread>
#include <tuple>

#include "sdnls/error.hpp"
#include "sdnls/phase.hpp"
#include "sdnls/trace.hpp"

namespace sdnls {

namespace {

const cplx kI(0.0, 1.0);
constexpr double kPi = 3.14159265358979323846;

std::vector<SolutionSample> checked_row(const Solution& s, double t, std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  auto row = s.evaluate_row(t, xs);
  for (const auto& p : row) {
    if (p.singular) {
      throw Error(Errc::StencilHitSingularity,
                  "stencil point (" + std::to_string(p.x) + ", " + std::to_string(p.t) + ") is singular");
    }
  }
  return row;
}

cplx at(const std::vector<SolutionSample>& row, double x) {
  for (const auto& p : row) {
    if (p.x == x) return p.q;
  }
  throw Error(Errc::InvalidConfig, "stencil abscissa missing from row");
}

cplx stencil(cplx q, cplx qxp, cplx qxm, cplx qtp, cplx qtm, cplx rp, cplx rm, int sigma, double h) {
  const cplx qt = (qtp - qtm) / (2.0 * h);
  const cplx qxx = (qxp - 2.0 * q + qxm) / (h * h);
  const cplx gp = qxp * qxp * rp;
  const cplx gm = qxm * qxm * rm;
  return qt - kI * qxx - static_cast<double>(sigma) * (gp - gm) / (2.0 * h);
}

/// Determinant by Gaussian elimination with complete pivoting.
cplx det_full_pivot(Eigen::MatrixXcd m) {
  const Eigen::Index n = m.rows();
  cplx det = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pr = k;
    Eigen::Index pc = k;
    double best = -1.0;
    for (Eigen::Index i = k; i < n; ++i) {
      for (Eigen::Index j = k; j < n; ++j) {
        if (std::abs(m(i, j)) > best) {
          best = std::abs(m(i, j));
          pr = i;
          pc = j;
        }
      }
    }
    if (best == 0.0) return 0.0;
    if (pr != k) {
      m.row(pr).swap(m.row(k));
      det = -det;
    }
    if (pc != k) {
      m.col(pc).swap(m.col(k));
      det = -det;
    }
    det *= m(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const cplx f = m(i, k) / m(k, k);
      for (Eigen::Index j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

/// Laurent coefficients of an unknown's column, as printed.
std::array<cplx, 4> printed_laurent(const PoleCoefficients& pc, int level) {
  std::array<cplx, 4> c{};
  if (pc.order == 1) {
    c[1] = pc.A;
  } else if (pc.order == 2) {
    if (level == 0) {
      c[2] = pc.B;
      c[1] = pc.B * pc.C;
    } else {
      c[1] = pc.B;
    }
  } else if (level == 0) {
    c[3] = pc.D;
    c[2] = pc.D * pc.E;
    c[1] = pc.D * pc.F;
  } else if (level == 1) {
    c[2] = pc.D;
    c[1] = pc.D * pc.E;
  } else {
    c[1] = 0.5 * pc.D;
  }
  return c;
}

double relative(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

PointEvaluator point_evaluator(const Solution& solution) {
  return [&solution](double x, double t) {
    const SolutionSample s = solution.evaluate(x, t);
    if (s.singular) throw Error(Errc::SingularG, "singular sample");
    return s.q;
  };
}

cplx pde_residual(const PointEvaluator& q, const BackgroundParams& bg, double x, double t, double h) {
  if (!(h > 0.0)) throw Error(Errc::InvalidConfig, "stencil step must be positive");
  auto eval = [&](double xx, double tt) {
    try {
      return q(xx, tt);
    } catch (const Error& e) {
      if (e.code() == Errc::SingularG) {
        throw Error(Errc::StencilHitSingularity,
                    "stencil point (" + std::to_string(xx) + ", " + std::to_string(tt) + ") is singular");
      }
      throw;
    }
  };
  const double xr = bg.x0 - x;
  const double tr = bg.t0 - t;
  return stencil(eval(x, t), eval(x + h, t), eval(x - h, t), eval(x, t + h), eval(x, t - h), eval(xr - h, tr),
                 eval(xr + h, tr), bg.sigma, h);
}

ResidualPair residual_pair(const Solution& s, double x, double t, double h) {
  const auto& bg = s.background();
  const double g = 0.5 * h;
  const double xr = bg.x0 - x;
  const double tr = bg.t0 - t;
  const auto row = checked_row(s, t, {x - h, x - g, x, x + g, x + h});
  const auto refl = checked_row(s, tr, {xr - h, xr - g, xr + g, xr + h});
  const cplx tp = checked_row(s, t + h, {x}).front().q;
  const cplx tm = checked_row(s, t - h, {x}).front().q;
  const cplx sp = checked_row(s, t + g, {x}).front().q;
  const cplx sm = checked_row(s, t - g, {x}).front().q;
  const cplx q = at(row, x);
  ResidualPair out;
  out.x = x;
  out.t = t;
  out.coarse = stencil(q, at(row, x + h), at(row, x - h), tp, tm, at(refl, xr - h), at(refl, xr + h), bg.sigma, h);
  out.fine = stencil(q, at(row, x + g), at(row, x - g), sp, sm, at(refl, xr - g), at(refl, xr + g), bg.sigma, g);
  return out;
}

ResidualReport residual_survey(const Solution& s, const GridSpec& region, const ResidualSurveyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  ResidualReport report;
  report.h = opts.h;
  const double lx = region.x_max - region.x_min;
  const double lt = region.t_max - region.t_min;
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> ux(region.x_min + opts.margin * lx, region.x_max - opts.margin * lx);
  std::uniform_real_distribution<double> ut(region.t_min + opts.margin * lt, region.t_max - opts.margin * lt);
  const int total = std::max(opts.points, opts.points * opts.max_attempts_factor);
  std::vector<std::pair<double, double>> candidates(static_cast<std::size_t>(total));
  for (auto& c : candidates) {
    c.first = ux(rng);
    c.second = ut(rng);
  }

  std::vector<std::optional<ResidualPair>> results(candidates.size());
  std::size_t done = 0;
  const unsigned workers = std::max(1u, opts.workers);
  while (done < candidates.size()) {
    const std::size_t need = static_cast<std::size_t>(opts.points) - report.samples.size();
    const std::size_t batch_end = std::min(candidates.size(), done + need);
    std::atomic<std::size_t> next{done};
    auto work = [&] {
      for (std::size_t i = next++; i < batch_end; i = next++) {
        try {
          results[i] = residual_pair(s, candidates[i].first, candidates[i].second, opts.h);
        } catch (const Error&) {
          results[i].reset();
        }
      }
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    for (std::size_t i = done; i < batch_end; ++i) {
      if (results[i]) {
        report.samples.push_back(*results[i]);
      } else {
        ++report.skipped_singular;
      }
    }
    done = batch_end;
    if (report.samples.size() >= static_cast<std::size_t>(opts.points)) break;
  }

  double sc = 0.0;
  double sf = 0.0;
  for (const auto& p : report.samples) {
    report.max_abs_residual = std::max(report.max_abs_residual, std::abs(p.coarse));
    sc += std::norm(p.coarse);
    sf += std::norm(p.fine);
  }
  report.richardson_order = sf > 0.0 ? 0.5 * std::log2(sc / sf) : 0.0;
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

BoundaryReport boundary_check(const Solution& s, double t, double tol) {
  const auto& bg = s.background();
  const auto& table = s.pole_table();
  BoundaryReport r;
  r.t = t;
  double lo = 0.5 * bg.x0;
  double hi = lo;
  double rate = INFINITY;
  int order = 1;
  for (double c : s.soliton_centers(t)) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  for (std::size_t n = 0; n < table.size(); ++n) {
    rate = std::min(rate, table.decay_rate(n));
    order = std::max(order, s.spectrum().points()[n].order);
  }
  const double reach = table.size() == 0 ? 1.0 : (std::log(1e3 / tol) + 4.0 * order) / rate + 2.0;
  r.x_minus = lo - reach;
  r.x_plus = hi + reach;
  const double settle = 0.5 * reach;
  const auto row = s.evaluate_row(t, std::vector<double>{r.x_minus - settle, r.x_minus, r.x_plus, r.x_plus + settle});
  for (const auto& p : row) {
    if (p.singular) throw Error(Errc::NoDecayDetected, "far-field sample is singular");
  }
  if (std::abs(row[0].q - row[1].q) > tol || std::abs(row[2].q - row[3].q) > tol) {
    throw Error(Errc::NoDecayDetected, "q does not settle in the far field on row t = " + std::to_string(t));
  }
  r.q_minus_far = row[1].q;
  r.q_plus_far = row[2].q;
  r.err_minus = std::abs(r.q_minus_far - bg.q_minus);
  r.err_plus = std::abs(r.q_plus_far - bg.q_plus());
  std::tie(r.err_mbar, r.mbar_branch) = mbar_offset(row[2].m_minus, s.spectrum().mbar());
  return r;
}

TraceZeroReport trace_zero_check(const DiscreteSpectrum& spectrum, double rel_tol, double abs_floor) {
  const TraceContext tc(spectrum);
  TraceZeroReport report;
  for (const auto& p : spectrum.points()) {
    const Jet u = tc.u11(Jet::variable(p.xi));
    TraceZeroEntry e;
    e.xi = p.xi;
    e.order = p.order;
    e.leading = std::abs(u.derivative(p.order));
    for (int k = 0; k < p.order; ++k) {
      e.max_below_relative = std::max(e.max_below_relative, std::abs(u.derivative(k)) / e.leading);
    }
    e.pass = e.leading >= abs_floor && e.max_below_relative <= rel_tol;
    report.pass = report.pass && e.pass;
    report.entries.push_back(e);
  }
  return report;
}

cplx oracle_bare_potential(const DiscreteSpectrum& spectrum, double x, double t) {
  const auto& bg = spectrum.background();
  const int M = spectrum.M();
  if (M == 0) return bg.q_minus;
  const TraceContext tc(spectrum);
  const PhaseContext ctx(bg);
  const auto& points = spectrum.points();
  std::vector<PoleCoefficients> pcs;
  for (std::size_t n = 0; n < points.size(); ++n) pcs.push_back(coeffs_at(spectrum, tc, ctx, n, x, t));

  std::vector<std::size_t> col_eig, row_eig;
  std::vector<int> col_level, row_level;
  index_maps(spectrum, col_eig, col_level, row_eig, row_level);

  const double a = bg.a();
  const cplx cl = -kI * bg.q_minus;
  Eigen::MatrixXcd G(M, M);
  Eigen::VectorXcd H(M);
  Eigen::RowVectorXcd Y(M);
  for (int j = 0; j < M; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    Y(j) = printed_laurent(pcs[col_eig[ju]], col_level[ju])[1];
  }
  for (int i = 0; i < M; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const std::size_t k = row_eig[iu];
    const int r = row_level[iu];
    const Jet z = Jet::variable(points[k].hat);
    const Jet inv = reciprocal(z);
    H(i) = inv.derivative(r);
    for (int j = 0; j < M; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const std::size_t n = col_eig[ju];
      const int l = col_level[ju];
      const auto c = printed_laurent(pcs[n], l);
      Jet e = Jet::constant(points[k].hat, 0.0);
      for (int p = 1; p <= 3; ++p) {
        if (c[static_cast<std::size_t>(p)] != cplx(0.0)) e += c[static_cast<std::size_t>(p)] * int_pow(z - points[n].xi, -p);
      }
      if (n == k) {
        const double fact = l == 2 ? 2.0 : 1.0;
        e -= cl * inv * int_pow(a * inv - points[n].xi, l) / fact;
      }
      G(i, j) = e.derivative(r);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(G);
  const cplx ratio = (Y * lu.solve(H))(0);
  return bg.q_minus * (1.0 - ratio);
}

cplx determinant_ratio(const Eigen::MatrixXcd& G, const Eigen::RowVectorXcd& Y, const Eigen::VectorXcd& H) {
  const Eigen::Index n = G.rows();
  Eigen::MatrixXcd B(n + 1, n + 1);
  B(0, 0) = 0.0;
  B.block(0, 1, 1, n) = Y;
  B.block(1, 0, n, 1) = H;
  B.block(1, 1, n, n) = G;
  return -det_full_pivot(B) / det_full_pivot(G);
}

cplx schur_ratio(const Eigen::MatrixXcd& G, const Eigen::RowVectorXcd& Y, const Eigen::VectorXcd& H) {
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(G);
  return (Y * lu.solve(H))(0);
}

std::pair<double, long> mbar_offset(cplx value, cplx mbar) {
  const cplx diff = value - mbar;
  const double k = std::round(diff.real() / kPi);
  return {std::abs(diff - k * kPi), static_cast<long>(k)};
}

void IdentityReport::add(std::string name, double error, double tolerance, std::string detail) {
  const bool ok = std::isfinite(error) && error <= tolerance;
  checks.push_back({std::move(name), error, tolerance, ok, std::move(detail)});
  pass = pass && ok;
}

IdentityReport identity_suite(const Solution& s, const IdentityOptions& opts) {
  IdentityReport report;
  const auto& spec = s.spectrum();
  const auto& bg = spec.background();
  const TraceContext tc(spec);
  const PhaseContext ctx(bg);
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& region = opts.region;
  auto rx = [&] { return region.x_min + (region.x_max - region.x_min) * unit(rng); };
  auto rt = [&] { return region.t_min + (region.t_max - region.t_min) * unit(rng); };

  double sum_rule = 0.0;
  int sum_rule_used = 0;
  std::optional<long> branch;
  bool branch_constant = true;
  for (int i = 0; i < opts.sum_rule_points; ++i) {
    const double x = rx();
    const double t = rt();
    try {
      const cplx m1 = s.m_minus(x, t);
      const cplx m2 = s.m_minus(bg.x0 - x, bg.t0 - t);
      const auto [err, k] = mbar_offset(m1 + m2, spec.mbar());
      sum_rule = std::max(sum_rule, err);
      if (branch && *branch != k) branch_constant = false;
      branch = k;
      ++sum_rule_used;
    } catch (const Error&) {
    }
  }
  report.add("gauge_sum_rule", sum_rule_used == 0 || !branch_constant ? INFINITY : sum_rule, 1e-8,
             "points " + std::to_string(sum_rule_used) + ", branch offset " + std::to_string(branch.value_or(0)) +
                 " pi");

  double pm_b = 0.0;
  double pm_d = 0.0;
  double pm_h = 0.0;
  double involution = 0.0;
  const auto& pts = spec.points();
  for (const auto& p : pts) {
    if (p.parity < 0) continue;
    const NormingData& nz = p.norming;
    NormingData nm;
    for (const auto& q : pts) {
      if (q.entry == p.entry && q.parity < 0) nm = q.norming;
    }
    const Jet th = ctx.theta0(Jet::variable(-p.xi));
    const cplx e2 = std::exp(2.0 * kI * th.value());
    const cplx t1 = th.derivative(1);
    const cplx t2 = th.derivative(2);
    const double sg = bg.sigma;
    const cplx ib = 1.0 / nm.b;
    pm_b = std::max(pm_b, relative(nz.b, sg * e2 * ib));
    if (p.order >= 2) {
      pm_d = std::max(pm_d, relative(nz.d, sg * ib * ib * nm.d * e2 + 2.0 * kI * t1 * ib * e2));
    }
    if (p.order >= 3) {
      const cplx rhs = -sg * e2 * ib * ib * nm.h +
                       sg * e2 * ib * (2.0 * ib * ib * nm.d * nm.d - 4.0 * t1 * t1 + 2.0 * kI * t2 - 4.0 * kI * t1 * ib * nm.d);
      pm_h = std::max(pm_h, relative(nz.h, rhs));
    }
    const NormingData hat = hat_side_norming(bg, p.xi, nz);
    const NormingData back = hat_side_norming(bg, p.hat, hat);
    involution = std::max({involution, relative(back.b, nz.b), relative(back.d, nz.d), relative(back.h, nz.h)});
  }
  report.add("pm_pair_b", pm_b, 1e-10);
  report.add("pm_pair_d", pm_d, 1e-10);
  report.add("pm_pair_h", pm_h, 1e-10);
  report.add("hat_involution", involution, 1e-12);

  double unit_err = 0.0;
  double even_err = 0.0;
  for (int i = 0; i < 20; ++i) {
    const cplx z = std::polar(0.3 + 2.5 * unit(rng), 2.0 * kPi * unit(rng));
    try {
      const cplx u = tc.u11(z);
      unit_err = std::max(unit_err, std::abs(u * tc.u22(z) - 1.0));
      even_err = std::max(even_err, std::abs(tc.u11(-z) - u) / std::max(1.0, std::abs(u)));
    } catch (const Error&) {
    }
  }
  report.add("u11_u22_unit", unit_err, 1e-12);
  report.add("u11_even", even_err, 1e-12);

  double schur = 0.0;
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < opts.schur_trials; ++trial) {
    const int n = 2 + trial % 11;
    Eigen::MatrixXcd G(n, n);
    Eigen::RowVectorXcd Y(n);
    Eigen::VectorXcd H(n);
    for (int i = 0; i < n; ++i) {
      Y(i) = {normal(rng), normal(rng)};
      H(i) = {normal(rng), normal(rng)};
      for (int j = 0; j < n; ++j) G(i, j) = {normal(rng), normal(rng)};
      G(i, i) += static_cast<double>(2 * n);
    }
    const cplx a = schur_ratio(G, Y, H);
    schur = std::max(schur, std::abs(a - determinant_ratio(G, Y, H)) / std::max(1.0, std::abs(a)));
  }
  report.add("schur_vs_determinant", schur, 1e-10);

  if (spec.M() > 0 && spec.M() <= 12) {
    double oracle = 0.0;
    int used = 0;
    const double cx = 0.5 * bg.x0;
    const double ct = 0.5 * bg.t0;
    for (int i = 0; i < 10 * opts.oracle_points && used < opts.oracle_points; ++i) {
      const double x = cx - 5.0 + 10.0 * unit(rng);
      const double t = ct - 2.0 + 4.0 * unit(rng);
      try {
        const BarePotential bp = s.bare(x, t);
        if (bp.cond > 1e8) continue;
        const cplx ref = oracle_bare_potential(spec, x, t);
        oracle = std::max(oracle, std::abs(bp.P - ref) / std::max(1.0, std::abs(ref)));
        const LinearSystem sys = assemble_system(spec, s.pole_table(), x, t, false, ColumnBasis::Printed);
        const cplx sr = schur_ratio(sys.G, sys.Y, sys.H);
        schur = std::max(schur, std::abs(sr - determinant_ratio(sys.G, sys.Y, sys.H)) / std::max(1.0, std::abs(sr)));
        ++used;
      } catch (const Error&) {
      }
    }
    report.add("dense_solve_oracle", used == 0 ? INFINITY : oracle, 1e-9);
    report.add("schur_vs_determinant_on_G", schur, 1e-10);
  }
  return report;
}

bool inject_norming_fault(DiscreteSpectrum& spectrum, double fraction) {
  const auto& pts = spectrum.points();
  for (std::size_t n = 0; n < pts.size(); ++n) {
    if (pts[n].parity < 0) {
      spectrum.scale_norming(n, 1.0 + fraction);
      return true;
    }
  }
  return false;
}

}  // namespace sdnls
