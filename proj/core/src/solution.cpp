#include "sdnls/solution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sdnls/error.hpp"

namespace sdnls {

namespace {

const cplx kI(0.0, 1.0);

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

/// Relative size of the rounding noise carried by the gauge integrand.
constexpr double kNoiseFloor = 1e-11;

/// Largest integrand magnitude tolerated at the left cut.
constexpr double kTailCheck = 1e-8;

}  // namespace

double GridSpec::x_at(int i) const noexcept {
  return nx == 1 ? x_min : x_min + (x_max - x_min) * static_cast<double>(i) / static_cast<double>(nx - 1);
}

double GridSpec::t_at(int j) const noexcept {
  return nt == 1 ? t_min : t_min + (t_max - t_min) * static_cast<double>(j) / static_cast<double>(nt - 1);
}

void GridSpec::validate() const {
  if (nx < 1 || nt < 1) throw Error(Errc::InvalidConfig, "grid needs nx, nt >= 1");
  if (nx > 1 && !(x_min < x_max)) throw Error(Errc::InvalidConfig, "grid needs x_min < x_max");
  if (nt > 1 && !(t_min < t_max)) throw Error(Errc::InvalidConfig, "grid needs t_min < t_max");
}

Solution::Solution(DiscreteSpectrum spectrum, SolverOptions options)
    : spectrum_(std::move(spectrum)), options_(options), table_(spectrum_) {
  gauge_factor_ = static_cast<double>(spectrum_.background().sigma) * spectrum_.exp2imbar();
}

LinearSystem Solution::system(double x, double t) const {
  return assemble_system(spectrum_, table_, x, t, options_.rescale, options_.basis);
}

BarePotential Solution::bare(double x, double t) const {
  return bare_potential(system(x, t), spectrum_.background().q_minus);
}

cplx Solution::gauge_integrand(double y, double t) const {
  const auto& bg = spectrum_.background();
  if (spectrum_.M() == 0) {
    return gauge_factor_ * bg.q_minus * bg.q_minus - bg.a();
  }
  const cplx p = bare(y, t).P;
  const cplx pr = bare(bg.x0 - y, bg.t0 - t).P;
  return gauge_factor_ * p * pr - bg.a();
}

std::vector<double> Solution::soliton_centers(double t) const {
  std::vector<double> centers;
  const auto& bg = spectrum_.background();
  for (std::size_t n = 0; n < table_.size(); ++n) {
    centers.push_back(table_.front(n, t));
    centers.push_back(bg.x0 - table_.front(n, bg.t0 - t));
  }
  return centers;
}

double Solution::left_cut(double t, double x_hint) const {
  const double w = options_.panel_width;
  if (spectrum_.M() == 0) return std::floor(x_hint / w) * w;
  double start = x_hint;
  for (double c : soliton_centers(t)) start = std::min(start, c);
  double rate = INFINITY;
  int order = 1;
  for (std::size_t n = 0; n < table_.size(); ++n) {
    rate = std::min(rate, table_.decay_rate(n));
    order = std::max(order, spectrum_.points()[n].order);
  }
  const double reach = (std::log(1.0 / options_.tail_tol) + 4.0 * order) / rate + 2.0;
  double cut = std::floor((start - reach) / w) * w;
  for (int attempt = 0; attempt < 12; ++attempt) {
    cplx f;
    bool ok = true;
    try {
      f = gauge_integrand(cut, t);
    } catch (const Error&) {
      ok = false;
    }
    if (ok && std::abs(f) <= kTailCheck) return cut;
    cut = std::floor((cut - reach) / w) * w;
  }
  throw Error(Errc::NoDecayDetected, "gauge integrand does not decay to the left on row t = " + std::to_string(t));
}

cplx Solution::panel(double t, double lo, double hi, int depth, double tol) const {
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
  const double half = 0.5 * (hi - lo);
  const double background_scale = std::abs(spectrum_.background().a());
  const double mid = 0.5 * (hi + lo);
  cplx kronrod = 0.0;
  cplx gauss = 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < xk.size(); ++i) {
    const int sides = xk[i] == 0.0 ? 1 : 2;
    for (int s = 0; s < sides; ++s) {
      const double y = s == 0 ? mid + half * xk[i] : mid - half * xk[i];
      const cplx f = gauge_integrand(y, t);
      kronrod += wk[i] * f;
      mass += wk[i] * (std::abs(f) + background_scale);
      if (i % 2 == 0) gauss += wg[i / 2] * f;
    }
  }
  kronrod *= half;
  gauss *= half;
  mass *= half;
  if (!std::isfinite(kronrod.real()) || !std::isfinite(kronrod.imag())) {
    throw Error(Errc::QuadratureNoConvergence, "non-finite panel value");
  }
  const double err = std::abs(kronrod - gauss);
  if (err <= tol * (hi - lo) || err <= kNoiseFloor * mass) return kronrod;
  if (depth >= options_.max_depth) {
    throw Error(Errc::QuadratureNoConvergence,
                "panel [" + std::to_string(lo) + ", " + std::to_string(hi) + "] on row t = " + std::to_string(t));
  }
  return panel(t, lo, mid, depth + 1, tol) + panel(t, mid, hi, depth + 1, tol);
}

cplx Solution::integrate(double t, double lo, double hi) const {
  if (hi == lo) return 0.0;
  if (hi < lo) return -integrate(t, hi, lo);
  if (spectrum_.M() == 0) return gauge_integrand(lo, t) * (hi - lo);
  const double w = options_.panel_width;
  cplx sum = 0.0;
  double left = lo;
  while (left < hi) {
    double right = (std::floor(left / w) + 1.0) * w;
    if (right <= left) right = left + w;
    right = std::min(right, hi);
    sum += panel(t, left, right, 0, options_.quad_tol);
    left = right;
  }
  return sum;
}

cplx Solution::m_minus(double x, double t) const {
  const double cut = left_cut(t, x);
  return 0.5 * integrate(t, cut, x);
}

SolutionSample Solution::evaluate(double x, double t) const {
  const double xs[1] = {x};
  return evaluate_row(t, xs).front();
}

std::vector<SolutionSample> Solution::evaluate_row(double t, std::span<const double> xs) const {
  std::vector<SolutionSample> row(xs.size());
  if (xs.empty()) return row;
  const cplx q_minus = spectrum_.background().q_minus;
  bool broken = false;
  cplx m = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto& s = row[i];
    s.x = xs[i];
    s.t = t;
    if (spectrum_.M() == 0) {
      s.P = q_minus;
      s.cond = 1.0;
      s.m_minus = 0.0;
      s.gauge = 1.0;
      s.q = q_minus;
      continue;
    }
    if (!broken) {
      try {
        if (i == 0) {
          m = 0.5 * integrate(t, left_cut(t, xs[0]), xs[0]);
        } else {
          m += 0.5 * integrate(t, prev, xs[i]);
        }
        prev = xs[i];
      } catch (const Error&) {
        broken = true;
      }
    }
    try {
      const BarePotential bp = bare(xs[i], t);
      s.P = bp.P;
      s.cond = bp.cond;
    } catch (const Error&) {
      s.singular = true;
    }
    if (broken) s.singular = true;
    if (!s.singular) {
      s.m_minus = m;
      s.gauge = std::exp(2.0 * kI * m);
      s.q = s.gauge * s.P;
    }
  }
  return row;
}

std::vector<SolutionSample> Solution::evaluate_grid(const GridSpec& grid, unsigned workers) const {
  grid.validate();
  std::vector<SolutionSample> out(static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.nt));
  std::vector<double> xs(static_cast<std::size_t>(grid.nx));
  for (int i = 0; i < grid.nx; ++i) xs[static_cast<std::size_t>(i)] = grid.x_at(i);

  std::atomic<int> next{0};
  auto work = [&] {
    for (int j = next++; j < grid.nt; j = next++) {
      auto row = evaluate_row(grid.t_at(j), xs);
      std::copy(row.begin(), row.end(), out.begin() + static_cast<std::ptrdiff_t>(j) * grid.nx);
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace sdnls
