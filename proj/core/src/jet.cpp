#include "sdnls/jet.hpp"

#include <string>

namespace sdnls {

namespace {

constexpr double kFactorial[Jet::kSize] = {1.0, 1.0, 2.0, 6.0, 24.0, 120.0};

}  // namespace

Jet Jet::variable(cplx z0) {
  Coeffs c{};
  c[0] = z0;
  c[1] = 1.0;
  return Jet(z0, c);
}

Jet Jet::constant(cplx z0, cplx value) {
  Coeffs c{};
  c[0] = value;
  return Jet(z0, c);
}

cplx Jet::derivative(int k) const {
  if (k < 0 || k > kDegree) {
    throw Error(Errc::OrderOutOfRange, "derivative order " + std::to_string(k));
  }
  return kFactorial[k] * c_[static_cast<std::size_t>(k)];
}

void Jet::require_same_base(const Jet& o) const {
  if (base_ != o.base_) {
    throw Error(Errc::BaseMismatch, "jets expanded about different points");
  }
}

Jet& Jet::operator+=(const Jet& o) {
  require_same_base(o);
  for (int k = 0; k < kSize; ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  require_same_base(o);
  for (int k = 0; k < kSize; ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  require_same_base(o);
  Coeffs r{};
  for (int i = 0; i < kSize; ++i) {
    for (int j = 0; i + j < kSize; ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = r;
  return *this;
}

Jet& Jet::operator/=(const Jet& o) {
  require_same_base(o);
  return *this *= reciprocal(o);
}

Jet& Jet::operator+=(cplx s) noexcept {
  c_[0] += s;
  return *this;
}

Jet& Jet::operator-=(cplx s) noexcept {
  c_[0] -= s;
  return *this;
}

Jet& Jet::operator*=(cplx s) noexcept {
  for (auto& v : c_) v *= s;
  return *this;
}

Jet& Jet::operator/=(cplx s) {
  if (s == cplx(0.0)) throw Error(Errc::DivisionByZeroJet, "division of a jet by zero");
  for (auto& v : c_) v /= s;
  return *this;
}

Jet Jet::operator-() const noexcept {
  Jet r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Jet reciprocal(const Jet& a) {
  const auto& c = a.coeffs();
  if (c[0] == cplx(0.0)) {
    throw Error(Errc::DivisionByZeroJet, "reciprocal of a jet with vanishing constant term");
  }
  Jet::Coeffs r{};
  r[0] = 1.0 / c[0];
  for (int k = 1; k < Jet::kSize; ++k) {
    cplx s = 0.0;
    for (int j = 1; j <= k; ++j) s += c[j] * r[k - j];
    r[k] = -s * r[0];
  }
  return Jet(a.base(), r);
}

Jet int_pow(const Jet& a, int p) {
  if (p < 0) return int_pow(reciprocal(a), -p);
  Jet result = Jet::constant(a.base(), 1.0);
  Jet base = a;
  while (p > 0) {
    if (p & 1) result *= base;
    p >>= 1;
    if (p > 0) base *= base;
  }
  return result;
}

}  // namespace sdnls
