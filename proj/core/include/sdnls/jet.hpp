#pragma once

#include <array>
#include <complex>

#include "sdnls/error.hpp"

namespace sdnls {

using cplx = std::complex<double>;

/// Truncated Taylor expansion of a holomorphic function about a base point.
///
/// Coefficient k holds f^(k)(z0)/k!, so products are plain Cauchy
/// convolutions truncated at degree 5.  Every binary operation requires both
/// operands to share the same base point.
class Jet {
 public:
  static constexpr int kDegree = 5;
  static constexpr int kSize = kDegree + 1;
  using Coeffs = std::array<cplx, kSize>;

  Jet() = default;
  Jet(cplx base, const Coeffs& coeffs) : base_(base), c_(coeffs) {}

  /// The jet of f(z) = z at z0.
  static Jet variable(cplx z0);
  static Jet constant(cplx z0, cplx value);

  cplx base() const noexcept { return base_; }
  const Coeffs& coeffs() const noexcept { return c_; }
  cplx operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
  cplx value() const noexcept { return c_[0]; }

  /// k! * c_k, the k-th derivative at the base point.
  cplx derivative(int k) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator+=(cplx s) noexcept;
  Jet& operator-=(cplx s) noexcept;
  Jet& operator*=(cplx s) noexcept;
  Jet& operator/=(cplx s);

  Jet operator-() const noexcept;

 private:
  void require_same_base(const Jet& o) const;

  cplx base_{};
  Coeffs c_{};
};

Jet reciprocal(const Jet& a);
Jet int_pow(const Jet& a, int p);

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, const Jet& b) { return a *= b; }
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }

inline Jet operator+(Jet a, cplx s) { return a += s; }
inline Jet operator-(Jet a, cplx s) { return a -= s; }
inline Jet operator*(Jet a, cplx s) { return a *= s; }
inline Jet operator/(Jet a, cplx s) { return a /= s; }
inline Jet operator+(cplx s, Jet a) { return a += s; }
inline Jet operator-(cplx s, const Jet& a) { return (-a) += s; }
inline Jet operator*(cplx s, Jet a) { return a *= s; }
inline Jet operator/(cplx s, const Jet& a) { return reciprocal(a) *= s; }

inline Jet operator+(Jet a, double s) { return a += cplx(s); }
inline Jet operator-(Jet a, double s) { return a -= cplx(s); }
inline Jet operator*(Jet a, double s) { return a *= cplx(s); }
inline Jet operator/(Jet a, double s) { return a /= cplx(s); }
inline Jet operator+(double s, Jet a) { return a += cplx(s); }
inline Jet operator-(double s, const Jet& a) { return cplx(s) - a; }
inline Jet operator*(double s, Jet a) { return a *= cplx(s); }
inline Jet operator/(double s, const Jet& a) { return cplx(s) / a; }

/// Scalar value of either a plain number or a jet.
inline cplx value_of(cplx z) noexcept { return z; }
inline cplx value_of(const Jet& j) noexcept { return j.value(); }

}  // namespace sdnls
