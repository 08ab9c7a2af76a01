#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace rotnum {

/// Escalation precision: 50 decimal digits.
using Mp = boost::multiprecision::cpp_bin_float_50;

template <class Real>
inline Real pi_v() {
  if constexpr (std::is_same_v<Real, double>)
    return 3.141592653589793238462643383279502884;
  else
    return boost::math::constants::pi<Real>();
}

template <class Real>
inline constexpr double epsilon_v() {
  return static_cast<double>(std::numeric_limits<Real>::epsilon());
}

template <class Real>
inline double to_double(const Real& x) {
  return static_cast<double>(x);
}

/// 2x2 real matrix acting on the plane; only the projective class matters for
/// the boundary action, so products are kept sign-normalized.
template <class Real>
struct Mat2 {
  Real a{1}, b{0}, c{0}, d{1};

  static Mat2 identity() { return {}; }

  Real det() const { return a * d - b * c; }
  Real trace() const { return a + d; }

  /// Inverse of a unit-determinant matrix (adjugate).
  Mat2 inverse() const { return {d, -b, -c, a}; }

  Mat2 operator-() const { return {-a, -b, -c, -d}; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }

  /// First nonzero entry made positive.
  Mat2 sign_normalized() const {
    const Real& lead = a != 0 ? a : (b != 0 ? b : (c != 0 ? c : d));
    return lead < 0 ? -*this : *this;
  }

  double frobenius() const {
    using std::sqrt;
    return to_double(sqrt(a * a + b * b + c * c + d * d));
  }

  template <class Other>
  Mat2<Other> cast() const {
    return {Other(a), Other(b), Other(c), Other(d)};
  }
};

template <class Real>
std::ostream& operator<<(std::ostream& os, const Mat2<Real>& m) {
  return os << "[[" << m.a << ", " << m.b << "], [" << m.c << ", " << m.d << "]]";
}

/// Largest entrywise distance to +I or -I, whichever is closer.
template <class Real>
double distance_to_identity(const Mat2<Real>& m) {
  using std::abs;
  auto dist = [](const Mat2<Real>& x) {
    using std::abs;
    using std::max;
    Real r = max(max(abs(x.a - 1), abs(x.d - 1)), max(abs(x.b), abs(x.c)));
    return to_double(r);
  };
  return std::min(dist(m), dist(-m));
}

/// Projective distance: min over signs of the entrywise max difference,
/// relative to the larger Frobenius norm.
template <class Real>
double projective_residual(const Mat2<Real>& x, const Mat2<Real>& y) {
  auto diff = [](const Mat2<Real>& p, const Mat2<Real>& q) {
    using std::abs;
    using std::max;
    return to_double(max(max(abs(p.a - q.a), abs(p.b - q.b)), max(abs(p.c - q.c), abs(p.d - q.d))));
  };
  double scale = std::max({1.0, x.frobenius(), y.frobenius()});
  return std::min(diff(x, y), diff(x, -y)) / scale;
}

}  // namespace rotnum
