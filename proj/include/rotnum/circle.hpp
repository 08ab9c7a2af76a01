#pragma once

// The circle action of unit-determinant matrices and lifts to the real line.
//
// Circle coordinate: x in [0,1) is the line through (cos(pi x), sin(pi x)).
// Under this identification -M acts as M and rotations act rigidly.
//
// A LiftedMap (M, m) is the map F(x) = lift_M(x) + m of R, where lift_M is
// the canonical lift: the continuous lift of the action of M with
// lift_M(0) = act(M, 0) in [0,1).  These maps commute with x -> x + 1 and form
// the universal central extension of the projective group by Z; the integer
// correction under composition is sigma(M1, M2) in {0, 1}.
//
// Every integer extracted from floating point is certified: the decision
// point must sit further from its threshold than a propagated error bound.
// Otherwise CertificationError is thrown and callers recompute at higher
// precision.

#include <cmath>
#include <cstdint>
#include <string>

#include "rotnum/error.hpp"
#include "rotnum/mat2.hpp"

namespace rotnum {

enum class MatrixClass { Hyperbolic, Parabolic, Elliptic, Identity };

inline const char* to_string(MatrixClass k) {
  switch (k) {
    case MatrixClass::Hyperbolic: return "hyperbolic";
    case MatrixClass::Parabolic: return "parabolic";
    case MatrixClass::Elliptic: return "elliptic";
    case MatrixClass::Identity: return "identity";
  }
  return "?";
}

inline constexpr double kClassifyEpsilon = 1e-9;

template <class Real>
MatrixClass classify(const Mat2<Real>& m, double eps = kClassifyEpsilon) {
  double t = std::abs(to_double(m.trace()));
  if (t > 2 + eps) return MatrixClass::Hyperbolic;
  if (t < 2 - eps) return MatrixClass::Elliptic;
  return distance_to_identity(m) <= eps ? MatrixClass::Identity : MatrixClass::Parabolic;
}

/// Coordinate in [0,1) of the line spanned by (vx, vy).
template <class Real>
Real line_coordinate(const Real& vx, const Real& vy) {
  using std::atan2;
  using std::floor;
  Real x = atan2(vy, vx) / pi_v<Real>();
  x -= floor(x);
  if (x >= 1) x -= 1;
  return x;
}

/// Distance between two circle coordinates.
template <class Real>
Real circle_distance(const Real& x, const Real& y) {
  using std::abs;
  using std::floor;
  Real d = x - y;
  d -= floor(d);
  return d < Real(0.5) ? d : Real(1) - d;
}

template <class Real>
Real act(const Mat2<Real>& m, const Real& x) {
  using std::cos;
  using std::sin;
  Real t = pi_v<Real>() * x;
  Real vx = cos(t), vy = sin(t);
  return line_coordinate<Real>(m.a * vx + m.b * vy, m.c * vx + m.d * vy);
}

/// act(M, 0) and act(M^-1, 0) read directly off the entries.
template <class Real>
Real image_of_zero(const Mat2<Real>& m) {
  return line_coordinate<Real>(m.a, m.c);
}
template <class Real>
Real preimage_of_zero(const Mat2<Real>& m) {
  return line_coordinate<Real>(m.d, -m.c);
}

/// Canonical lift of the action of M evaluated at any real x.
template <class Real>
Real canonical_lift_value(const Mat2<Real>& m, const Real& x) {
  using std::floor;
  Real n = floor(x);
  Real r = x - n;
  Real base = image_of_zero(m);
  if (r == 0) return base + n;
  // Angle from M e0 to M v(r).  Their cross product is det(M) sin(pi r) =
  // sin(pi r) > 0, so the angle lies in (0, pi) and never wraps; differencing
  // act(M, r) - act(M, 0) instead loses the wrap when both sit next to the
  // attracting point.
  using std::atan2;
  using std::cos;
  using std::sin;
  Real t = pi_v<Real>() * r;
  Real vx = cos(t), vy = sin(t);
  Real dot = m.a * (m.a * vx + m.b * vy) + m.c * (m.c * vx + m.d * vy);
  Real step = atan2(vy, dot) / pi_v<Real>();
  return base + step + n;
}

template <class Real>
struct FixedCoordinates {
  Real attracting{0}, repelling{0};
  Real conditioning{1};  // |lambda_+ - lambda_-|, or 0 for parabolic
};

/// Fixed directions of a hyperbolic or parabolic matrix.
template <class Real>
FixedCoordinates<Real> fixed_coordinates(const Mat2<Real>& m0, double eps = kClassifyEpsilon) {
  using std::sqrt;
  MatrixClass k = classify(m0, eps);
  if (k == MatrixClass::Elliptic) throw ArgumentError("elliptic matrix has no fixed direction");
  if (k == MatrixClass::Identity) throw ArgumentError("identity fixes every direction");
  Mat2<Real> m = m0.trace() < 0 ? -m0 : m0;
  Real q = (m.a - m.d) / 2;
  Real half_t = m.trace() / 2;
  Real r2 = (half_t - 1) * (half_t + 1);
  Real r = r2 > 0 ? Real(sqrt(r2)) : Real(0);
  FixedCoordinates<Real> out;
  // Eigenvectors (b, lambda - a) and (lambda - d, c).  With P = q + r and
  // Q = r - q (both >= 0, P Q = bc): lambda_+ - a = Q, lambda_+ - d = P,
  // lambda_- - a = -P, lambda_- - d = -Q.  The smaller of P, Q is recovered
  // from the product to avoid cancellation; the longer vector is used.
  Real P = q + r, Q = r - q;
  if (q >= 0) {
    if (P != 0) Q = m.b * m.c / P;
  } else {
    if (Q != 0) P = m.b * m.c / Q;
  }
  auto pick = [](const Real& x1, const Real& y1, const Real& x2, const Real& y2) {
    return x1 * x1 + y1 * y1 >= x2 * x2 + y2 * y2 ? line_coordinate<Real>(x1, y1)
                                                  : line_coordinate<Real>(x2, y2);
  };
  out.attracting = pick(m.b, Q, P, m.c);
  out.repelling = pick(m.b, -P, -Q, m.c);
  out.conditioning = 2 * r;
  return out;
}

/// The attracting (or unique) fixed direction.
template <class Real>
Real fixed_coordinate(const Mat2<Real>& m, double eps = kClassifyEpsilon) {
  return fixed_coordinates(m, eps).attracting;
}

/// Element of the lifted group.  `growth` and `steps` bound the rounding error
/// accumulated while forming `matrix` as a product.
template <class Real>
struct LiftedMap {
  Mat2<Real> matrix{};
  std::int64_t offset = 0;
  double growth = 1;
  int steps = 0;

  Real operator()(const Real& x) const { return canonical_lift_value(matrix, x) + Real(offset); }
};

template <class Real>
LiftedMap<Real> identity_lift() {
  return {};
}

template <class Real>
LiftedMap<Real> canonical_lift(const Mat2<Real>& m) {
  return {m.sign_normalized(), 0, std::max(1.0, m.frobenius()), 0};
}

template <class Real>
LiftedMap<Real> central_translation(std::int64_t k) {
  return {Mat2<Real>::identity(), k, 1, 0};
}

/// The same lifted map with its matrix rounded to another real type.
template <class Other, class Real>
LiftedMap<Other> lift_cast(const LiftedMap<Real>& l) {
  return {l.matrix.template cast<Other>(), l.offset, l.growth, l.steps};
}

namespace detail {

/// Error estimate for a direction read off a row or column of a product.
template <class Real>
double direction_error(double growth, int steps, double vector_norm) {
  double e = epsilon_v<Real>();
  if (vector_norm <= 0) return 1.0;
  return 8 * e * (steps + 2) * growth / vector_norm + 8 * e;
}

template <class Real>
double col0_norm(const Mat2<Real>& m) {
  using std::sqrt;
  return to_double(sqrt(m.a * m.a + m.c * m.c));
}
template <class Real>
double row1_norm(const Mat2<Real>& m) {
  using std::sqrt;
  return to_double(sqrt(m.c * m.c + m.d * m.d));
}

}  // namespace detail

/// sigma(M1, M2) = lift_M1(lift_M2(0)) - lift_{M1 M2}(0).  It is computed from
/// the difference itself rather than from the ordering of act(M1^-1, 0) and
/// act(M2, 0): the difference is continuous in the data away from
/// act(M2, 0) = 0, so a product near a wrap point still gets the sigma that is
/// consistent with its own stored canonical lift.
template <class Real>
int section_cocycle(const LiftedMap<Real>& l1, const LiftedMap<Real>& l2,
                    const Mat2<Real>& product) {
  const Mat2<Real>& m2 = l2.matrix;
  Real y = image_of_zero(m2);
  if (m2.c != 0) {
    double err_y = detail::direction_error<Real>(l2.growth, l2.steps, detail::col0_norm(m2));
    if (to_double(circle_distance(y, Real(0))) <= 4 * err_y)
      throw CertificationError("section cocycle undecidable: act(M2, 0) too close to 0");
  }
  Real v = canonical_lift_value(l1.matrix, y) - image_of_zero(product);
  double vd = to_double(v);
  int sigma = static_cast<int>(std::lround(vd));
  if (std::abs(vd - sigma) >= 0.25 || sigma < 0 || sigma > 1)
    throw CertificationError("section cocycle not an integer in {0,1} (value " +
                             std::to_string(vd) + ")");
  return sigma;
}

template <class Real>
LiftedMap<Real> compose(const LiftedMap<Real>& l1, const LiftedMap<Real>& l2) {
  Mat2<Real> product = (l1.matrix * l2.matrix).sign_normalized();
  int sigma = section_cocycle(l1, l2, product);
  return {product, l1.offset + l2.offset + sigma, l1.growth * l2.growth, l1.steps + l2.steps + 1};
}

template <class Real>
LiftedMap<Real> inverse(const LiftedMap<Real>& l) {
  LiftedMap<Real> inv{l.matrix.inverse().sign_normalized(), 0, l.growth, l.steps};
  // lift_M o lift_{M^-1} = id + sigma(M, M^-1)
  int sigma = 0;
  if (l.matrix.c != 0) {
    Real z = preimage_of_zero(l.matrix);
    double err = detail::direction_error<Real>(l.growth, l.steps, detail::row1_norm(l.matrix));
    if (to_double(circle_distance(z, Real(0))) <= 4 * err)
      throw CertificationError("inverse lift undecidable at this precision");
    sigma = 1;
  }  // c == 0: M fixes direction 0 and sigma = 0
  inv.offset = -l.offset - sigma;
  return inv;
}

struct TransValue {
  std::int64_t value = 0;
  bool certified = false;
  double residual = 0;   // distance of the real-valued evaluation from the integer
  double margin = 0;     // distance of the deciding point from its threshold
  MatrixClass kind = MatrixClass::Identity;
  double estimate = 0;   // real value; equals `value` when certified
};

template <class Real>
double trans_iterative(const LiftedMap<Real>& l, std::int64_t n) {
  if (n < 1) throw ArgumentError("iteration count must be positive");
  Real x = 0;
  for (std::int64_t i = 0; i < n; ++i) x = l(x);
  return to_double(x / Real(n));
}

/// Translation number.  Non-elliptic matrices give a certified integer;
/// elliptic ones fall back to the iterative estimate with n = 2^20.
template <class Real>
TransValue trans(const LiftedMap<Real>& l, double eps = kClassifyEpsilon) {
  TransValue out;
  const Mat2<Real>& m = l.matrix;
  double err0 = detail::direction_error<Real>(l.growth, l.steps, detail::col0_norm(m));
  double id_tol = std::max(eps, 64 * epsilon_v<Real>() * (l.steps + 2) * l.growth);
  if (id_tol > 1e-3) throw CertificationError("accumulated rounding too large for trans");
  out.kind = classify(m, id_tol);
  Real fx0 = image_of_zero(m);
  switch (out.kind) {
    case MatrixClass::Identity: {
      // Lift of a (numerically) trivial matrix is a translation; the canonical
      // lift moves 0 to fx0, which is within id_tol of 0 or 1.
      double f = to_double(fx0);
      int wrap = f > 0.5 ? 1 : 0;
      out.residual = std::min(f, 1 - f);
      out.margin = 0.5 - out.residual;
      out.value = l.offset + wrap;
      out.certified = out.residual < 0.25 && out.residual <= 64 * (id_tol + err0);
      if (!out.certified) throw CertificationError("near-identity lift not certified");
      out.estimate = static_cast<double>(out.value);
      return out;
    }
    case MatrixClass::Elliptic: {
      out.estimate = trans_iterative(l, std::int64_t{1} << 20);
      out.value = static_cast<std::int64_t>(std::llround(out.estimate));
      out.residual = std::abs(out.estimate - static_cast<double>(out.value));
      out.certified = false;
      return out;
    }
    case MatrixClass::Hyperbolic:
    case MatrixClass::Parabolic: break;
  }
  FixedCoordinates<Real> fp = fixed_coordinates(m, id_tol);
  // Either fixed point decides the answer; use the one further from fx0.
  Real xa = fp.attracting, xr = fp.repelling;
  bool use_attracting = out.kind == MatrixClass::Parabolic ||
                        circle_distance(xa, fx0) >= circle_distance(xr, fx0);
  Real xs = use_attracting ? xa : xr;
  // A posteriori check of the fixed point; the attracting point is checked
  // under M and the repelling one under M^-1, where both are contracting.
  Real moved = use_attracting ? act(m, xs) : act(m.inverse(), xs);
  out.residual = to_double(circle_distance(moved, xs));
  out.margin = to_double(circle_distance(xs, fx0));
  out.value = l.offset + (xs < fx0 ? 1 : 0);
  out.estimate = static_cast<double>(out.value);
  double cond = std::max(to_double(fp.conditioning), 1e-300);
  double err_fp = 8 * epsilon_v<Real>() * (l.steps + 2) * l.growth / cond + out.residual;
  out.certified = out.residual < 0.25 && out.margin > 4 * (err0 + err_fp);
  if (!out.certified)
    throw CertificationError("translation number not certified (margin " +
                             std::to_string(out.margin) + ", residual " +
                             std::to_string(out.residual) + ")");
  return out;
}

}  // namespace rotnum
