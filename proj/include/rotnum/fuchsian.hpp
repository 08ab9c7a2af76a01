#pragma once

// Fuchsian representation of the genus-g surface group from the side pairings
// of the regular hyperbolic 4g-gon with interior angles 2pi/4g.
//
// Side k of the polygon (k = 0..4g-1, outward normal at angle 2 pi k / 4g)
// carries letter c[k] of the relator.  The generator a_i maps the side
// labelled a_i^-1 onto the side labelled a_i; b_i maps the side labelled b_i
// onto the side labelled b_i^-1.  In the upper half-plane, with k(phi) the
// rotation about i by 2 phi and T = diag(e^d, e^-d), cosh d = cot(pi/4g), the
// pairing of side s onto side t is k(theta_t / 2) T k((pi - theta_s) / 2).
//
// The generators are then conjugated by a fixed generic rotation so that no
// short word fixes the direction 0 exactly, and by diag(1,-1) when needed to
// make the lifted relator translate by 2 - 2g.

#include <string>
#include <vector>

#include "rotnum/circle.hpp"
#include "rotnum/mat2.hpp"
#include "rotnum/word.hpp"

namespace rotnum {

inline constexpr double kRelatorResidual = 1e-9;

/// Rotation angle (radians, as a multiple of pi) of the generic conjugation.
inline constexpr double kGenericTurn = 0.1234567891;

struct FuchsianRep {
  int genus = 0;
  std::vector<Mat2<double>> gens;  // index k-1 for generator k
  std::vector<Mat2<Mp>> gens_mp;
  bool orientation_flipped = false;

  template <class Real>
  const Mat2<Real>& generator_matrix(int k) const {
    if constexpr (std::is_same_v<Real, double>)
      return gens[static_cast<std::size_t>(k - 1)];
    else
      return gens_mp[static_cast<std::size_t>(k - 1)];
  }
};

/// Ordered product of generator images, sign-normalized.
template <class Real>
Mat2<Real> evaluate(const FuchsianRep& rep, const Word& w) {
  if (w.genus() != rep.genus) throw ArgumentError("genus mismatch evaluating word");
  Mat2<Real> m;
  for (Letter x : w) {
    const Mat2<Real>& g = rep.generator_matrix<Real>(std::abs(x));
    m = m * (x > 0 ? g : g.inverse());
  }
  return m.sign_normalized();
}

inline Mat2<double> evaluate(const FuchsianRep& rep, const Word& w) {
  return evaluate<double>(rep, w);
}

namespace detail {

template <class Real>
Mat2<Real> rotation_half(const Real& phi) {
  using std::cos;
  using std::sin;
  Real c = cos(phi), s = sin(phi);
  return {c, -s, s, c};
}

template <class Real>
std::vector<Mat2<Real>> polygon_pairings(int g) {
  using std::cosh;
  using std::exp;
  using std::sqrt;
  using std::tan;
  using std::log;
  const int n = 4 * g;
  const Real pi = pi_v<Real>();
  // cosh d = cot(pi / n)
  Real ch = 1 / tan(pi / n);
  Real d = log(ch + sqrt(ch * ch - 1));
  Mat2<Real> t{exp(d), Real(0), Real(0), exp(-d)};
  const Word c = relator(g);
  auto side_of = [&](Letter x) {
    for (int k = 0; k < n; ++k)
      if (c[k] == x) return k;
    throw ValidationError("letter missing from relator");
  };
  auto theta = [&](int k) { return 2 * pi * k / n; };
  std::vector<Mat2<Real>> gens;
  for (int k = 1; k <= 2 * g; ++k) {
    Letter x = static_cast<Letter>(k);
    int pos = side_of(x), neg = side_of(static_cast<Letter>(-x));
    int src = is_a(x) ? neg : pos;
    int dst = is_a(x) ? pos : neg;
    gens.push_back(rotation_half<Real>(theta(dst) / 2) * t *
                   rotation_half<Real>((pi - theta(src)) / 2));
  }
  return gens;
}

// Translation number of the lifted relator with all offsets zero.
inline std::int64_t relator_translation(const std::vector<Mat2<Mp>>& gens, int g) {
  LiftedMap<Mp> acc = identity_lift<Mp>();
  for (Letter x : relator(g)) {
    LiftedMap<Mp> l = canonical_lift(gens[static_cast<std::size_t>(std::abs(x) - 1)]);
    acc = compose(acc, x > 0 ? l : inverse(l));
  }
  return trans(acc).value;
}

}  // namespace detail

/// Builds and validates the representation; deterministic in g.
inline FuchsianRep build_rep(int g) {
  check_genus(g);
  std::vector<Mat2<Mp>> gens = detail::polygon_pairings<Mp>(g);
  Mat2<Mp> r = detail::rotation_half<Mp>(pi_v<Mp>() * Mp(kGenericTurn));
  for (auto& m : gens) m = (r * m * r.inverse()).sign_normalized();

  FuchsianRep rep;
  rep.genus = g;
  std::int64_t e = detail::relator_translation(gens, g);
  if (e == 2 * g - 2) {
    for (auto& m : gens) m = Mat2<Mp>{m.a, -m.b, -m.c, m.d}.sign_normalized();
    rep.orientation_flipped = true;
    e = detail::relator_translation(gens, g);
  }
  if (e != 2 - 2 * g)
    throw ValidationError("lifted relator translates by " + std::to_string(e) + ", expected " +
                          std::to_string(2 - 2 * g));
  rep.gens_mp = gens;
  for (const auto& m : gens) rep.gens.push_back(m.cast<double>());

  for (int k = 1; k <= 2 * g; ++k)
    if (classify(rep.gens[k - 1]) != MatrixClass::Hyperbolic)
      throw ValidationError("generator " + letter_to_string(static_cast<Letter>(k)) +
                            " is not hyperbolic");
  double res = distance_to_identity(evaluate<double>(rep, relator(g)));
  if (!(res < kRelatorResidual))
    throw ValidationError("relator residual " + std::to_string(res) + " too large");
  return rep;
}

}  // namespace rotnum
