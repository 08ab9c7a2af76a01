#pragma once

// The rotation-number crossed homomorphism
//   R(phi)(gamma) = trans(G~(f(gamma))) - trans(G~(gamma)),
// defects D(h)(a, b) = h(ab) - h(a) - h(b), a letter-pair potential whose
// defect is the intersection form, and an exploratory cover-type classifier
// for pairs of surface-group elements.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rotnum/dehn.hpp"
#include "rotnum/lift_context.hpp"
#include "rotnum/mapping_class.hpp"
#include "rotnum/sampling.hpp"

namespace rotnum {

/// An integer-valued function on F_2g with its values on the generators.
class Cochain {
 public:
  using Eval = std::function<std::int64_t(const Word&)>;

  Cochain(int genus, std::string name, Eval eval, bool homomorphism = false)
      : genus_(genus), name_(std::move(name)), eval_(std::move(eval)), homomorphism_(homomorphism) {
    for (int k = 1; k <= 2 * genus_; ++k)
      generator_values_.push_back(eval_(generator(genus_, static_cast<Letter>(k))));
  }

  int genus() const noexcept { return genus_; }
  const std::string& name() const noexcept { return name_; }
  bool homomorphism() const noexcept { return homomorphism_; }
  const std::vector<std::int64_t>& generator_values() const noexcept { return generator_values_; }

  std::int64_t operator()(const Word& w) const { return eval_(w); }

  /// Value predicted from the generator values and the abelianization.
  std::int64_t linear_value(const Word& w) const {
    AbelianVector v = abelianize(w);
    std::int64_t s = 0;
    for (std::size_t k = 0; k < v.size(); ++k) s += v[k] * generator_values_[k];
    return s;
  }

  /// For a cochain flagged as a homomorphism: its value agrees with the
  /// linear prediction on w.
  bool consistent_on(const Word& w) const { return !homomorphism_ || (*this)(w) == linear_value(w); }

 private:
  int genus_;
  std::string name_;
  Eval eval_;
  bool homomorphism_;
  std::vector<std::int64_t> generator_values_;
};

inline std::int64_t defect(const Cochain& h, const Word& a, const Word& b) {
  return h(multiply(a, b, SIZE_MAX)) - h(a) - h(b);
}

/// R on an explicit automorphism: f(gamma) is expanded letter by letter.
inline std::int64_t R(const LiftContext& ctx, const MappingClass& phi, const Word& gamma) {
  return ctx.trans_word(phi.apply(gamma)).value - ctx.trans_word(gamma).value;
}

/// R from reduced images: G~(N w) = T^{(2-2g) n} G~(w) for N a product of n
/// signed relator conjugates.
inline std::int64_t R(const LiftContext& ctx, const ImageTable& phi, const Word& gamma) {
  ReducedImage img = phi.apply(gamma);
  return ctx.trans_word(img.word).value + ctx.euler() * img.relator_count -
         ctx.trans_word(gamma).value;
}

inline std::int64_t R(const LiftContext& ctx, const ClassProduct& phi, const Word& gamma) {
  return R(ctx, ImageTable(phi), gamma);
}

/// R computed in `to` minus R computed in `from`: the offsets enter G~(w)
/// through T^{<k, [w]>}, so the change is <k_to - k_from, [f(gamma)] - [gamma]>.
inline std::int64_t lift_change(const LiftContext& from, const LiftContext& to, const MappingClass& phi,
                                const Word& gamma) {
  AbelianVector moved = abelianize(phi.apply(gamma)), base = abelianize(gamma);
  std::int64_t s = 0;
  for (std::size_t k = 0; k < moved.size(); ++k)
    s += (to.offsets()[k] - from.offsets()[k]) * (moved[k] - base[k]);
  return s;
}

/// trans o G~ as a cochain.
inline Cochain trans_cochain(const LiftContext& ctx) {
  return Cochain(ctx.genus(), "trans", [&ctx](const Word& w) { return ctx.trans_word(w).value; });
}

inline Cochain R_cochain(const LiftContext& ctx, const ClassProduct& phi) {
  return Cochain(
      ctx.genus(), "R(" + phi.label() + ")",
      [&ctx, table = ImageTable(phi)](const Word& w) { return R(ctx, table, w); }, true);
}

struct HomologyTable {
  std::vector<std::int64_t> values;  // R(phi) on a_1, b_1, ..., a_g, b_g
  int additivity_checks = 0;
};

/// Generator values of R(phi); additivity is spot-checked on `checks` random
/// pairs and a violation is a hard failure.
inline HomologyTable R_on_homology(const LiftContext& ctx, const ClassProduct& phi, int checks = 0,
                                   std::uint64_t seed = 0, std::size_t max_len = 8) {
  HomologyTable t;
  Cochain r = R_cochain(ctx, phi);
  t.values = r.generator_values();
  for (int i = 0; i < checks; ++i) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
    Word a = random_word(rng, ctx.genus(), 1, max_len);
    Word b = random_word(rng, ctx.genus(), 1, max_len);
    if (defect(r, a, b) != 0)
      throw ValidationError("R(" + phi.label() + ") is not additive on (" + to_string(a) + ", " +
                            to_string(b) + ")");
    if (!r.consistent_on(a)) throw ValidationError("R(" + phi.label() + ") is not linear on " + to_string(a));
    ++t.additivity_checks;
  }
  return t;
}

/// Sum over letter pairs i < j of <x_i, x_j>; its defect is the intersection
/// number.
inline std::int64_t morita_potential(const Word& w) {
  std::vector<std::int64_t> prefix(2 * static_cast<std::size_t>(w.genus()), 0);
  std::int64_t s = 0;
  for (Letter x : w) {
    // <prefix, x> with only the partner coordinate of x contributing
    std::size_t k = static_cast<std::size_t>(std::abs(x) - 1);
    std::size_t partner = is_a(x) ? k + 1 : k - 1;
    std::int64_t sign = x > 0 ? 1 : -1;
    // <a, b> = 1: a b-letter after a's counts +1, an a-letter after b's -1
    s += (is_a(x) ? -1 : 1) * prefix[partner] * sign;
    prefix[k] += sign;
  }
  return s;
}

inline Cochain morita_cochain(int genus) {
  return Cochain(genus, "morita", [](const Word& w) { return morita_potential(w); });
}

inline std::int64_t C_f(const MappingClass& phi, const Word& a) {
  return morita_potential(phi.apply(a, SIZE_MAX)) - morita_potential(a);
}

inline std::int64_t C_f(const ClassProduct& phi, const Word& a) {
  return morita_potential(phi.apply(a, SIZE_MAX)) - morita_potential(a);
}

/// R(phi eta)(gamma) == R(phi)(gamma) + R(eta)(f_phi(gamma)), on explicit
/// automorphisms.
inline bool check_crossed(const LiftContext& ctx, const MappingClass& phi, const MappingClass& eta,
                          const Word& gamma) {
  MappingClass phi_eta = compose(phi, eta, SIZE_MAX);
  return R(ctx, phi_eta, gamma) == R(ctx, phi, gamma) + R(ctx, eta, phi.apply(gamma));
}

/// The same law on factored classes; f_phi(gamma) = N w enters R(eta) through
/// w, since R(eta) does not see N.
inline bool check_crossed(const LiftContext& ctx, const ClassProduct& phi, const ClassProduct& eta,
                          const Word& gamma) {
  ImageTable tp(phi), te(eta), tpe(phi.then(eta));
  return R(ctx, tpe, gamma) == R(ctx, tp, gamma) + R(ctx, te, tp.apply(gamma).word);
}

/// R(P(a))(b) == (2 - 2g) i(a, b).
inline bool pointpush_bilinear(const LiftContext& ctx, const Word& a, const Word& b) {
  return R(ctx, push_product(a), b) == ctx.euler() * intersection(a, b);
}

enum class CoverType { PuncturedTorus, PantsMatched, PantsOpposed, PantsOther, Degenerate };

inline const char* to_string(CoverType t) {
  switch (t) {
    case CoverType::PuncturedTorus: return "punctured_torus";
    case CoverType::PantsMatched: return "pants_matched";
    case CoverType::PantsOpposed: return "pants_opposed";
    case CoverType::PantsOther: return "pants_other";
    case CoverType::Degenerate: return "degenerate";
  }
  return "?";
}

namespace detail {

// True iff t lies on the arc from `from` increasing (mod 1) to `to`.
inline bool on_arc(double from, double to, double t) {
  double span = to - from, off = t - from;
  span -= std::floor(span);
  off -= std::floor(off);
  return off < span;
}

struct Axis {
  double repelling, attracting;
};

inline Axis axis_of(const Mat2<Mp>& m) {
  FixedCoordinates<Mp> fp = fixed_coordinates(m);
  return {to_double(fp.repelling), to_double(fp.attracting)};
}

// The other axis lies on the left of `x`: on the arc from its attracting to
// its repelling point.
inline bool left_of(const Axis& x, double t) { return on_arc(x.attracting, x.repelling, t); }

}  // namespace detail

/// Cover type of the subgroup <alpha, beta> of the Fuchsian group.
///
/// Crossing axes: a punctured-torus cover.  Disjoint axes: a pants cover.
/// When tr(A) tr(B) tr(AB) < 0, alpha, beta and (alpha beta)^-1 are its three
/// boundary curves with coherent orientations, and the pair is matched when
/// the region between the axes lies on the left of both (in the increasing
/// circle coordinate) and opposed when it lies on the right of both.  All other
/// pants pairs (one curve reversed, or a generator that is not peripheral) are
/// PantsOther.
inline CoverType classify_cover(const LiftContext& ctx, const Word& alpha, const Word& beta) {
  const Word comm =
      multiply(multiply(multiply(invert(alpha), invert(beta), SIZE_MAX), alpha, SIZE_MAX), beta, SIZE_MAX);
  if (surface_trivial(comm)) return CoverType::Degenerate;
  try {
    Mat2<Mp> a = evaluate<Mp>(ctx.rep(), dehn_reduce(alpha, ctx.tables()).word);
    Mat2<Mp> b = evaluate<Mp>(ctx.rep(), dehn_reduce(beta, ctx.tables()).word);
    detail::Axis x = detail::axis_of(a), y = detail::axis_of(b);
    bool y_rep_left = detail::left_of(x, y.repelling);
    if (y_rep_left != detail::left_of(x, y.attracting)) return CoverType::PuncturedTorus;
    bool x_left = detail::left_of(y, x.repelling);
    bool coherent = a.trace() * b.trace() * (a * b).trace() < 0;
    if (!coherent || y_rep_left != x_left) return CoverType::PantsOther;
    return y_rep_left ? CoverType::PantsMatched : CoverType::PantsOpposed;
  } catch (const Error&) {
    return CoverType::Degenerate;
  }
}

/// Euler-cocycle value predicted by the cover type: 0 outside the coherent
/// pants cases, and the calibrated signs -1 (matched) and +1 (opposed).
inline int cover_theta(CoverType t) {
  switch (t) {
    case CoverType::PantsMatched: return -1;
    case CoverType::PantsOpposed: return 1;
    default: return 0;
  }
}

/// One row of the Question-2 style difference table C_f - R on point-pushes.
struct DifferenceRow {
  std::string phi;
  std::vector<std::int64_t> c_f, r, difference;  // on a_1, b_1, ..., a_g, b_g
};

inline std::vector<DifferenceRow> difference_report(const LiftContext& ctx) {
  std::vector<DifferenceRow> rows;
  const int g = ctx.genus();
  for (int s : {1, -1}) {
    for (int k = 1; k <= 2 * g; ++k) {
      MappingClass phi = point_push(g, static_cast<Letter>(s * k));
      DifferenceRow row{phi.label(), {}, {}, {}};
      for (int j = 1; j <= 2 * g; ++j) {
        Word y = generator(g, static_cast<Letter>(j));
        row.c_f.push_back(C_f(phi, y));
        row.r.push_back(R(ctx, phi, y));
        row.difference.push_back(row.c_f.back() - row.r.back());
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace rotnum
