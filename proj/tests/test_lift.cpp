#include <gtest/gtest.h>

#include "rotnum/lift_context.hpp"
#include "rotnum/mapping_class.hpp"
#include "rotnum/sampling.hpp"

using namespace rotnum;

namespace {

const LiftContext& context(int g) {
  static const LiftContext c2(build_rep(2)), c3(build_rep(3)), c4(build_rep(4));
  return g == 2 ? c2 : g == 3 ? c3 : c4;
}

std::vector<std::int64_t> random_offsets(Rng& rng, int g) {
  std::vector<std::int64_t> off;
  for (int k = 0; k < 2 * g; ++k) off.push_back(rng.between(-2, 2));
  return off;
}

}  // namespace

TEST(EvaluateWord, Examples) {
  const LiftContext& ctx = context(2);
  LiftedMap<double> e = ctx.evaluate_word<double>(Word(2));
  EXPECT_EQ(e.offset, 0);
  EXPECT_EQ(distance_to_identity(e.matrix), 0.0);
  // x x^-1 as an unreduced product of lifts is the identity lift exactly
  for (Letter x = 1; x <= 4; ++x) {
    LiftedMap<double> p = compose(ctx.letter_lift<double>(x), ctx.letter_lift<double>(static_cast<Letter>(-x)));
    EXPECT_EQ(p.offset, 0);
    EXPECT_LT(distance_to_identity(p.matrix), 1e-12);
  }
}

TEST(EvaluateWord, BudgetRejectsLongWords) {
  LiftContext ctx(build_rep(2), {}, Precision::Extended, 16);
  Word w = power(parse_word("a1 b2", 2), 9);
  EXPECT_THROW(ctx.evaluate_word<double>(w), LengthError);
  EXPECT_NO_THROW(ctx.evaluate_word<double>(power(parse_word("a1 b2", 2), 8)));
}

TEST(EulerNumber, RelatorLiftsToCentralTranslation) {
  for (int g : {2, 3, 4}) {
    const LiftContext& ctx = context(g);
    TransResult t = ctx.trans_of([&](auto tag) { return ctx.evaluate_word<decltype(tag)>(relator(g)); });
    EXPECT_EQ(t.value, 2 - 2 * g);
    EXPECT_TRUE(t.certified);
    // the lift at 50 digits is a translation: matrix within rounding of I
    LiftedMap<Mp> l = ctx.evaluate_word<Mp>(relator(g));
    EXPECT_LT(distance_to_identity(l.matrix), 1e-30);
    for (double x : {0.0, 0.3, 0.77}) EXPECT_NEAR(to_double(l(Mp(x))) - x, 2 - 2 * g, 1e-30);
  }
}

TEST(EulerNumber, IterativeOracle) {
  const LiftContext& ctx = context(2);
  LiftedMap<Mp> l = ctx.evaluate_word<Mp>(relator(2));
  EXPECT_NEAR(trans_iterative(l, 64), -2.0, 1e-20);
}

TEST(TransWord, ConjugationAndPowers) {
  const LiftContext& ctx = context(2);
  for (int i = 0; i < 200; ++i) {
    Rng rng = Rng::substream(61, static_cast<std::uint64_t>(i));
    Word k = random_word(rng, 2, 1, 10), l = random_word(rng, 2, 0, 10);
    EXPECT_EQ(ctx.trans_word(conjugate(k, l)).value, ctx.trans_word(k).value);
    // trans is homogeneous on cyclic subgroups
    EXPECT_EQ(ctx.trans_word(power(k, 2)).value, 2 * ctx.trans_word(k).value);
  }
}

TEST(TransWord, RelatorFactorsShiftByEuler) {
  const LiftContext& ctx = context(3);
  for (int i = 0; i < 100; ++i) {
    Rng rng = Rng::substream(62, static_cast<std::uint64_t>(i));
    Word w = random_word(rng, 3, 1, 10);
    int n = static_cast<int>(rng.between(-2, 2));
    EXPECT_EQ(ctx.trans_word(multiply(power(relator(3), n), w)).value, ctx.trans_word(w).value + n * ctx.euler());
  }
}

TEST(TransWord, MatchesIterationAtHighPrecision) {
  const LiftContext& ctx = context(2);
  for (int i = 0; i < 100; ++i) {
    Rng rng = Rng::substream(63, static_cast<std::uint64_t>(i));
    Word w = random_word(rng, 2, 1, 12);
    double it = trans_iterative(lift_cast<double>(ctx.lift_word<Mp>(w)), 1 << 16);
    EXPECT_LE(std::abs(it - static_cast<double>(ctx.trans_word(w).value)), 2.0 / (1 << 16)) << to_string(w);
  }
}

TEST(Tau, Examples) {
  const LiftContext& ctx = context(2);
  Word a1 = parse_word("a1", 2);
  EXPECT_EQ(ctx.tau(Word(2), a1), 0);
  EXPECT_EQ(ctx.tau(a1, Word(2)), 0);
  for (int i = 0; i < 100; ++i) {
    Rng rng = Rng::substream(64, static_cast<std::uint64_t>(i));
    Word a = random_word(rng, 2, 1, 12);
    if (surface_trivial(a)) continue;
    EXPECT_EQ(ctx.tau(a, a), 0) << to_string(a);
    EXPECT_EQ(ctx.tau(a, invert(a)), 0) << to_string(a);
  }
}

TEST(TauProps, RangeAndCocycle) {
  for (int g : {2, 3}) {
    const LiftContext& ctx = context(g);
    int nonzero = 0;
    for (int i = 0; i < 150; ++i) {
      Rng rng = Rng::substream(65, static_cast<std::uint64_t>(i));
      Word a = random_word(rng, g, 0, 10), b = random_word(rng, g, 0, 10), c = random_word(rng, g, 0, 10);
      std::int64_t t = ctx.tau(a, b);
      EXPECT_TRUE(t >= -1 && t <= 1);
      nonzero += t != 0;
      EXPECT_EQ(ctx.tau(b, c) - ctx.tau(multiply(a, b), c) + ctx.tau(a, multiply(b, c)) - ctx.tau(a, b), 0);
    }
    EXPECT_GT(nonzero, 10) << "cocycle should not vanish identically";
  }
}

TEST(TauProps, OffsetIndependent) {
  const LiftContext& ctx = context(2);
  for (int i = 0; i < 100; ++i) {
    Rng rng = Rng::substream(66, static_cast<std::uint64_t>(i));
    LiftContext other(ctx.rep(), random_offsets(rng, 2));
    Word a = random_word(rng, 2, 0, 10), b = random_word(rng, 2, 0, 10);
    EXPECT_EQ(other.tau(a, b), ctx.tau(a, b));
  }
}

TEST(TauProps, MappingClassInvariant) {
  const LiftContext& ctx = context(2);
  const auto classes = builtin_classes(2);
  for (int i = 0; i < 200; ++i) {
    Rng rng = Rng::substream(67, static_cast<std::uint64_t>(i));
    const MappingClass& f = rng.pick(classes);
    Word a = random_word(rng, 2, 0, 8), b = random_word(rng, 2, 0, 8);
    EXPECT_EQ(ctx.tau(f.apply(a), f.apply(b)), ctx.tau(a, b)) << f.label();
  }
}

TEST(Offsets, ShiftTransByAbelianPairing) {
  const LiftContext& ctx = context(2);
  for (int i = 0; i < 100; ++i) {
    Rng rng = Rng::substream(68, static_cast<std::uint64_t>(i));
    auto off = random_offsets(rng, 2);
    LiftContext other(ctx.rep(), off);
    Word w = random_word(rng, 2, 0, 10);
    AbelianVector v = abelianize(w);
    std::int64_t shift = 0;
    for (std::size_t k = 0; k < off.size(); ++k) shift += off[k] * v[k];
    EXPECT_EQ(other.trans_word(w).value, ctx.trans_word(w).value + shift);
  }
  EXPECT_THROW(LiftContext(ctx.rep(), {1, 2, 3}), ArgumentError);
}

TEST(Precision, DoubleEitherCertifiesOrReports) {
  LiftContext dbl(build_rep(2), {}, Precision::Double);
  const LiftContext& ext = context(2);
  int certified = 0, refused = 0;
  for (int i = 0; i < 200; ++i) {
    Rng rng = Rng::substream(69, static_cast<std::uint64_t>(i));
    Word w = random_word(rng, 2, 1, 16);
    try {
      TransResult t = dbl.trans_word(w);
      EXPECT_FALSE(t.escalated);
      EXPECT_EQ(t.value, ext.trans_word(w).value);
      ++certified;
    } catch (const CertificationError&) {
      ++refused;
    }
  }
  EXPECT_GT(certified, 100);
  EXPECT_EQ(certified + refused, 200);
}
