#pragma once

// A lift G~ of the representation to the universal central extension: each
// generator k is sent to its canonical lift shifted by generator_offsets[k-1].
//
// Words are Dehn-reduced before evaluation.  Each removed relator conjugate
// contributes the central translation G~(c) = 2 - 2g, so
//   G~(w) = T^{(2-2g) n} G~(w')   (linear reduction, n = relator_count)
// exactly, and for translation numbers the cyclic reduction may be used.
// Evaluation runs in double and is repeated in 50-digit arithmetic when a
// branch cannot be certified.

#include <cstdint>
#include <span>
#include <vector>

#include "rotnum/circle.hpp"
#include "rotnum/dehn.hpp"
#include "rotnum/fuchsian.hpp"

namespace rotnum {

enum class Precision {
  Double,    // double only; certification failures are reported
  Extended,  // double, escalating to 50 digits on demand
};

inline constexpr std::size_t kDefaultEvalBudget = 256;

struct TransResult {
  std::int64_t value = 0;
  bool certified = false;
  double residual = 0;
  bool escalated = false;
};

class LiftContext {
 public:
  explicit LiftContext(FuchsianRep rep, std::vector<std::int64_t> offsets = {},
                       Precision precision = Precision::Extended,
                       std::size_t budget = kDefaultEvalBudget)
      : rep_(std::move(rep)),
        offsets_(std::move(offsets)),
        precision_(precision),
        budget_(budget),
        tables_(rep_.genus) {
    const std::size_t n = 2 * static_cast<std::size_t>(rep_.genus);
    if (offsets_.empty()) offsets_.assign(n, 0);
    if (offsets_.size() != n)
      throw ArgumentError("expected " + std::to_string(n) + " generator offsets");
    for (std::size_t k = 0; k < n; ++k) {
      push_lifts(lifts_d_, inv_d_, rep_.gens[k], offsets_[k]);
      push_lifts(lifts_mp_, inv_mp_, rep_.gens_mp[k], offsets_[k]);
    }
  }

  int genus() const noexcept { return rep_.genus; }
  const FuchsianRep& rep() const noexcept { return rep_; }
  const std::vector<std::int64_t>& offsets() const noexcept { return offsets_; }
  Precision precision() const noexcept { return precision_; }
  std::size_t budget() const noexcept { return budget_; }
  const RelatorTables& tables() const noexcept { return tables_; }

  /// Euler number of the lift: G~(c) is translation by this amount.
  std::int64_t euler() const noexcept { return 2 - 2 * static_cast<std::int64_t>(rep_.genus); }

  /// Lifted generator or inverse generator.
  template <class Real>
  const LiftedMap<Real>& letter_lift(Letter x) const {
    std::size_t i = static_cast<std::size_t>(std::abs(x) - 1);
    if constexpr (std::is_same_v<Real, double>)
      return x > 0 ? lifts_d_[i] : inv_d_[i];
    else
      return x > 0 ? lifts_mp_[i] : inv_mp_[i];
  }

  /// Left-to-right product of lifted letters, without any reduction.
  template <class Real>
  LiftedMap<Real> evaluate_word(const Word& w) const {
    check(w);
    if (w.size() > budget_)
      throw LengthError("evaluation of " + std::to_string(w.size()) +
                        " letters exceeds budget " + std::to_string(budget_));
    LiftedMap<Real> acc = identity_lift<Real>();
    for (Letter x : w) acc = compose(acc, letter_lift<Real>(x));
    return acc;
  }

  /// G~(w), computed on the linear Dehn form plus its central correction.
  template <class Real>
  LiftedMap<Real> lift_word(const Word& w) const {
    check(w);
    DehnResult d = dehn_reduce(w, tables_);
    LiftedMap<Real> l = evaluate_word<Real>(d.word);
    l.offset += euler() * d.relator_count;
    return l;
  }

  /// trans(G~(w)) as an exact integer.
  TransResult trans_word(const Word& w) const {
    check(w);
    DehnResult d = dehn_reduce_cyclic(w, tables_);
    const std::int64_t shift = euler() * d.relator_count;
    return with_escalation([&](auto tag) {
      using Real = decltype(tag);
      return trans(evaluate_word<Real>(d.word));
    }, shift);
  }

  /// trans of an explicit lifted-map expression, evaluated with escalation.
  /// `make` receives a value of the working real type.
  template <class Make>
  TransResult trans_of(Make make) const {
    return with_escalation([&](auto tag) { return trans(make(tag)); }, 0);
  }

  /// Euler cocycle trans(G~a G~b) - trans(G~a) - trans(G~b).
  std::int64_t tau(const Word& alpha, const Word& beta) const {
    TransResult both = trans_of([&](auto tag) {
      using Real = decltype(tag);
      return compose(lift_word<Real>(alpha), lift_word<Real>(beta));
    });
    TransResult ta = trans_of([&](auto tag) { return lift_word<decltype(tag)>(alpha); });
    TransResult tb = trans_of([&](auto tag) { return lift_word<decltype(tag)>(beta); });
    std::int64_t t = both.value - ta.value - tb.value;
    if (t < -1 || t > 1)
      throw ValidationError("Euler cocycle value " + std::to_string(t) + " outside {-1,0,1} on (" +
                            to_string(alpha) + ", " + to_string(beta) + ")");
    return t;
  }

 private:
  template <class Real>
  static void push_lifts(std::vector<LiftedMap<Real>>& fwd, std::vector<LiftedMap<Real>>& bwd,
                         const Mat2<Real>& m, std::int64_t offset) {
    LiftedMap<Real> l = canonical_lift(m);
    l.offset = offset;
    fwd.push_back(l);
    bwd.push_back(inverse(l));
  }

  void check(const Word& w) const {
    if (w.genus() != rep_.genus) throw ArgumentError("genus mismatch in lift context");
  }

  template <class F>
  TransResult with_escalation(F eval, std::int64_t shift) const {
    TransResult out;
    try {
      TransValue v = eval(double{});
      out = {v.value + shift, v.certified, v.residual, false};
      if (v.certified) return out;
      if (precision_ == Precision::Double)
        throw CertificationError("translation number not certified in double precision");
    } catch (const CertificationError&) {
      if (precision_ == Precision::Double) throw;
    }
    TransValue v = eval(Mp{});
    if (!v.certified) throw CertificationError("translation number not certified at 50 digits");
    return {v.value + shift, true, v.residual, true};
  }

  FuchsianRep rep_;
  std::vector<std::int64_t> offsets_;
  Precision precision_;
  std::size_t budget_;
  RelatorTables tables_;
  std::vector<LiftedMap<double>> lifts_d_, inv_d_;
  std::vector<LiftedMap<Mp>> lifts_mp_, inv_mp_;
};

}  // namespace rotnum
