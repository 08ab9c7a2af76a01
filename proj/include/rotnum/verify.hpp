#pragma once

// Seeded property suites.  Each property is a predicate on sample i, drawing
// its randomness from Rng::substream(seed, i); a failing sample returns a
// counterexample description.  Results are independent of the thread count.

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rotnum/cocycle.hpp"
#include "rotnum/parallel.hpp"
#include "rotnum/sampling.hpp"
#include "rotnum/winding.hpp"

namespace rotnum {

struct PropertyResult {
  std::string suite, name;
  std::size_t samples = 0, failures = 0;
  std::optional<std::string> counterexample;  // first failing sample
  bool certification_failure = false;
  double seconds = 0;
  bool passed() const { return failures == 0; }
};

struct VerifyConfig {
  int genus = 2;
  std::uint64_t seed = 1;
  std::size_t samples = 100;  // base count; suites scale it per property
  std::size_t max_len = 12;
  unsigned threads = 1;
  Precision precision = Precision::Extended;
};

using Check = std::function<std::optional<std::string>(Rng&)>;

inline PropertyResult run_property(const std::string& suite, const std::string& name,
                                   std::size_t samples, std::uint64_t seed, unsigned threads,
                                   const Check& check) {
  PropertyResult r;
  r.suite = suite;
  r.name = name;
  r.samples = samples;
  auto t0 = std::chrono::steady_clock::now();
  // Each property gets its own stream family so suites do not share samples.
  std::uint64_t family = seed ^ splitmix64(std::hash<std::string>{}(suite + "/" + name));
  struct Outcome {
    std::optional<std::string> failure;
    bool certification = false;
  };
  std::vector<Outcome> out = parallel_map(samples, threads, [&](std::size_t i) {
    Rng rng = Rng::substream(family, i);
    try {
      return Outcome{check(rng), false};
    } catch (const CertificationError& e) {
      return Outcome{std::string("certification failure: ") + e.what(), true};
    } catch (const Error& e) {
      return Outcome{std::string("error: ") + e.what(), false};
    }
  });
  for (const auto& o : out) {
    if (!o.failure) continue;
    ++r.failures;
    r.certification_failure |= o.certification;
    if (!r.counterexample) r.counterexample = o.failure;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

namespace detail {

inline std::string pair_text(const Word& a, const Word& b) {
  return "(" + to_string(a) + " | " + to_string(b) + ")";
}

inline Word random_nontrivial(Rng& rng, int g, std::size_t max_len) {
  for (;;) {
    Word w = random_word(rng, g, 1, max_len);
    if (!surface_trivial(w)) return w;
  }
}

/// v equal to u in the surface group: relator conjugates inserted at random
/// positions or a random word conjugated onto both sides.
inline Word surface_variant(Rng& rng, const Word& u) {
  const int g = u.genus();
  std::vector<Letter> raw(u.begin(), u.end());
  int inserts = static_cast<int>(rng.between(1, 2));
  for (int k = 0; k < inserts; ++k) {
    Word w = random_word(rng, g, 0, 3);
    Word r = conjugate(power(relator(g), rng.below(2) ? 1 : -1), w);
    std::size_t at = rng.below(raw.size() + 1);
    raw.insert(raw.begin() + static_cast<std::ptrdiff_t>(at), r.begin(), r.end());
  }
  return reduce(g, raw, SIZE_MAX);
}

inline bool matrices_equal(const FuchsianRep& rep, const Word& u, const Word& v, double tol) {
  return projective_residual(evaluate<Mp>(rep, u), evaluate<Mp>(rep, v)) < tol;
}

}  // namespace detail

inline std::vector<PropertyResult> suite_wordcore(const VerifyConfig& c, const FuchsianRep& rep) {
  const int g = c.genus;
  std::vector<PropertyResult> out;
  auto run = [&](const char* name, std::size_t n, Check f) {
    out.push_back(run_property("wordcore", name, n, c.seed, c.threads, f));
  };
  run("reduce_idempotent_and_inverse", 10 * c.samples, [g](Rng& rng) -> std::optional<std::string> {
    Word u = random_word(rng, g, 0, 32);
    if (reduce(g, u.letters()) != u) return "reduce not idempotent on " + to_string(u);
    if (!multiply(u, invert(u)).empty()) return "u u^-1 nonempty for " + to_string(u);
    return std::nullopt;
  });
  run("intersection_antisymmetric_bilinear", 5 * c.samples, [g](Rng& rng) -> std::optional<std::string> {
    Word a = random_word(rng, g, 0, 12), b = random_word(rng, g, 0, 12), d = random_word(rng, g, 0, 12);
    if (intersection(a, b) != -intersection(b, a)) return "antisymmetry " + detail::pair_text(a, b);
    if (intersection(multiply(a, d), b) != intersection(a, b) + intersection(d, b))
      return "bilinearity " + detail::pair_text(a, b) + " with " + to_string(d);
    return std::nullopt;
  });
  run("surface_equal_matches_matrices", 5 * c.samples, [g, &rep](Rng& rng) -> std::optional<std::string> {
    Word u = random_word(rng, g, 0, 16);
    Word v = rng.below(2) ? detail::surface_variant(rng, u) : random_word(rng, g, 0, 16);
    bool word_eq = surface_equal(u, v);
    bool mat_eq = detail::matrices_equal(rep, u, v, 1e-6);
    if (word_eq != mat_eq) return "disagreement on " + detail::pair_text(u, v);
    return std::nullopt;
  });
  run("dehn_cyclic_length_monotone", 5 * c.samples, [g](Rng& rng) -> std::optional<std::string> {
    Word u = detail::surface_variant(rng, random_word(rng, g, 0, 12));
    RelatorTables t(g);
    std::size_t len = cyclically_reduced(u).size();
    for (int round = 0; round < 64; ++round) {
      DehnResult d = dehn_reduce_cyclic(u, t);
      std::size_t next = cyclically_reduced(d.word).size();
      if (next > len) return "cyclic length grew on " + to_string(u);
      if (d.word == u) return std::nullopt;
      u = d.word;
      len = next;
    }
    return "no fixed point of cyclic reduction";
  });
  return out;
}

inline std::vector<PropertyResult> suite_mapclass(const VerifyConfig& c) {
  const int g = c.genus;
  std::vector<PropertyResult> out;
  auto run = [&](const char* name, std::size_t n, Check f) {
    out.push_back(run_property("mapclass", name, n, c.seed, c.threads, f));
  };
  run("builtins_fix_relator", 1, [g](Rng&) -> std::optional<std::string> {
    for (const auto& f : builtin_classes(g))
      if (f.apply(relator(g), SIZE_MAX) != relator(g)) return f.label() + " moves c";
    return std::nullopt;
  });
  run("push_word_descends_to_conjugation", 5 * c.samples, [g](Rng& rng) -> std::optional<std::string> {
    Word w = random_word(rng, g, 0, 8);
    MappingClass f = point_push_word(w, SIZE_MAX);
    if (f.apply(relator(g), SIZE_MAX) != relator(g)) return "push(" + to_string(w) + ") moves c";
    for (int k = 1; k <= 2 * g; ++k) {
      Word x = generator(g, static_cast<Letter>(k));
      if (!surface_equal(f.apply(x, SIZE_MAX), conjugate(x, w)))
        return "push(" + to_string(w) + ") on " + to_string(x);
    }
    return std::nullopt;
  });
  run("compose_associative", c.samples, [g](Rng& rng) -> std::optional<std::string> {
    const auto classes = builtin_classes(g);
    const MappingClass &f = rng.pick(classes), &h = rng.pick(classes), &k = rng.pick(classes);
    MappingClass l = compose(compose(f, h), k), r = compose(f, compose(h, k));
    if (l.forward() != r.forward() || l.backward() != r.backward())
      return f.label() + ", " + h.label() + ", " + k.label();
    return std::nullopt;
  });
  run("image_table_matches_expansion", c.samples, [g](Rng& rng) -> std::optional<std::string> {
    Word w = random_word(rng, g, 1, 6), x = random_word(rng, g, 1, 8);
    ClassProduct p = push_product(w);
    Word full = p.apply(x, SIZE_MAX);
    ReducedImage img = ImageTable(p).apply(x);
    // Dehn forms are not unique: compare through the quotient, whose relator
    // count is well defined.
    DehnResult d = dehn_reduce(full);
    DehnResult q = dehn_reduce(multiply(d.word, invert(img.word), SIZE_MAX));
    if (!q.word.empty() || q.relator_count != img.relator_count - d.relator_count)
      return "push(" + to_string(w) + ") on " + to_string(x);
    return std::nullopt;
  });
  return out;
}

inline std::vector<PropertyResult> suite_fuchs(const VerifyConfig& c, const FuchsianRep& rep) {
  const int g = c.genus;
  std::vector<PropertyResult> out;
  auto run = [&](const char* name, std::size_t n, Check f) {
    out.push_back(run_property("fuchs", name, n, c.seed, c.threads, f));
  };
  run("rep_invariants", 1, [&rep, g](Rng&) -> std::optional<std::string> {
    for (int k = 1; k <= 2 * g; ++k)
      if (std::abs(rep.gens[k - 1].trace()) <= 2) return "generator " + std::to_string(k) + " not hyperbolic";
    if (distance_to_identity(evaluate<Mp>(rep, relator(g))) >= kRelatorResidual) return "relator residual";
    return std::nullopt;
  });
  run("homomorphism", 5 * c.samples, [&rep, g](Rng& rng) -> std::optional<std::string> {
    Word u = random_word(rng, g, 0, 8), v = random_word(rng, g, 0, 8);
    Mat2<double> uv = evaluate(rep, multiply(u, v));
    Mat2<double> prod = evaluate(rep, u) * evaluate(rep, v);
    if (projective_residual(uv, prod) > 1e-9) return detail::pair_text(u, v);
    return std::nullopt;
  });
  run("nontrivial_words_not_elliptic", 5 * c.samples, [&rep, g](Rng& rng) -> std::optional<std::string> {
    Word w = random_word(rng, g, 1, 16);
    if (surface_trivial(w)) return std::nullopt;
    if (classify(evaluate<Mp>(rep, w)) == MatrixClass::Elliptic) return "elliptic image of " + to_string(w);
    return std::nullopt;
  });
  run("evaluation_respects_relations", 5 * c.samples, [&rep, g](Rng& rng) -> std::optional<std::string> {
    Word u = random_word(rng, g, 0, 12);
    Word v = detail::surface_variant(rng, u);
    if (!detail::matrices_equal(rep, u, v, 1e-9)) return detail::pair_text(u, v);
    return std::nullopt;
  });
  return out;
}

inline std::vector<PropertyResult> suite_circlelift(const VerifyConfig& c, const LiftContext& ctx) {
  const int g = c.genus;
  const std::size_t L = c.max_len;
  std::vector<PropertyResult> out;
  auto run = [&](const char* name, std::size_t n, Check f) {
    out.push_back(run_property("circlelift", name, n, c.seed, c.threads, f));
  };
  run("euler_number", 1, [&ctx, g](Rng&) -> std::optional<std::string> {
    TransResult t = ctx.trans_of([&](auto tag) { return ctx.evaluate_word<decltype(tag)>(relator(g)); });
    if (t.value != 2 - 2 * g) return "trans(G~(c)) = " + std::to_string(t.value);
    return std::nullopt;
  });
  run("trans_conjugation_invariant", 5 * c.samples, [&ctx, g, L](Rng& rng) -> std::optional<std::string> {
    Word k = random_word(rng, g, 1, L), l = random_word(rng, g, 0, L);
    if (ctx.trans_word(conjugate(k, l)).value != ctx.trans_word(k).value) return detail::pair_text(k, l);
    return std::nullopt;
  });
  run("trans_central_shift", 5 * c.samples, [&ctx, g, L](Rng& rng) -> std::optional<std::string> {
    Word w = random_word(rng, g, 1, L);
    std::int64_t k = rng.between(-3, 3);
    TransResult t = ctx.trans_of([&](auto tag) {
      using Real = decltype(tag);
      return compose(central_translation<Real>(k), ctx.lift_word<Real>(w));
    });
    if (t.value != k + ctx.trans_word(w).value) return to_string(w) + " shifted by " + std::to_string(k);
    return std::nullopt;
  });
  run("tau_range", 10 * c.samples, [&ctx, g, L](Rng& rng) -> std::optional<std::string> {
    Word a = detail::random_nontrivial(rng, g, L), b = detail::random_nontrivial(rng, g, L);
    std::int64_t t = ctx.tau(a, b);
    if (t < -1 || t > 1) return detail::pair_text(a, b);
    return std::nullopt;
  });
  run("tau_is_cocycle", 3 * c.samples, [&ctx, g, L](Rng& rng) -> std::optional<std::string> {
    Word a = random_word(rng, g, 0, L), b = random_word(rng, g, 0, L), d = random_word(rng, g, 0, L);
    std::int64_t s = ctx.tau(b, d) - ctx.tau(multiply(a, b), d) + ctx.tau(a, multiply(b, d)) - ctx.tau(a, b);
    if (s != 0) return detail::pair_text(a, b) + " with " + to_string(d);
    return std::nullopt;
  });
  run("tau_offset_independent", c.samples, [&ctx, g, L](Rng& rng) -> std::optional<std::string> {
    std::vector<std::int64_t> off;
    for (int k = 0; k < 2 * g; ++k) off.push_back(rng.between(-2, 2));
    LiftContext other(ctx.rep(), off, ctx.precision(), ctx.budget());
    Word a = random_word(rng, g, 0, L), b = random_word(rng, g, 0, L);
    if (ctx.tau(a, b) != other.tau(a, b)) return detail::pair_text(a, b);
    return std::nullopt;
  });
  run("tau_mapping_class_invariant", 2 * c.samples, [&ctx, g, L](Rng& rng) -> std::optional<std::string> {
    const auto classes = builtin_classes(g);
    const MappingClass& f = rng.pick(classes);
    ImageTable t(f);
    Word a = random_word(rng, g, 0, L), b = random_word(rng, g, 0, L);
    if (ctx.tau(t.apply(a).word, t.apply(b).word) != ctx.tau(a, b))
      return f.label() + " on " + detail::pair_text(a, b);
    return std::nullopt;
  });
  run("trans_iterative_oracle", c.samples, [&ctx, g, L](Rng& rng) -> std::optional<std::string> {
    Word w = random_word(rng, g, 1, L);
    // Orbits converge to the attracting point, so iterating in double is stable.
    LiftedMap<double> l = lift_cast<double>(ctx.lift_word<Mp>(w));
    double it = trans_iterative(l, std::int64_t{1} << 16);
    double ex = static_cast<double>(ctx.trans_word(w).value);
    if (std::abs(it - ex) > 2.0 / (1 << 16)) return to_string(w);
    return std::nullopt;
  });
  return out;
}

inline std::vector<PropertyResult> suite_cocycle(const VerifyConfig& c, const LiftContext& ctx) {
  const int g = c.genus;
  const std::size_t L = c.max_len;
  std::vector<PropertyResult> out;
  auto run = [&](const char* name, std::size_t n, Check f) {
    out.push_back(run_property("cocycle", name, n, c.seed, c.threads, f));
  };
  const auto classes = builtin_classes(g);
  run("push_a1_values", 1, [&ctx, g](Rng&) -> std::optional<std::string> {
    HomologyTable t = R_on_homology(ctx, point_push(g, gen_a(1)));
    for (int k = 0; k < 2 * g; ++k)
      if (t.values[k] != (k == 1 ? ctx.euler() : 0)) return "R(push(a1)) on generator " + std::to_string(k + 1);
    return std::nullopt;
  });
  run("pointpush_bilinear", 2 * c.samples, [&ctx, g](Rng& rng) -> std::optional<std::string> {
    Word a = random_word(rng, g, 0, 16), b = random_word(rng, g, 0, 16);
    if (!pointpush_bilinear(ctx, a, b)) return detail::pair_text(a, b);
    return std::nullopt;
  });
  run("additivity", 5 * c.samples, [&ctx, &classes, g, L](Rng& rng) -> std::optional<std::string> {
    const MappingClass& f = rng.pick(classes);
    Word a = random_word(rng, g, 0, L), b = random_word(rng, g, 0, L);
    if (R(ctx, f, multiply(a, b)) != R(ctx, f, a) + R(ctx, f, b)) return f.label() + " on " + detail::pair_text(a, b);
    return std::nullopt;
  });
  run("crossed_law", 3 * c.samples, [&ctx, &classes, g, L](Rng& rng) -> std::optional<std::string> {
    const MappingClass &f = rng.pick(classes), &h = rng.pick(classes);
    Word w = random_word(rng, g, 0, L);
    if (!check_crossed(ctx, f, h, w)) return f.label() + ", " + h.label() + " on " + to_string(w);
    return std::nullopt;
  });
  run("c_conjugate_invariance", c.samples, [&ctx, &classes, g, L](Rng& rng) -> std::optional<std::string> {
    const MappingClass& f = rng.pick(classes);
    int k = static_cast<int>(rng.between(-2, 2));
    Word w = random_word(rng, g, 0, L);
    if (R(ctx, c_conjugate(f, k), w) != R(ctx, f, w)) return f.label() + " k=" + std::to_string(k) + " on " + to_string(w);
    return std::nullopt;
  });
  run("lift_change_law", c.samples, [&ctx, &classes, g, L](Rng& rng) -> std::optional<std::string> {
    std::vector<std::int64_t> off;
    for (int k = 0; k < 2 * g; ++k) off.push_back(rng.between(-2, 2));
    LiftContext other(ctx.rep(), off, ctx.precision(), ctx.budget());
    const MappingClass& f = rng.pick(classes);
    Word w = random_word(rng, g, 0, L);
    if (R(other, f, w) - R(ctx, f, w) != lift_change(ctx, other, f, w)) return f.label() + " on " + to_string(w);
    return std::nullopt;
  });
  run("push_lift_independence", c.samples, [&ctx, g, L](Rng& rng) -> std::optional<std::string> {
    std::vector<std::int64_t> off;
    for (int k = 0; k < 2 * g; ++k) off.push_back(rng.between(-2, 2));
    LiftContext other(ctx.rep(), off, ctx.precision(), ctx.budget());
    ClassProduct p = push_product(random_word(rng, g, 1, 8));
    Word w = random_word(rng, g, 0, L);
    if (R(other, p, w) != R(ctx, p, w)) return p.label() + " on " + to_string(w);
    return std::nullopt;
  });
  run("morita_defect_is_intersection", 5 * c.samples, [g, L](Rng& rng) -> std::optional<std::string> {
    auto [a, b] = random_reduced_pair(rng, g, L);
    if (defect(morita_cochain(g), a, b) != intersection(a, b)) return detail::pair_text(a, b);
    return std::nullopt;
  });
  run("defect_trans_is_tau", c.samples, [&ctx, g, L](Rng& rng) -> std::optional<std::string> {
    Word a = random_word(rng, g, 0, L), b = random_word(rng, g, 0, L);
    if (defect(trans_cochain(ctx), a, b) != ctx.tau(a, b)) return detail::pair_text(a, b);
    return std::nullopt;
  });
  run("punctured_torus_tau_zero", 2 * c.samples, [&ctx, g, L](Rng& rng) -> std::optional<std::string> {
    Word a = detail::random_nontrivial(rng, g, L), b = detail::random_nontrivial(rng, g, L);
    CoverType t = classify_cover(ctx, a, b);
    if (t == CoverType::Degenerate) return std::nullopt;
    if (ctx.tau(a, b) != cover_theta(t)) return std::string(to_string(t)) + " " + detail::pair_text(a, b);
    return std::nullopt;
  });
  return out;
}

inline std::vector<PropertyResult> suite_windnum(const VerifyConfig& c, const LiftContext& ctx) {
  const int g = c.genus;
  std::vector<PropertyResult> out;
  auto run = [&](const char* name, std::size_t n, Check f) {
    out.push_back(run_property("windnum", name, n, c.seed, c.threads, f));
  };
  const FieldModel x = builtin_field(g, 0), y = builtin_field(g, 1);
  run("omega_integral", 5 * c.samples, [&x, &y, g](Rng& rng) -> std::optional<std::string> {
    Word w = random_word(rng, g, 0, 64);
    for (const FieldModel* f : {&x, &y})
      if (turning(*f, w) % f->unit() != 0) return f->name() + " on " + to_string(w);
    return std::nullopt;
  });
  run("defect_field_independent", 5 * c.samples, [&x, &y, g](Rng& rng) -> std::optional<std::string> {
    Word a = random_word(rng, g, 0, 16), b = random_word(rng, g, 0, 16);
    if (defect_omega(x, a, b) != defect_omega(y, a, b)) return detail::pair_text(a, b);
    return std::nullopt;
  });
  run("field_difference_additive", 5 * c.samples, [&x, &y, g](Rng& rng) -> std::optional<std::string> {
    Word a = random_word(rng, g, 0, 16), b = random_word(rng, g, 0, 16);
    auto d = [&](const Word& w) { return omega(x, w) - omega(y, w); };
    if (d(multiply(a, b)) != d(a) + d(b)) return detail::pair_text(a, b);
    return std::nullopt;
  });
  run("handle_pairs_zero_defect", c.samples, [&ctx, &x, g](Rng& rng) -> std::optional<std::string> {
    Word w = random_word(rng, g, 0, 6);
    int i = static_cast<int>(rng.between(1, g));
    Word a = conjugate(generator(g, gen_a(i)), invert(w)), b = conjugate(generator(g, gen_b(i)), invert(w));
    if (defect_omega(x, a, b) != 0 || ctx.tau(a, b) != 0) return detail::pair_text(a, b);
    return std::nullopt;
  });
  return out;
}

inline std::vector<PropertyResult> run_suites(const VerifyConfig& c, const std::string& which = "all") {
  FuchsianRep rep = build_rep(c.genus);
  LiftContext ctx(rep, {}, c.precision);
  std::vector<PropertyResult> all;
  auto add = [&](const std::string& name, auto make) {
    if (which == "all" || which == name)
      for (auto& r : make()) all.push_back(std::move(r));
  };
  add("wordcore", [&] { return suite_wordcore(c, rep); });
  add("mapclass", [&] { return suite_mapclass(c); });
  add("fuchs", [&] { return suite_fuchs(c, rep); });
  add("circlelift", [&] { return suite_circlelift(c, ctx); });
  add("cocycle", [&] { return suite_cocycle(c, ctx); });
  add("windnum", [&] { return suite_windnum(c, ctx); });
  return all;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"wordcore", "mapclass", "fuchs", "circlelift", "cocycle", "windnum"};
  return names;
}

}  // namespace rotnum
