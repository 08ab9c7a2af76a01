#pragma once

// Combinatorial winding numbers on S_g minus a disk.
//
// The spine is a single vertex with 2g loops.  Around the vertex the edge ends
// of handle i appear counterclockwise as
//   out(a_i), in(b_i), in(a_i), out(b_i),
// handle after handle, and following the next end counterclockwise traces the
// boundary word c.
//
// A FieldModel fixes a planar direction for each edge end (integers modulo a
// full turn U) plus an integer number of extra field rotations per loop.  A
// freely reduced cyclic word determines a taut edge cycle; smoothing it gives
//   petal y:       theta_in(y) + U/2 - theta_out(y), reduced to (-U/2, U/2],
//                  plus U * twist(y); the inverse letter turns by the negative;
//   vertex corner: the shortest rotation from the incoming heading to the
//                  outgoing one, which is never a half turn on a reduced cycle.
// The total divided by U is omega.  It is a class function on F_2g.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rotnum/cocycle.hpp"
#include "rotnum/parallel.hpp"
#include "rotnum/sampling.hpp"
#include "rotnum/word.hpp"

namespace rotnum {

struct EdgeEnd {
  Letter generator;  // positive
  bool out;          // start of the loop (true) or its end
  friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
};

struct Fatgraph {
  int genus = 0;
  std::vector<EdgeEnd> order;  // counterclockwise around the vertex
  Word boundary;
  int boundary_components = 0;

  int vertices() const { return 1; }
  int edges() const { return 2 * genus; }
  int euler_characteristic() const { return vertices() - edges(); }

  std::size_t position(EdgeEnd e) const {
    for (std::size_t p = 0; p < order.size(); ++p)
      if (order[p] == e) return p;
    throw ArgumentError("edge end not in fatgraph");
  }
};

namespace detail {

// Boundary cycles of a one-vertex ribbon graph: leave along an end, arrive at
// the opposite end of the same loop, continue with the next end ccw.
inline std::vector<Word> boundary_cycles(int genus, const std::vector<EdgeEnd>& order) {
  const std::size_t n = order.size();
  auto pos = [&](EdgeEnd e) {
    for (std::size_t p = 0; p < n; ++p)
      if (order[p] == e) return p;
    throw ValidationError("edge end missing from cyclic order");
  };
  std::vector<bool> used(n, false);
  std::vector<Word> cycles;
  for (std::size_t start = 0; start < n; ++start) {
    if (used[start]) continue;
    std::vector<Letter> letters;
    std::size_t p = start;
    while (!used[p]) {
      used[p] = true;
      EdgeEnd e = order[p];
      letters.push_back(e.out ? e.generator : static_cast<Letter>(-e.generator));
      std::size_t q = pos({e.generator, !e.out});
      p = (q + 1) % n;
    }
    cycles.push_back(word_from_reduced(genus, std::move(letters)));
  }
  return cycles;
}

inline bool is_rotation(const Word& u, const Word& v) {
  if (u.size() != v.size()) return false;
  const std::size_t n = u.size();
  for (std::size_t s = 0; s < n; ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = u[(i + s) % n] == v[i];
    if (ok) return true;
  }
  return n == 0;
}

}  // namespace detail

inline Fatgraph build_fatgraph(int genus) {
  check_genus(genus);
  Fatgraph fg;
  fg.genus = genus;
  for (int i = 1; i <= genus; ++i) {
    fg.order.push_back({gen_a(i), true});
    fg.order.push_back({gen_b(i), false});
    fg.order.push_back({gen_a(i), false});
    fg.order.push_back({gen_b(i), true});
  }
  std::vector<Word> cycles = detail::boundary_cycles(genus, fg.order);
  fg.boundary_components = static_cast<int>(cycles.size());
  if (cycles.size() != 1) throw ValidationError("spine has more than one boundary component");
  fg.boundary = cycles.front();
  const Word c = relator(genus);
  if (!detail::is_rotation(fg.boundary, c) && !detail::is_rotation(fg.boundary, invert(c)))
    throw ValidationError("boundary word " + to_string(fg.boundary) + " is not a rotation of c");
  return fg;
}

class FieldModel {
 public:
  /// `angles[p]` is the direction of the edge end at position p of the
  /// fatgraph order, in units of U^-1 full turns; `twists[k-1]` belongs to
  /// generator k.
  FieldModel(Fatgraph graph, std::int64_t unit, std::vector<std::int64_t> angles,
             std::vector<std::int64_t> twists, std::string name)
      : graph_(std::move(graph)), unit_(unit), twists_(std::move(twists)), name_(std::move(name)) {
    const std::size_t n = graph_.order.size();
    if (unit_ <= 0 || unit_ % 2 != 0) throw ValidationError("full turn must be a positive even integer");
    if (angles.size() != n || twists_.size() != n / 2)
      throw ValidationError("field model size does not match the fatgraph");
    theta_out_.assign(n / 2, 0);
    theta_in_.assign(n / 2, 0);
    for (std::size_t p = 0; p < n; ++p) {
      std::int64_t t = ((angles[p] % unit_) + unit_) % unit_;
      angles[p] = t;
      const EdgeEnd& e = graph_.order[p];
      (e.out ? theta_out_ : theta_in_)[static_cast<std::size_t>(e.generator - 1)] = t;
    }
    // Directions must be distinct and increase counterclockwise in the
    // fatgraph order (one full wind around the vertex).
    std::int64_t total = 0;
    for (std::size_t p = 0; p < n; ++p) {
      std::int64_t step = angles[(p + 1) % n] - angles[p];
      step = ((step % unit_) + unit_) % unit_;
      if (step == 0) throw ValidationError("field model has coincident edge-end directions");
      total += step;
    }
    if (total != unit_) throw ValidationError("edge-end directions do not follow the cyclic order");
  }

  const Fatgraph& graph() const noexcept { return graph_; }
  std::int64_t unit() const noexcept { return unit_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<std::int64_t>& twists() const noexcept { return twists_; }

  /// Direction of the edge end a letter departs from / arrives at.
  std::int64_t departure(Letter x) const {
    std::size_t k = static_cast<std::size_t>(std::abs(x) - 1);
    return x > 0 ? theta_out_[k] : theta_in_[k];
  }
  std::int64_t arrival(Letter x) const {
    std::size_t k = static_cast<std::size_t>(std::abs(x) - 1);
    return x > 0 ? theta_in_[k] : theta_out_[k];
  }

  /// Turning along the loop of a letter.
  std::int64_t petal(Letter x) const {
    std::size_t k = static_cast<std::size_t>(std::abs(x) - 1);
    std::int64_t t = wrap_half_open(theta_in_[k] + unit_ / 2 - theta_out_[k]) + unit_ * twists_[k];
    return x > 0 ? t : -t;
  }

  /// Shortest rotation at the vertex from letter x into letter y.
  std::int64_t corner(Letter x, Letter y) const {
    if (x == -y) throw ArgumentError("corner of a backtracking path");
    std::int64_t t = departure(y) - arrival(x) - unit_ / 2;
    t = wrap_half_open(t);
    if (2 * t == unit_) throw ValidationError("half-turn corner in field model");
    return t;
  }

 private:
  // Representative in (-U/2, U/2].
  std::int64_t wrap_half_open(std::int64_t t) const {
    t %= unit_;
    if (t > unit_ / 2) t -= unit_;
    if (t <= -unit_ / 2) t += unit_;
    return t;
  }

  Fatgraph graph_;
  std::int64_t unit_;
  std::vector<std::int64_t> twists_;
  std::string name_;
  std::vector<std::int64_t> theta_out_, theta_in_;
};

/// Built-in fields: 0 has evenly spaced edge ends and no twists; 1 perturbs
/// the spacing and twists the loops by -1, 0, 1.
inline FieldModel builtin_field(int genus, int which) {
  Fatgraph fg = build_fatgraph(genus);
  const std::int64_t n = static_cast<std::int64_t>(fg.order.size());
  const std::int64_t spacing = 12;
  const std::int64_t unit = spacing * n;
  std::vector<std::int64_t> angles, twists;
  for (std::int64_t p = 0; p < n; ++p)
    angles.push_back(spacing * p + (which == 1 ? (7 * p) % 11 - 5 : 0));
  for (int k = 1; k <= 2 * genus; ++k) twists.push_back(which == 1 ? k % 3 - 1 : 0);
  if (which != 0 && which != 1) throw ArgumentError("field must be 0 or 1");
  return FieldModel(std::move(fg), unit, std::move(angles), std::move(twists),
                    "field" + std::to_string(which));
}

/// Cyclic reduction: the shortest cyclic conjugate's letters.
inline std::vector<Letter> cyclically_reduced(const Word& w) {
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
    ++lo;
    --hi;
  }
  return {w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi)};
}

/// Turning sum of the taut cycle in units of U^-1 full turns.
inline std::int64_t turning(const FieldModel& field, const Word& w) {
  if (w.genus() != field.graph().genus) throw ArgumentError("genus mismatch in omega");
  std::vector<Letter> cyc = cyclically_reduced(w);
  std::int64_t t = 0;
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    t += field.petal(cyc[i]);
    t += field.corner(cyc[i], cyc[(i + 1) % cyc.size()]);
  }
  return t;
}

inline std::int64_t omega(const FieldModel& field, const Word& w) {
  std::int64_t t = turning(field, w);
  if (t % field.unit() != 0)
    throw ValidationError("turning sum " + std::to_string(t) + " of " + to_string(w) +
                          " is not a whole number of turns");
  return t / field.unit();
}

inline std::int64_t defect_omega(const FieldModel& field, const Word& a, const Word& b) {
  return omega(field, multiply(a, b, SIZE_MAX)) - omega(field, a) - omega(field, b);
}

struct DefectPair {
  Word alpha, beta;
  std::int64_t d_omega = 0, d_trans = 0;
  CoverType cover = CoverType::Degenerate;
  bool agree() const { return d_omega == d_trans; }
};

struct CoverSummary {
  std::size_t count = 0, agree = 0, omega_zero = 0, trans_zero = 0;
};

struct DefectReport {
  int genus = 0;
  std::size_t samples = 0, maxlen = 0;
  std::uint64_t seed = 0;
  std::string field;
  std::vector<DefectPair> pairs;
  std::map<std::string, CoverSummary> by_cover;

  double agree_rate() const {
    std::size_t a = 0;
    for (const auto& p : pairs) a += p.agree();
    return pairs.empty() ? 0.0 : static_cast<double>(a) / static_cast<double>(pairs.size());
  }

  /// Every punctured-torus pair has both defects zero.
  bool punctured_torus_consistent() const {
    for (const auto& p : pairs)
      if (p.cover == CoverType::PuncturedTorus && (p.d_omega != 0 || p.d_trans != 0)) return false;
    return true;
  }
};

/// D(omega) against D(trans o G~) on seeded random pairs with reduced
/// concatenation.  Deterministic in the seed for any thread count.
inline DefectReport compare_defects(const LiftContext& ctx, const FieldModel& field,
                                    std::size_t samples, std::size_t maxlen, std::uint64_t seed,
                                    unsigned threads = 1) {
  DefectReport rep;
  rep.genus = ctx.genus();
  rep.samples = samples;
  rep.maxlen = maxlen;
  rep.seed = seed;
  rep.field = field.name();
  rep.pairs = parallel_map(samples, threads, [&](std::size_t i) {
    Rng rng = Rng::substream(seed, i);
    auto [a, b] = random_reduced_pair(rng, ctx.genus(), maxlen);
    DefectPair p{a, b};
    p.d_omega = defect_omega(field, a, b);
    p.d_trans = ctx.trans_word(multiply(a, b)).value - ctx.trans_word(a).value -
                ctx.trans_word(b).value;
    p.cover = classify_cover(ctx, a, b);
    return p;
  });
  for (const auto& p : rep.pairs) {
    CoverSummary& s = rep.by_cover[to_string(p.cover)];
    ++s.count;
    s.agree += p.agree();
    s.omega_zero += p.d_omega == 0;
    s.trans_zero += p.d_trans == 0;
  }
  return rep;
}

}  // namespace rotnum
