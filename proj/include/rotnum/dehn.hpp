#pragma once

// Dehn's algorithm for the surface group F_2g / <<c>>.
//
// The standard relator is C'(1/6) for g >= 2 and every letter occurs exactly
// once in c, so a run of letters that follow each other cyclically in c (or in
// c^-1) is exactly a piece of a cyclic rotation of c^{+-1}.  A run longer than
// 2g is replaced by the inverse of its complement.
//
// Every replacement is recorded with its sign: if the run came from c, then
// s = r * t^-1 where r is a rotation of c and t the complement, so the input
// equals (product of relator conjugates) * output in F_2g.  `relator_count` is
// the signed number of such relators removed; lifted evaluations use it to
// account for the central element c exactly.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <vector>

#include "rotnum/word.hpp"

namespace rotnum {

struct DehnResult {
  Word word;
  int relator_count = 0;   // signed count of c-rotations removed
  int replacements = 0;    // relator-piece replacements performed
  int cancellations = 0;   // free cancellations performed
};

/// Cyclic successor tables for c and c^-1.
class RelatorTables {
 public:
  explicit RelatorTables(int genus) : genus_(genus), c_(relator(genus)) {
    const int n = 4 * genus;
    pos_.assign(2 * static_cast<std::size_t>(n) + 1, -1);
    for (int k = 0; k < n; ++k) pos_[index(c_[k])] = k;
    succ_fwd_.assign(pos_.size(), 0);
    succ_bwd_.assign(pos_.size(), 0);
    for (int k = 0; k < n; ++k) {
      Letter x = c_[k];
      succ_fwd_[index(x)] = c_[(k + 1) % n];
      // In c^-1 the inverse of c[k] is followed by the inverse of c[k-1].
      succ_bwd_[index(static_cast<Letter>(-x))] = static_cast<Letter>(-c_[(k + n - 1) % n]);
    }
  }

  int genus() const noexcept { return genus_; }
  Letter next_in_relator(Letter x) const { return succ_fwd_[index(x)]; }
  Letter next_in_inverse(Letter x) const { return succ_bwd_[index(x)]; }

 private:
  std::size_t index(Letter x) const { return static_cast<std::size_t>(x + 2 * genus_); }

  int genus_;
  Word c_;
  std::vector<int> pos_;
  std::vector<Letter> succ_fwd_, succ_bwd_;
};

namespace detail {

// Freely reduced stack with the length of the c-run and c^-1-run ending at
// each position.
class DehnStack {
 public:
  explicit DehnStack(const RelatorTables& t) : t_(t), half_(2 * t.genus()) {}

  // Returns true when a replacement was triggered; the complement letters are
  // then prepended to `pending`.
  bool push(Letter x, std::deque<Letter>& pending, DehnResult& stats) {
    if (!letters_.empty() && letters_.back() == -x) {
      pop();
      ++stats.cancellations;
      return false;
    }
    int f = 1, b = 1;
    if (!letters_.empty()) {
      if (t_.next_in_relator(letters_.back()) == x) f = fwd_.back() + 1;
      if (t_.next_in_inverse(letters_.back()) == x) b = bwd_.back() + 1;
    }
    letters_.push_back(x);
    fwd_.push_back(f);
    bwd_.push_back(b);
    if (f > half_) {
      replace(pending, /*forward=*/true);
      ++stats.replacements;
      ++stats.relator_count;
      return true;
    }
    if (b > half_) {
      replace(pending, /*forward=*/false);
      ++stats.replacements;
      --stats.relator_count;
      return true;
    }
    return false;
  }

  std::vector<Letter> take() { return std::move(letters_); }

 private:
  void pop() {
    letters_.pop_back();
    fwd_.pop_back();
    bwd_.pop_back();
  }

  // The top 2g+1 letters s satisfy s*t = rotation of c^{+-1} with t of length
  // 2g-1; replace s by t^-1.
  void replace(std::deque<Letter>& pending, bool forward) {
    const int full = 2 * half_;
    Letter last = letters_.back();
    std::vector<Letter> complement;
    complement.reserve(full - half_ - 1);
    Letter y = last;
    for (int k = 0; k < full - half_ - 1; ++k) {
      y = forward ? t_.next_in_relator(y) : t_.next_in_inverse(y);
      complement.push_back(y);
    }
    for (int k = 0; k <= half_; ++k) pop();
    // t^-1 = inverse letters in reverse order; prepend so the first letter of
    // t^-1 is processed next.
    for (Letter z : complement) pending.push_front(static_cast<Letter>(-z));
  }

  const RelatorTables& t_;
  int half_;
  std::vector<Letter> letters_;
  std::vector<int> fwd_, bwd_;
};

}  // namespace detail

/// Linear Dehn reduction: input = (relator conjugates) * result.word in F_2g.
inline DehnResult dehn_reduce(const Word& w, const RelatorTables& tables) {
  DehnResult res;
  detail::DehnStack stack(tables);
  std::deque<Letter> pending(w.begin(), w.end());
  while (!pending.empty()) {
    Letter x = pending.front();
    pending.pop_front();
    stack.push(x, pending, res);
  }
  res.word = word_from_reduced(w.genus(), stack.take());
  return res;
}

inline DehnResult dehn_reduce(const Word& w) { return dehn_reduce(w, RelatorTables(w.genus())); }

/// Cyclic Dehn reduction.  The result word is cyclically reduced, has no
/// cyclic run longer than 2g, and is a cyclic conjugate of the linear result;
/// conjugation-invariant quantities may be computed on it.
inline DehnResult dehn_reduce_cyclic(const Word& w, const RelatorTables& tables) {
  const int half = 2 * tables.genus();
  DehnResult total = dehn_reduce(w, tables);
  std::vector<Letter> cur(total.word.begin(), total.word.end());
  for (;;) {
    // Cyclic free reduction (conjugation).
    std::size_t lo = 0, hi = cur.size();
    while (hi - lo >= 2 && cur[lo] == -cur[hi - 1]) {
      ++lo;
      --hi;
      total.cancellations += 1;
    }
    cur = std::vector<Letter>(cur.begin() + static_cast<std::ptrdiff_t>(lo),
                              cur.begin() + static_cast<std::ptrdiff_t>(hi));
    const std::size_t n = cur.size();
    if (n <= static_cast<std::size_t>(half)) break;
    // Look for a cyclic run longer than 2g on the doubled word.
    std::ptrdiff_t start = -1;
    for (int dir = 0; dir < 2 && start < 0; ++dir) {
      std::size_t run = 1;
      for (std::size_t i = 1; i < 2 * n; ++i) {
        Letter prev = cur[(i - 1) % n], x = cur[i % n];
        bool linked = dir == 0 ? tables.next_in_relator(prev) == x
                               : tables.next_in_inverse(prev) == x;
        run = linked ? std::min(run + 1, n) : 1;
        if (run > static_cast<std::size_t>(half)) {
          start = static_cast<std::ptrdiff_t>((i + 1 + 2 * n - run) % n);
          break;
        }
      }
    }
    if (start < 0) break;
    std::rotate(cur.begin(), cur.begin() + start, cur.end());
    DehnResult step = dehn_reduce(word_from_reduced(w.genus(), cur), tables);
    total.relator_count += step.relator_count;
    total.replacements += step.replacements;
    total.cancellations += step.cancellations;
    cur.assign(step.word.begin(), step.word.end());
  }
  total.word = word_from_reduced(w.genus(), std::move(cur));
  return total;
}

inline DehnResult dehn_reduce_cyclic(const Word& w) {
  return dehn_reduce_cyclic(w, RelatorTables(w.genus()));
}

/// True iff w is trivial in the surface group.
inline bool surface_trivial(const Word& w) { return dehn_reduce(w).word.empty(); }

/// True iff u v^-1 lies in the normal closure of c.
inline bool surface_equal(const Word& u, const Word& v) {
  check_same_genus(u, v);
  return surface_trivial(multiply(u, invert(v), std::max(kDefaultMaxLength, u.size() + v.size())));
}

}  // namespace rotnum
