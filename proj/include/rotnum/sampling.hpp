#pragma once

// Seeded sampling.  Every sample i of an experiment draws from its own stream
// seeded by mixing (seed, i), so results do not depend on evaluation order or
// thread count.

#include <cstdint>
#include <random>
#include <vector>

#include "rotnum/word.hpp"

namespace rotnum {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Independent stream for sample `index` of an experiment seeded by `seed`.
  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed) ^ splitmix64(~index));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n), by rejection so the result does not depend on
  /// the standard library's distribution implementation.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw ArgumentError("empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return x % n;
  }

  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 engine_;
};

/// Uniformly random freely reduced word with length uniform in [min_len, max_len].
inline Word random_word(Rng& rng, int genus, std::size_t min_len, std::size_t max_len) {
  check_genus(genus);
  std::size_t len = static_cast<std::size_t>(
      rng.between(static_cast<std::int64_t>(min_len), static_cast<std::int64_t>(max_len)));
  std::vector<Letter> out;
  out.reserve(len);
  const int n = 2 * genus;
  auto letter = [n](int r) { return static_cast<Letter>(r < n ? r + 1 : -(r - n + 1)); };
  auto index = [n](Letter x) { return x > 0 ? x - 1 : n - x - 1; };
  while (out.size() < len) {
    if (out.empty()) {
      out.push_back(letter(static_cast<int>(rng.below(2 * static_cast<std::uint64_t>(n)))));
      continue;
    }
    // 2n - 1 choices: skip the inverse of the previous letter.
    int r = static_cast<int>(rng.below(2 * static_cast<std::uint64_t>(n) - 1));
    if (r >= index(static_cast<Letter>(-out.back()))) ++r;
    out.push_back(letter(r));
  }
  return word_from_reduced(genus, std::move(out));
}

/// Random pair whose concatenation is freely reduced (no cancellation at the
/// junction), both nonempty.
inline std::pair<Word, Word> random_reduced_pair(Rng& rng, int genus, std::size_t max_len) {
  for (;;) {
    Word a = random_word(rng, genus, 1, max_len);
    Word b = random_word(rng, genus, 1, max_len);
    if (a.back() != -b.front()) return {std::move(a), std::move(b)};
  }
}

}  // namespace rotnum
