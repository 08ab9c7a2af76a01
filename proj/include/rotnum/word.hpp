#pragma once

// Exact arithmetic in the free group F_2g on a_1, b_1, ..., a_g, b_g.
//
// A letter is a signed generator index: a_i = 2i-1, b_i = 2i, and a negative
// value is the inverse.  Words are always freely reduced and carry their genus.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rotnum/error.hpp"

namespace rotnum {

using Letter = std::int16_t;

inline constexpr std::size_t kDefaultMaxLength = 4096;
inline constexpr int kMaxGenus = 1000;

inline constexpr Letter gen_a(int handle) { return static_cast<Letter>(2 * handle - 1); }
inline constexpr Letter gen_b(int handle) { return static_cast<Letter>(2 * handle); }
inline constexpr int handle_of(Letter x) { return (std::abs(x) + 1) / 2; }
inline constexpr bool is_a(Letter x) { return std::abs(x) % 2 == 1; }

inline void check_genus(int genus) {
  if (genus < 2 || genus > kMaxGenus)
    throw ArgumentError("genus must be at least 2, got " + std::to_string(genus));
}

inline void check_letter(int genus, int x) {
  if (x == 0 || std::abs(x) > 2 * genus)
    throw ArgumentError("letter " + std::to_string(x) + " out of range for genus " +
                        std::to_string(genus));
}

class Word;
Word reduce(int genus, std::span<const Letter> raw, std::size_t max_length = kDefaultMaxLength);

class Word {
 public:
  Word() = default;
  explicit Word(int genus) : genus_(genus) {}

  int genus() const noexcept { return genus_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Letter> letters() const noexcept { return letters_; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  friend Word reduce(int, std::span<const Letter>, std::size_t);
  friend Word word_from_reduced(int genus, std::vector<Letter> letters);

  int genus_ = 0;
  std::vector<Letter> letters_;
};

/// Wraps letters already known to be freely reduced and in range.
inline Word word_from_reduced(int genus, std::vector<Letter> letters) {
  Word w(genus);
  w.letters_ = std::move(letters);
  return w;
}

/// Appends `x` to a reduced buffer, cancelling against the last letter.
inline void push_reduced(std::vector<Letter>& out, Letter x) {
  if (!out.empty() && out.back() == -x)
    out.pop_back();
  else
    out.push_back(x);
}

inline void check_length(std::size_t n, std::size_t max_length) {
  if (n > max_length)
    throw LengthError("word length " + std::to_string(n) + " exceeds cap " +
                      std::to_string(max_length));
}

inline Word reduce(int genus, std::span<const Letter> raw, std::size_t max_length) {
  check_genus(genus);
  Word w(genus);
  w.letters_.reserve(raw.size());
  for (Letter x : raw) {
    check_letter(genus, x);
    push_reduced(w.letters_, x);
  }
  check_length(w.size(), max_length);
  return w;
}

inline Word reduce(int genus, std::initializer_list<Letter> raw) {
  return reduce(genus, std::span<const Letter>(raw.begin(), raw.size()));
}

inline void check_same_genus(const Word& u, const Word& v) {
  if (u.genus() != v.genus())
    throw ArgumentError("genus mismatch: " + std::to_string(u.genus()) + " vs " +
                        std::to_string(v.genus()));
}

inline Word multiply(const Word& u, const Word& v, std::size_t max_length = kDefaultMaxLength) {
  check_same_genus(u, v);
  std::vector<Letter> out(u.begin(), u.end());
  for (Letter x : v) push_reduced(out, x);
  check_length(out.size(), max_length);
  return word_from_reduced(u.genus(), std::move(out));
}

inline Word invert(const Word& u) {
  std::vector<Letter> out;
  out.reserve(u.size());
  for (auto it = u.letters().rbegin(); it != u.letters().rend(); ++it) out.push_back(-*it);
  return word_from_reduced(u.genus(), std::move(out));
}

/// by^-1 * u * by.
inline Word conjugate(const Word& u, const Word& by) {
  return multiply(multiply(invert(by), u), by);
}

inline Word generator(int genus, Letter x) {
  check_genus(genus);
  check_letter(genus, x);
  return word_from_reduced(genus, {x});
}

/// [a1,b1]...[ag,bg].
inline Word relator(int genus) {
  check_genus(genus);
  std::vector<Letter> c;
  c.reserve(4 * genus);
  for (int i = 1; i <= genus; ++i) {
    c.push_back(gen_a(i));
    c.push_back(gen_b(i));
    c.push_back(static_cast<Letter>(-gen_a(i)));
    c.push_back(static_cast<Letter>(-gen_b(i)));
  }
  return word_from_reduced(genus, std::move(c));
}

inline Word power(const Word& u, int k) {
  Word base = k < 0 ? invert(u) : u;
  Word out(u.genus());
  for (int i = 0; i < std::abs(k); ++i) out = multiply(out, base);
  return out;
}

/// Exponent sums, indexed by generator index - 1.
struct AbelianVector {
  std::vector<std::int64_t> coords;

  std::size_t size() const noexcept { return coords.size(); }
  std::int64_t operator[](std::size_t i) const { return coords[i]; }
  friend bool operator==(const AbelianVector&, const AbelianVector&) = default;
};

inline AbelianVector abelianize(const Word& u) {
  AbelianVector v{std::vector<std::int64_t>(2 * static_cast<std::size_t>(u.genus()), 0)};
  for (Letter x : u) v.coords[std::abs(x) - 1] += x > 0 ? 1 : -1;
  return v;
}

/// Symplectic form with <a_k, b_k> = 1.
inline std::int64_t symplectic(const AbelianVector& x, const AbelianVector& y) {
  std::int64_t s = 0;
  for (std::size_t k = 0; k + 1 < x.size(); k += 2) s += x[k] * y[k + 1] - x[k + 1] * y[k];
  return s;
}

inline std::int64_t intersection(const Word& a, const Word& b) {
  check_same_genus(a, b);
  return symplectic(abelianize(a), abelianize(b));
}

/// Pairing of single letters under the symplectic form.
inline int letter_pairing(Letter x, Letter y) {
  int ax = std::abs(x), ay = std::abs(y);
  if (handle_of(x) != handle_of(y) || ax == ay) return 0;
  int s = (ax % 2 == 1) ? 1 : -1;  // <a,b> = 1, <b,a> = -1
  return s * (x > 0 ? 1 : -1) * (y > 0 ? 1 : -1);
}

// Text syntax: a<i> b<i> for generators, A<i> B<i> for inverses, "-" for the
// empty word, tokens separated by whitespace.

inline std::string letter_to_string(Letter x) {
  int i = handle_of(x);
  char c = is_a(x) ? 'a' : 'b';
  if (x < 0) c = static_cast<char>(c - 'a' + 'A');
  return std::string(1, c) + std::to_string(i);
}

inline std::string to_string(const Word& w) {
  if (w.empty()) return "-";
  std::string s;
  for (Letter x : w) {
    if (!s.empty()) s += ' ';
    s += letter_to_string(x);
  }
  return s;
}

namespace detail {
inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
}  // namespace detail

/// Parses a word; the result is freely reduced.
inline Word parse_word(std::string_view text, int genus,
                       std::size_t max_length = kDefaultMaxLength) {
  check_genus(genus);
  std::vector<Letter> raw;
  std::size_t i = 0;
  bool saw_dash = false, saw_letter = false;
  while (i < text.size()) {
    if (detail::is_space(text[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    char c = text[i];
    if (c == '-') {
      saw_dash = true;
      ++i;
      continue;
    }
    bool inv = (c == 'A' || c == 'B');
    bool gen_is_a = (c == 'a' || c == 'A');
    if (!(gen_is_a || c == 'b' || c == 'B'))
      throw ParseError(std::string("unexpected character '") + c + "' in word", start);
    ++i;
    if (i >= text.size() || text[i] < '0' || text[i] > '9')
      throw ParseError("expected handle index after generator letter", i);
    int handle = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      handle = handle * 10 + (text[i] - '0');
      if (handle > kMaxGenus) throw ParseError("handle index too large", start);
      ++i;
    }
    if (i < text.size() && !detail::is_space(text[i]))
      throw ParseError("expected whitespace between letters", i);
    if (handle < 1 || handle > genus)
      throw ParseError("handle index " + std::to_string(handle) + " out of range for genus " +
                           std::to_string(genus),
                       start);
    Letter x = gen_is_a ? gen_a(handle) : gen_b(handle);
    raw.push_back(static_cast<Letter>(inv ? -x : x));
    saw_letter = true;
  }
  if (saw_dash && saw_letter) throw ParseError("'-' denotes the empty word and stands alone", 0);
  if (!saw_dash && !saw_letter) throw ParseError("empty input; use '-' for the empty word", 0);
  return reduce(genus, raw, max_length);
}

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = std::hash<int>{}(w.genus());
    for (Letter x : w) h = h * 1000003u ^ static_cast<std::uint16_t>(x);
    return h;
  }
};

}  // namespace rotnum
