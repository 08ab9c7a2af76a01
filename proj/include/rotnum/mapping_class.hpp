#pragma once

// Mapping classes of the once-marked surface as automorphisms of F_2g that fix
// the relator c letter for letter.  Each class stores the images of the
// generators under the automorphism and under its inverse; construction checks
// f(c) = c and that the two tables are mutually inverse, so an invalid class
// cannot be built.
//
// Conventions:
//   compose(f, h) is "f then h", the automorphism h o f.  It represents the
//   product phi*eta when f represents phi and h represents eta.
//   point_push(gamma) descends to x -> gamma^-1 x gamma in the surface group.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rotnum/dehn.hpp"
#include "rotnum/word.hpp"

namespace rotnum {

class MappingClass {
 public:
  /// Validating constructor; `forward[k]` is the image of generator k+1.
  MappingClass(int genus, std::vector<Word> forward, std::vector<Word> backward,
               std::string label)
      : genus_(genus),
        forward_(std::move(forward)),
        backward_(std::move(backward)),
        label_(std::move(label)) {
    check_genus(genus_);
    const std::size_t n = 2 * static_cast<std::size_t>(genus_);
    if (forward_.size() != n || backward_.size() != n)
      throw ValidationError("mapping class '" + label_ + "' needs " + std::to_string(n) +
                            " generator images");
    for (std::size_t k = 0; k < n; ++k)
      if (forward_[k].genus() != genus_ || backward_[k].genus() != genus_)
        throw ValidationError("mapping class '" + label_ + "': image genus mismatch");
    build_inverse_images();
    validate();
  }

  static MappingClass identity(int genus) {
    check_genus(genus);
    std::vector<Word> gens;
    for (int k = 1; k <= 2 * genus; ++k) gens.push_back(generator(genus, static_cast<Letter>(k)));
    return MappingClass(genus, gens, gens, "id");
  }

  int genus() const noexcept { return genus_; }
  const std::string& label() const noexcept { return label_; }
  const std::vector<Word>& forward() const noexcept { return forward_; }
  const std::vector<Word>& backward() const noexcept { return backward_; }

  /// Image of a single letter (generator or inverse).
  const Word& image(Letter x) const {
    return x > 0 ? forward_[x - 1] : forward_inv_[-x - 1];
  }

  Word apply(const Word& w, std::size_t max_length = kDefaultMaxLength) const {
    if (w.genus() != genus_)
      throw ArgumentError("genus mismatch applying mapping class '" + label_ + "'");
    return substitute(w, forward_, forward_inv_, max_length);
  }

  Word apply_inverse(const Word& w, std::size_t max_length = kDefaultMaxLength) const {
    if (w.genus() != genus_)
      throw ArgumentError("genus mismatch applying mapping class '" + label_ + "'");
    return substitute(w, backward_, backward_inv_, max_length);
  }

  MappingClass relabel(std::string label) const {
    MappingClass m = *this;
    m.label_ = std::move(label);
    return m;
  }

 private:
  static Word substitute(const Word& w, const std::vector<Word>& images,
                         const std::vector<Word>& inv_images, std::size_t max_length) {
    std::vector<Letter> out;
    for (Letter x : w) {
      const Word& img = x > 0 ? images[x - 1] : inv_images[-x - 1];
      for (Letter y : img) push_reduced(out, y);
    }
    check_length(out.size(), max_length);
    return word_from_reduced(w.genus(), std::move(out));
  }

  void build_inverse_images() {
    forward_inv_.clear();
    backward_inv_.clear();
    for (const Word& w : forward_) forward_inv_.push_back(invert(w));
    for (const Word& w : backward_) backward_inv_.push_back(invert(w));
  }

  void validate() const {
    const Word c = relator(genus_);
    if (apply(c, SIZE_MAX) != c)
      throw ValidationError("mapping class '" + label_ + "' does not fix the relator: c -> " +
                            to_string(apply(c, SIZE_MAX)));
    for (int k = 1; k <= 2 * genus_; ++k) {
      Word x = generator(genus_, static_cast<Letter>(k));
      if (apply_inverse(apply(x, SIZE_MAX), SIZE_MAX) != x ||
          apply(apply_inverse(x, SIZE_MAX), SIZE_MAX) != x)
        throw ValidationError("mapping class '" + label_ +
                              "': inverse table does not invert generator " + to_string(x));
    }
  }

  int genus_;
  std::vector<Word> forward_, backward_;
  std::vector<Word> forward_inv_, backward_inv_;
  std::string label_;
};

inline Word apply(const MappingClass& f, const Word& w,
                  std::size_t max_length = kDefaultMaxLength) {
  return f.apply(w, max_length);
}

inline void check_same_genus(const MappingClass& f, const MappingClass& h) {
  if (f.genus() != h.genus())
    throw ArgumentError("genus mismatch composing '" + f.label() + "' and '" + h.label() + "'");
}

/// f first, then h: the automorphism h o f.
inline MappingClass compose(const MappingClass& f, const MappingClass& h,
                            std::size_t max_length = kDefaultMaxLength) {
  check_same_genus(f, h);
  const int n = 2 * f.genus();
  std::vector<Word> fwd, bwd;
  fwd.reserve(n);
  bwd.reserve(n);
  for (int k = 0; k < n; ++k) {
    fwd.push_back(h.apply(f.forward()[k], max_length));
    bwd.push_back(f.apply_inverse(h.backward()[k], max_length));
  }
  std::string label = f.label() == "id"   ? h.label()
                      : h.label() == "id" ? f.label()
                                          : f.label() + " * " + h.label();
  return MappingClass(f.genus(), std::move(fwd), std::move(bwd), std::move(label));
}

inline MappingClass inverse(const MappingClass& f) {
  return MappingClass(f.genus(), f.backward(), f.forward(), "(" + f.label() + ")^-1");
}

/// The representative gamma -> c^k f(gamma) c^-k; it still fixes c.
inline MappingClass c_conjugate(const MappingClass& f, int k) {
  const int g = f.genus();
  const Word ck = power(relator(g), k);
  const Word cmk = invert(ck);
  std::vector<Word> fwd, bwd;
  for (int j = 0; j < 2 * g; ++j) {
    fwd.push_back(multiply(multiply(ck, f.forward()[j]), cmk));
    bwd.push_back(multiply(multiply(cmk, f.backward()[j]), ck));
  }
  return MappingClass(g, std::move(fwd), std::move(bwd),
                      f.label() + " [c^" + std::to_string(k) + "]");
}

namespace detail {

// y -> u^-1 y u, where the conjugator u depends on the handle of y relative to
// the handle i of the pushed generator x (always u = x mod <<c>>):
//
//   push a_i:  handle j < i: u = a_i c^-1,   j > i: u = c^-1 a_i,
//              a_i fixed,  b_i -> a_i^-1 c b_i a_i.
//   push b_i:  handle j < i: u = c b_i,      j > i: u = b_i c,
//              b_i fixed,  a_i -> b_i^-1 c^-1 a_i b_i.
//
// For i = 1 and x = a_1 this is the classical formula used for P(a_1).  The
// inverse uses u^-1 on the other handles and undoes the same-handle factor.
inline std::pair<std::vector<Word>, std::vector<Word>> push_generator_tables(int g, Letter x) {
  const Word c = relator(g), cinv = invert(c);
  const Word X = generator(g, x), Xinv = invert(X);
  const int i = handle_of(x);
  const bool pushing_a = is_a(x);
  std::vector<Word> fwd, bwd;
  for (int k = 1; k <= 2 * g; ++k) {
    const Word y = generator(g, static_cast<Letter>(k));
    const int j = handle_of(static_cast<Letter>(k));
    if (k == x) {
      fwd.push_back(y);
      bwd.push_back(y);
    } else if (j == i) {
      // the partner generator in the same handle
      const Word& cx = pushing_a ? c : cinv;
      fwd.push_back(multiply(multiply(multiply(Xinv, cx), y), X));
      bwd.push_back(multiply(multiply(multiply(invert(cx), X), y), Xinv));
    } else {
      Word u;
      if (pushing_a)
        u = j < i ? multiply(X, cinv) : multiply(cinv, X);
      else
        u = j < i ? multiply(c, X) : multiply(X, c);
      fwd.push_back(conjugate(y, u));
      bwd.push_back(conjugate(y, invert(u)));
    }
  }
  return {std::move(fwd), std::move(bwd)};
}

inline void check_descent(const MappingClass& f, const Word& gamma) {
  for (int k = 1; k <= 2 * f.genus(); ++k) {
    const Word x = generator(f.genus(), static_cast<Letter>(k));
    if (!surface_equal(f.apply(x, SIZE_MAX), conjugate(x, gamma)))
      throw ValidationError("'" + f.label() + "' does not descend to conjugation by " +
                            to_string(gamma) + " on " + to_string(x));
  }
}

}  // namespace detail

/// Point-push along a single generator or inverse generator.
inline MappingClass point_push(int genus, Letter x) {
  check_genus(genus);
  check_letter(genus, x);
  auto label = "push(" + letter_to_string(x) + ")";
  auto [fwd, bwd] = detail::push_generator_tables(genus, static_cast<Letter>(std::abs(x)));
  MappingClass f = x > 0 ? MappingClass(genus, std::move(fwd), std::move(bwd), label)
                         : MappingClass(genus, std::move(bwd), std::move(fwd), label);
  detail::check_descent(f, generator(genus, x));
  return f;
}

/// Composite of per-letter pushes in word order; descends to conjugation by w.
inline MappingClass point_push_word(const Word& w, std::size_t max_length = kDefaultMaxLength) {
  MappingClass f = MappingClass::identity(w.genus());
  for (Letter x : w) f = compose(f, point_push(w.genus(), x), max_length);
  return f.relabel("push(" + to_string(w) + ")");
}

/// Dehn-twist style automorphism.  Along a_i: b_i -> b_i a_i^s; along b_i:
/// a_i -> a_i b_i^s, with s = direction; other generators fixed.
inline MappingClass twist(int genus, Letter curve, int direction) {
  check_genus(genus);
  check_letter(genus, curve);
  if (curve < 0) throw ArgumentError("twist curve must be a positive generator");
  if (direction != 1 && direction != -1) throw ArgumentError("twist direction must be +1 or -1");
  const int i = handle_of(curve);
  const Letter moved = is_a(curve) ? gen_b(i) : gen_a(i);
  std::vector<Word> fwd, bwd;
  for (int k = 1; k <= 2 * genus; ++k) {
    Word y = generator(genus, static_cast<Letter>(k));
    if (k == moved) {
      Word t = generator(genus, static_cast<Letter>(direction * curve));
      fwd.push_back(multiply(y, t));
      bwd.push_back(multiply(y, invert(t)));
    } else {
      fwd.push_back(y);
      bwd.push_back(y);
    }
  }
  std::string label = "twist(" + letter_to_string(curve) + ")" + (direction < 0 ? "^-1" : "");
  return MappingClass(genus, std::move(fwd), std::move(bwd), std::move(label));
}

/// Built-in generators used by the sampling suites: pushes along every
/// generator and twists along every a_i, b_i, each with its inverse.
inline std::vector<MappingClass> builtin_classes(int genus) {
  std::vector<MappingClass> out;
  for (int k = 1; k <= 2 * genus; ++k) {
    out.push_back(point_push(genus, static_cast<Letter>(k)));
    out.push_back(point_push(genus, static_cast<Letter>(-k)));
  }
  for (int k = 1; k <= 2 * genus; ++k) {
    out.push_back(twist(genus, static_cast<Letter>(k), 1));
    out.push_back(twist(genus, static_cast<Letter>(k), -1));
  }
  return out;
}

/// A product of mapping classes kept as its factors, applied left to right.
/// Explicit generator images of long composites get large (thousands of
/// letters for a 20-factor push), so evaluation uses the factored form.
class ClassProduct {
 public:
  explicit ClassProduct(int genus) : genus_(genus) { check_genus(genus); }
  ClassProduct(MappingClass f) : genus_(f.genus()) { factors_.push_back(std::move(f)); }

  int genus() const noexcept { return genus_; }
  const std::vector<MappingClass>& factors() const noexcept { return factors_; }

  std::string label() const {
    if (!label_.empty()) return label_;
    if (factors_.empty()) return "id";
    std::string s;
    for (const auto& f : factors_) s += (s.empty() ? "" : " * ") + f.label();
    return s;
  }
  ClassProduct relabel(std::string label) const {
    ClassProduct p = *this;
    p.label_ = std::move(label);
    return p;
  }

  /// This, then h.
  ClassProduct then(const ClassProduct& h) const {
    if (h.genus_ != genus_) throw ArgumentError("genus mismatch composing mapping classes");
    ClassProduct p(genus_);
    p.factors_ = factors_;
    p.factors_.insert(p.factors_.end(), h.factors_.begin(), h.factors_.end());
    return p;
  }

  ClassProduct inverse() const {
    ClassProduct p(genus_);
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) p.factors_.push_back(rotnum::inverse(*it));
    if (!label_.empty()) p.label_ = "(" + label_ + ")^-1";
    return p;
  }

  Word apply(const Word& w, std::size_t max_length = kDefaultMaxLength) const {
    Word out = w;
    for (const auto& f : factors_) out = f.apply(out, max_length);
    return out;
  }

  /// The single automorphism; throws LengthError when an image exceeds the cap.
  MappingClass explicit_class(std::size_t max_length = kDefaultMaxLength) const {
    MappingClass m = MappingClass::identity(genus_);
    for (const auto& f : factors_) m = compose(m, f, max_length);
    return m.relabel(label());
  }

 private:
  int genus_;
  std::vector<MappingClass> factors_;
  std::string label_;
};

/// The factors of push(w): one generator push per letter, in word order.
inline ClassProduct push_product(const Word& w) {
  ClassProduct p(w.genus());
  for (Letter x : w) p = p.then(ClassProduct(point_push(w.genus(), x)));
  return p.relabel("push(" + to_string(w) + ")");
}

/// f(w) written as N * word with N in the normal closure of c, where N is a
/// product of conjugates of c^{+-1} with signed count `relator_count`, and
/// `word` is Dehn-reduced.
struct ReducedImage {
  Word word;
  std::int64_t relator_count = 0;
};

/// Generator images of a mapping class as reduced images.  Because every
/// factor fixes c, it maps N to a product of conjugates of c with the same
/// signed count, so the counts add under composition and no image is ever
/// expanded.
class ImageTable {
 public:
  explicit ImageTable(int genus) : tables_(genus) {
    for (int k = 1; k <= 2 * genus; ++k) images_.push_back({generator(genus, static_cast<Letter>(k)), 0});
  }
  explicit ImageTable(const ClassProduct& p) : ImageTable(p.genus()) {
    for (const auto& f : p.factors()) *this = then(f);
  }
  explicit ImageTable(const MappingClass& f) : ImageTable(ClassProduct(f)) {}

  int genus() const noexcept { return tables_.genus(); }

  ReducedImage image(Letter x) const {
    const ReducedImage& r = images_[static_cast<std::size_t>(std::abs(x) - 1)];
    if (x > 0) return r;
    // (N r)^-1 = (r^-1 N^-1 r) r^-1
    return {invert(r.word), -r.relator_count};
  }

  ReducedImage apply(const Word& w) const {
    if (w.genus() != genus()) throw ArgumentError("genus mismatch applying image table");
    std::vector<Letter> raw;
    std::int64_t count = 0;
    for (Letter x : w) {
      ReducedImage r = image(x);
      count += r.relator_count;
      for (Letter y : r.word) push_reduced(raw, y);
    }
    DehnResult d = dehn_reduce(word_from_reduced(genus(), std::move(raw)), tables_);
    return {std::move(d.word), count + d.relator_count};
  }

  /// Images under "this, then h".
  ImageTable then(const MappingClass& h) const {
    ImageTable t = *this;
    for (auto& r : t.images_) {
      DehnResult d = dehn_reduce(h.apply(r.word, SIZE_MAX), tables_);
      r = {std::move(d.word), r.relator_count + d.relator_count};
    }
    return t;
  }

 private:
  RelatorTables tables_;
  std::vector<ReducedImage> images_;
};

// Expression syntax:
//   expr   := factor ('*' factor)*         left to right: "f * h" is f then h
//   factor := atom ('^-1')*
//   atom   := 'id' | 'push(' word ')' | 'twist(' gen ')' | '(' expr ')'

namespace detail {

class MappingClassParser {
 public:
  MappingClassParser(std::string_view text, int genus) : s_(text), g_(genus) {}

  ClassProduct parse() {
    ClassProduct m = expr();
    skip();
    if (p_ != s_.size()) throw ParseError("trailing input in mapping-class expression", p_);
    return m;
  }

 private:
  void skip() {
    while (p_ < s_.size() && is_space(s_[p_])) ++p_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(p_, tok.size()) == tok) {
      p_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!eat(tok)) throw ParseError("expected '" + std::string(tok) + "'", p_);
  }

  ClassProduct expr() {
    ClassProduct m = factor();
    while (eat("*")) m = m.then(factor());
    return m;
  }

  ClassProduct factor() {
    ClassProduct m = atom();
    while (eat("^-1")) m = m.inverse();
    return m;
  }

  // Contents of "name(...)" parsed as a word, with positions mapped back.
  Word bracketed_word(std::size_t at, const char* name) {
    expect("(");
    std::size_t close = s_.find(')', p_);
    if (close == std::string_view::npos)
      throw ParseError(std::string("unterminated ") + name + "(", at);
    std::string_view body = s_.substr(p_, close - p_);
    std::size_t start = p_;
    Word w(g_);
    try {
      w = parse_word(body, g_);
    } catch (const ParseError& e) {
      throw ParseError(std::string("in ") + name + "(...): " + e.what(), start + e.position());
    }
    p_ = close + 1;
    return w;
  }

  ClassProduct atom() {
    skip();
    std::size_t at = p_;
    if (eat("(")) {
      ClassProduct m = expr();
      expect(")");
      return m;
    }
    if (eat("push")) return push_product(bracketed_word(at, "push"));
    if (eat("twist")) {
      Word w = bracketed_word(at, "twist");
      if (w.size() != 1 || w[0] < 0)
        throw ParseError("twist(...) takes a single generator such as a1 or b2", at);
      return ClassProduct(twist(g_, w[0], 1));
    }
    if (eat("id")) return ClassProduct(g_);
    throw ParseError("expected push(...), twist(...), id or '('", at);
  }

  std::string_view s_;
  int g_;
  std::size_t p_ = 0;
};

}  // namespace detail

inline ClassProduct parse_class_product(std::string_view text, int genus) {
  check_genus(genus);
  return detail::MappingClassParser(text, genus).parse().relabel(std::string(text));
}

/// Parses and multiplies out an expression into a single automorphism.
inline MappingClass parse_mapping_class(std::string_view text, int genus,
                                        std::size_t max_length = kDefaultMaxLength) {
  return parse_class_product(text, genus).explicit_class(max_length);
}

}  // namespace rotnum
