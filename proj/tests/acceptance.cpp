// Acceptance run: each criterion prints one PASS/FAIL line; the exit status is
// nonzero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "rotnum/rotnum.hpp"

using namespace rotnum;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Criterion {
 public:
  Criterion(int id, std::string title, double limit_s) : id_(id), title_(std::move(title)), limit_(limit_s) {}

  void fail(const std::string& why) {
    if (out_.ok) out_.detail = why;
    out_.ok = false;
  }
  void note(const std::string& s) { notes_.push_back(s); }
  const Outcome& outcome() const { return out_; }

  bool run(const std::function<void(Criterion&)>& body) {
    auto t0 = std::chrono::steady_clock::now();
    try {
      body(*this);
    } catch (const std::exception& e) {
      fail(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > limit_) fail("runtime " + std::to_string(s) + " s over " + std::to_string(limit_) + " s");
    char head[64];
    std::snprintf(head, sizeof head, "[%s] criterion %2d", out_.ok ? "PASS" : "FAIL", id_);
    std::cout << head << ": " << title_ << " (" << std::fixed;
    std::cout.precision(2);
    std::cout << s << " s)" << (out_.ok ? "" : " -- " + out_.detail) << "\n";
    for (const auto& n : notes_) std::cout << "           " << n << "\n";
    std::cout.flush();
    return out_.ok;
  }

 private:
  int id_;
  std::string title_;
  double limit_;
  Outcome out_;
  std::vector<std::string> notes_;
};

std::string pair_text(const Word& a, const Word& b) { return "(" + to_string(a) + " | " + to_string(b) + ")"; }

Word nontrivial_word(Rng& rng, int g, std::size_t max_len) {
  for (;;) {
    Word w = random_word(rng, g, 1, max_len);
    if (!surface_trivial(w)) return w;
  }
}

std::vector<std::int64_t> random_offsets(Rng& rng, int g) {
  std::vector<std::int64_t> off;
  for (int k = 0; k < 2 * g; ++k) off.push_back(rng.between(-2, 2));
  return off;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(ROTNUM_CLI) + " " + args;
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

void euler_number(Criterion& c) {
  for (int g : {2, 3, 4}) {
    auto t0 = std::chrono::steady_clock::now();
    LiftContext ctx(build_rep(g));
    TransResult t = ctx.trans_of([&](auto tag) { return ctx.evaluate_word<decltype(tag)>(relator(g)); });
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (t.value != 2 - 2 * g || !t.certified) c.fail("g=" + std::to_string(g) + ": trans = " + std::to_string(t.value));
    if (s >= 1.0) c.fail("g=" + std::to_string(g) + " took " + std::to_string(s) + " s");
    c.note("g=" + std::to_string(g) + ": trans(G~(c)) = " + std::to_string(t.value) + (t.certified ? " certified" : ""));
  }
}

void push_values(Criterion& c) {
  for (int g : {2, 3}) {
    LiftContext ctx(build_rep(g));
    HomologyTable t = R_on_homology(ctx, point_push(g, gen_a(1)));
    std::string row;
    for (int k = 0; k < 2 * g; ++k) {
      std::int64_t want = k == 1 ? 2 - 2 * g : 0;
      if (t.values[k] != want) c.fail("g=" + std::to_string(g) + " generator " + std::to_string(k + 1));
      row += (k ? ", " : "") + std::to_string(t.values[k]);
    }
    c.note("g=" + std::to_string(g) + ": R(P(a1)) = (" + row + ")");
  }
}

void bilinear(Criterion& c) {
  LiftContext ctx(build_rep(2));
  auto bad = parallel_map(200, 0, [&](std::size_t i) -> std::string {
    Rng rng = Rng::substream(3003, i);
    Word a = random_word(rng, 2, 0, 16), b = random_word(rng, 2, 0, 16);
    return pointpush_bilinear(ctx, a, b) ? "" : pair_text(a, b);
  });
  for (const auto& s : bad)
    if (!s.empty()) c.fail("counterexample " + s);
  c.note("200 pairs, length <= 16, g=2");
}

void additivity_crossed(Criterion& c) {
  LiftContext ctx(build_rep(2));
  const auto classes = builtin_classes(2);
  auto add = parallel_map(500, 0, [&](std::size_t i) -> std::string {
    Rng rng = Rng::substream(4004, i);
    const MappingClass& f = rng.pick(classes);
    Word a = random_word(rng, 2, 0, 12), b = random_word(rng, 2, 0, 12);
    return R(ctx, f, multiply(a, b)) == R(ctx, f, a) + R(ctx, f, b) ? "" : f.label() + " " + pair_text(a, b);
  });
  auto crossed = parallel_map(300, 0, [&](std::size_t i) -> std::string {
    Rng rng = Rng::substream(4005, i);
    const MappingClass &f = rng.pick(classes), &h = rng.pick(classes);
    Word w = random_word(rng, 2, 0, 12);
    return check_crossed(ctx, f, h, w) ? "" : f.label() + ", " + h.label() + " on " + to_string(w);
  });
  for (const auto& s : add)
    if (!s.empty()) c.fail("additivity: " + s);
  for (const auto& s : crossed)
    if (!s.empty()) c.fail("crossed law: " + s);
  c.note("additivity 500 samples, crossed law 300 samples over " + std::to_string(classes.size()) + " built-in classes");
}

void well_defined(Criterion& c) {
  LiftContext ctx(build_rep(2));
  const auto classes = builtin_classes(2);
  auto conj = parallel_map(100, 0, [&](std::size_t i) -> std::string {
    Rng rng = Rng::substream(5005, i);
    const MappingClass& f = rng.pick(classes);
    int k = static_cast<int>(rng.between(-2, 2));
    Word w = random_word(rng, 2, 0, 12);
    return R(ctx, c_conjugate(f, k), w) == R(ctx, f, w) ? "" : f.label() + " k=" + std::to_string(k);
  });
  struct OffsetCase {
    bool same = true, explained = true, homology_trivial = true;
    std::string text;
  };
  auto off = parallel_map(100, 0, [&](std::size_t i) {
    Rng rng = Rng::substream(5006, i);
    LiftContext other(ctx.rep(), random_offsets(rng, 2));
    const MappingClass& f = rng.pick(classes);
    Word w = random_word(rng, 2, 0, 12);
    std::int64_t diff = R(other, f, w) - R(ctx, f, w);
    OffsetCase oc;
    oc.same = diff == 0;
    oc.explained = diff == lift_change(ctx, other, f, w);
    for (int k = 1; k <= 4; ++k) {
      Word x = generator(2, static_cast<Letter>(k));
      oc.homology_trivial &= abelianize(f.apply(x)) == abelianize(x);
    }
    oc.text = f.label() + " on " + to_string(w) + " changed by " + std::to_string(diff);
    return oc;
  });
  for (const auto& s : conj)
    if (!s.empty()) c.fail("c-conjugation: " + s);
  std::size_t changed = 0, explained = 0, changed_torelli = 0;
  for (const auto& oc : off) {
    if (!oc.same) {
      ++changed;
      changed_torelli += oc.homology_trivial;
      if (changed == 1) c.fail("lift offsets: " + oc.text);
    }
    explained += oc.explained;
  }
  c.note("c-conjugated representatives: " + std::to_string(100 - std::count_if(conj.begin(), conj.end(), [](auto& s) {
                                                                 return !s.empty();
                                                               })) +
         "/100 unchanged");
  c.note("random offsets: " + std::to_string(100 - changed) + "/100 unchanged; " + std::to_string(changed_torelli) +
         " of the changed classes act trivially on homology");
  c.note("every change equals <k_new - k_old, [f gamma] - [gamma]>: " + std::to_string(explained) + "/100");
}

void euler_cocycle(Criterion& c) {
  LiftContext ctx(build_rep(2));
  const auto classes = builtin_classes(2);
  auto range = parallel_map(1000, 0, [&](std::size_t i) -> std::string {
    Rng rng = Rng::substream(6006, i);
    Word a = nontrivial_word(rng, 2, 12), b = nontrivial_word(rng, 2, 12);
    std::int64_t t = ctx.tau(a, b);
    return t >= -1 && t <= 1 ? "" : pair_text(a, b);
  });
  auto cocycle = parallel_map(300, 0, [&](std::size_t i) -> std::string {
    Rng rng = Rng::substream(6007, i);
    Word a = random_word(rng, 2, 0, 12), b = random_word(rng, 2, 0, 12), d = random_word(rng, 2, 0, 12);
    std::int64_t s = ctx.tau(b, d) - ctx.tau(multiply(a, b), d) + ctx.tau(a, multiply(b, d)) - ctx.tau(a, b);
    return s == 0 ? "" : pair_text(a, b) + " " + to_string(d);
  });
  auto invariant = parallel_map(200, 0, [&](std::size_t i) -> std::string {
    Rng rng = Rng::substream(6008, i);
    const MappingClass& f = rng.pick(classes);
    Word a = random_word(rng, 2, 0, 12), b = random_word(rng, 2, 0, 12);
    return ctx.tau(f.apply(a), f.apply(b)) == ctx.tau(a, b) ? "" : f.label() + " " + pair_text(a, b);
  });
  for (const auto& s : range)
    if (!s.empty()) c.fail("range: " + s);
  for (const auto& s : cocycle)
    if (!s.empty()) c.fail("cocycle: " + s);
  for (const auto& s : invariant)
    if (!s.empty()) c.fail("invariance: " + s);
  c.note("range 1000, cocycle 300, invariance 200");
}

void iterative_oracle(Criterion& c) {
  LiftContext ctx(build_rep(2));
  const std::int64_t n = 1 << 16;
  auto err = parallel_map(100, 0, [&](std::size_t i) {
    Rng rng = Rng::substream(7007, i);
    Word w = random_word(rng, 2, 1, 12);
    double it = trans_iterative(lift_cast<double>(ctx.lift_word<Mp>(w)), n);
    return std::abs(it - static_cast<double>(ctx.trans_word(w).value));
  });
  double worst = *std::max_element(err.begin(), err.end());
  if (worst > 2.0 / n) c.fail("max deviation " + std::to_string(worst));
  char buf[96];
  std::snprintf(buf, sizeof buf, "max |exact - iterative| = %.3g (bound %.3g)", worst, 2.0 / n);
  c.note(buf);
}

void winding_defects(Criterion& c) {
  const int g = 2;
  FieldModel x = builtin_field(g, 0), y = builtin_field(g, 1);
  LiftContext ctx(build_rep(g));
  for (int i = 0; i < 500; ++i) {
    Rng rng = Rng::substream(8008, static_cast<std::uint64_t>(i));
    Word a = random_word(rng, g, 0, 16), b = random_word(rng, g, 0, 16);
    if (defect_omega(x, a, b) != defect_omega(y, a, b)) c.fail("field dependence " + pair_text(a, b));
  }
  for (int i = 0; i < 500; ++i) {
    Rng rng = Rng::substream(8009, static_cast<std::uint64_t>(i));
    Word a = random_word(rng, g, 0, 16), b = random_word(rng, g, 0, 16);
    auto d = [&](const Word& w) { return omega(x, w) - omega(y, w); };
    if (d(multiply(a, b)) != d(a) + d(b)) c.fail("difference not additive " + pair_text(a, b));
  }
  int handles = 0;
  for (int h = 1; h <= g; ++h) {
    Word a = generator(g, gen_a(h)), b = generator(g, gen_b(h));
    for (int i = 0; i < 20; ++i) {
      Rng rng = Rng::substream(8010 + h, static_cast<std::uint64_t>(i));
      Word w = i == 0 ? Word(g) : random_word(rng, g, 1, 8);
      Word ca = conjugate(a, w), cb = conjugate(b, w);
      for (const FieldModel* f : {&x, &y})
        if (defect_omega(*f, ca, cb) != 0) c.fail("omega defect on " + pair_text(ca, cb));
      if (ctx.tau(ca, cb) != 0) c.fail("tau on " + pair_text(ca, cb));
      ++handles;
    }
  }
  c.note("500 + 500 samples; " + std::to_string(handles) + " handle pairs (plain and conjugated)");
}

void compare_run(Criterion& c) {
  const std::string dir = "acceptance_out";
  std::system(("mkdir -p " + dir).c_str());
  const std::string args = "compare-defects --genus 2 --samples 1000 --maxlen 12 --seed 42 --out ";
  int s1 = run_cli(args + dir + "/compare_1.json");
  int s2 = run_cli(args + dir + "/compare_2.json --threads 1");
  if (s1 != 0 || s2 != 0) c.fail("exit codes " + std::to_string(s1) + ", " + std::to_string(s2));
  std::string r1 = slurp(dir + "/compare_1.json"), r2 = slurp(dir + "/compare_2.json");
  if (r1.empty() || r1 != r2) c.fail("reports differ between runs");
  auto j = nlohmann::json::parse(r1);
  std::size_t pt = 0;
  for (const auto& p : j["pairs"]) {
    if (p["cover_type"] != "punctured_torus") continue;
    ++pt;
    if (p["d_omega"] != 0 || p["d_trans"] != 0 || p["agree"] != true)
      c.fail("punctured-torus pair " + p["alpha"].get<std::string>() + " | " + p["beta"].get<std::string>());
  }
  if (j["pairs"].size() != 1000) c.fail("expected 1000 pairs");
  char buf[128];
  std::snprintf(buf, sizeof buf, "agree_rate %.4f; %zu punctured-torus pairs, all with both defects 0",
                j["summary"]["agree_rate"].get<double>(), pt);
  c.note(buf);
  for (const auto& [name, s] : j["summary"]["by_cover_type"].items())
    c.note(name + ": " + std::to_string(s["count"].get<int>()) + " pairs, " + std::to_string(s["agree"].get<int>()) +
           " agree");
}

void word_problem(Criterion& c) {
  FuchsianRep rep = build_rep(2);
  const int g = 2;
  if (!surface_trivial(relator(g))) c.fail("relator not trivial");
  int equal = 0;
  for (int i = 0; i < 500; ++i) {
    Rng rng = Rng::substream(10010, static_cast<std::uint64_t>(i));
    Word u = random_word(rng, g, 0, 14), v(g);
    if (i % 2 == 0) {
      // half the pairs are related by inserted relator conjugates
      std::vector<Letter> raw(u.begin(), u.end());
      Word w = random_word(rng, g, 0, 4);
      Word r = conjugate(power(relator(g), rng.below(2) ? 1 : -1), w);
      auto at = static_cast<std::ptrdiff_t>(rng.below(raw.size() + 1));
      raw.insert(raw.begin() + at, r.begin(), r.end());
      v = reduce(g, raw, SIZE_MAX);
      if (!surface_trivial(conjugate(relator(g), w))) c.fail("conjugate of relator by " + to_string(w));
    } else {
      v = random_word(rng, g, 0, 14);
    }
    bool word_eq = surface_equal(u, v);
    bool mat_eq = projective_residual(evaluate<Mp>(rep, u), evaluate<Mp>(rep, v)) < 1e-6;
    if (word_eq != mat_eq) c.fail("disagreement on " + pair_text(u, v));
    equal += word_eq;
  }
  c.note("500 pairs, " + std::to_string(equal) + " equal in the surface group");
}

}  // namespace

int main() {
  std::cout << "rotnum acceptance run\n";
  int failed = 0;
  auto run = [&](int id, const char* title, double limit, void (*body)(Criterion&)) {
    Criterion c(id, title, limit);
    failed += !c.run(body);
  };
  run(1, "Euler number trans(G~(c)) = 2-2g, g = 2, 3, 4", 3.0, euler_number);
  run(2, "point-push values R(P(a1)) on the generator basis, g = 2, 3", 5.0, push_values);
  run(3, "R(P(a))(b) = (2-2g) i(a,b) on 200 pairs", 120.0, bilinear);
  run(4, "additivity (500) and crossed law (300)", 180.0, additivity_crossed);
  run(5, "R unchanged under c-conjugation and lift offsets", 60.0, well_defined);
  run(6, "Euler cocycle range, cocycle identity, invariance", 180.0, euler_cocycle);
  run(7, "iterative translation-number oracle, n = 2^16", 60.0, iterative_oracle);
  run(8, "winding defects: field independence, additivity, handle pairs", 120.0, winding_defects);
  run(9, "compare-defects evidence run, seed 42", 300.0, compare_run);
  run(10, "word problem agrees with matrix equality", 60.0, word_problem);
  std::cout << (failed ? std::to_string(failed) + " criterion failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
