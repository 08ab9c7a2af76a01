// rotnum: command-line front end for the rotation-number toolkit.
//
// Exit codes: 0 pass, 1 property failure, 2 usage error, 3 certification
// failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rotnum/rotnum.hpp"

namespace {

using nlohmann::ordered_json;
using namespace rotnum;

enum Exit { kPass = 0, kPropertyFailure = 1, kUsage = 2, kCertification = 3 };

struct RunConfig {
  int genus = 2;
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  std::size_t maxlen = 12;
  unsigned threads = 0;
  std::string precision = "extended";
  std::string format = "json";
  std::string out;
  std::string config;
  std::string suite = "all";
  std::string word, alpha, beta, phi, gamma;
  int field = 0;

  Precision precision_policy() const {
    return precision == "double" ? Precision::Double : Precision::Extended;
  }
};

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ordered_json matrix_json(const Mat2<double>& m) {
  return ordered_json::array({ordered_json::array({m.a, m.b}), ordered_json::array({m.c, m.d})});
}

std::string generator_name(int k) {
  return std::string(k % 2 ? "a" : "b") + std::to_string((k + 1) / 2);
}

ordered_json conventions(const FuchsianRep& rep) {
  ordered_json gens = ordered_json::object();
  for (int k = 1; k <= 2 * rep.genus; ++k) gens[generator_name(k)] = matrix_json(rep.gens[k - 1]);
  return {
      {"relator", to_string(relator(rep.genus))},
      {"commutator", "[x,y] = x y x^-1 y^-1"},
      {"composition", "f * h applies f first"},
      {"point_push", "push(w) sends x to w^-1 x w modulo the relator"},
      {"circle_coordinate", "t in [0,1) is the line at angle pi t"},
      {"euler_number", 2 - 2 * rep.genus},
      {"orientation_flipped", rep.orientation_flipped},
      {"generic_turn", kGenericTurn},
      {"generators", gens},
  };
}

ordered_json params_json(const RunConfig& c, const std::string& command) {
  ordered_json p{{"command", command}, {"genus", c.genus}, {"precision", c.precision}};
  if (command == "verify" || command == "compare-defects") {
    p["seed"] = c.seed;
    p["samples"] = c.samples;
    p["maxlen"] = c.maxlen;
  }
  if (command == "verify") p["suite"] = c.suite;
  if (command == "trans" || command == "omega") p["word"] = c.word;
  if (command == "tau") {
    p["alpha"] = c.alpha;
    p["beta"] = c.beta;
  }
  if (command == "r") {
    p["phi"] = c.phi;
    if (!c.gamma.empty()) p["gamma"] = c.gamma;
  }
  if (command == "omega" || command == "compare-defects") p["field"] = c.field;
  return p;
}

// Flat tables for --format csv.
using Table = std::vector<std::vector<std::string>>;

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string render_csv(const Table& t) {
  std::string out;
  for (const auto& row : t) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
    out += "\n";
  }
  return out;
}

std::string scalar_text(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return fmt17(v.get<double>());
  return v.dump();
}

Table key_value_table(const ordered_json& result) {
  Table t{{"key", "value"}};
  for (const auto& [k, v] : result.items())
    if (!v.is_structured()) t.push_back({k, scalar_text(v)});
  return t;
}

void emit(const RunConfig& c, const ordered_json& report, const Table& table) {
  std::string text = c.format == "csv" ? render_csv(table) : report.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ArgumentError("cannot write " + c.out);
  f << text;
}

ordered_json base_report(const RunConfig& c, const std::string& command, const FuchsianRep& rep) {
  return {{"params", params_json(c, command)}, {"conventions", conventions(rep)}};
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw ArgumentError(std::string("missing required ") + flag);
}

int cmd_trans(const RunConfig& c) {
  require(c.word, "--word");
  FuchsianRep rep = build_rep(c.genus);
  LiftContext ctx(rep, {}, c.precision_policy());
  Word w = parse_word(c.word, c.genus);
  TransResult t = ctx.trans_word(w);
  ordered_json r = base_report(c, "trans", rep);
  r["word"] = to_string(w);
  r["trans"] = t.value;
  r["certified"] = t.certified;
  r["residual"] = t.residual;
  r["escalated"] = t.escalated;
  emit(c, r, key_value_table(r));
  return kPass;
}

int cmd_tau(const RunConfig& c) {
  require(c.alpha, "--alpha");
  require(c.beta, "--beta");
  FuchsianRep rep = build_rep(c.genus);
  LiftContext ctx(rep, {}, c.precision_policy());
  Word a = parse_word(c.alpha, c.genus), b = parse_word(c.beta, c.genus);
  ordered_json r = base_report(c, "tau", rep);
  r["alpha"] = to_string(a);
  r["beta"] = to_string(b);
  r["tau"] = ctx.tau(a, b);
  emit(c, r, key_value_table(r));
  return kPass;
}

int cmd_r(const RunConfig& c) {
  require(c.phi, "--phi");
  FuchsianRep rep = build_rep(c.genus);
  LiftContext ctx(rep, {}, c.precision_policy());
  ClassProduct phi = parse_class_product(c.phi, c.genus);
  ordered_json r = base_report(c, "r", rep);
  r["phi"] = c.phi;
  Table t;
  if (!c.gamma.empty()) {
    Word g = parse_word(c.gamma, c.genus);
    r["gamma"] = to_string(g);
    r["r"] = R(ctx, phi, g);
    t = key_value_table(r);
  } else {
    // No gamma: the class of R(phi) in Hom(F_2g, Z), on the generator basis.
    HomologyTable h = R_on_homology(ctx, phi, 32, c.seed);
    ordered_json values = ordered_json::object();
    t = {{"generator", "r"}};
    for (int k = 1; k <= 2 * c.genus; ++k) {
      values[generator_name(k)] = h.values[k - 1];
      t.push_back({generator_name(k), std::to_string(h.values[k - 1])});
    }
    r["homology"] = values;
    r["additivity_checks"] = h.additivity_checks;
  }
  emit(c, r, t);
  return kPass;
}

int cmd_omega(const RunConfig& c) {
  require(c.word, "--word");
  if (c.field != 0 && c.field != 1) throw ArgumentError("--field must be 0 or 1");
  FuchsianRep rep = build_rep(c.genus);
  FieldModel f = builtin_field(c.genus, c.field);
  Word w = parse_word(c.word, c.genus);
  ordered_json r = base_report(c, "omega", rep);
  r["word"] = to_string(w);
  r["field"] = f.name();
  r["omega"] = omega(f, w);
  emit(c, r, key_value_table(r));
  return kPass;
}

int cmd_compare(const RunConfig& c) {
  if (c.field != 0 && c.field != 1) throw ArgumentError("--field must be 0 or 1");
  FuchsianRep rep = build_rep(c.genus);
  LiftContext ctx(rep, {}, c.precision_policy());
  DefectReport d = compare_defects(ctx, builtin_field(c.genus, c.field), c.samples, c.maxlen, c.seed, c.threads);
  ordered_json r = base_report(c, "compare-defects", rep);
  ordered_json pairs = ordered_json::array();
  Table t{{"alpha", "beta", "d_omega", "d_trans", "cover_type", "agree"}};
  for (const auto& p : d.pairs) {
    pairs.push_back({{"alpha", to_string(p.alpha)},
                     {"beta", to_string(p.beta)},
                     {"d_omega", p.d_omega},
                     {"d_trans", p.d_trans},
                     {"cover_type", to_string(p.cover)},
                     {"agree", p.agree()}});
    t.push_back({to_string(p.alpha), to_string(p.beta), std::to_string(p.d_omega), std::to_string(p.d_trans),
                 to_string(p.cover), p.agree() ? "true" : "false"});
  }
  ordered_json by = ordered_json::object();
  for (const auto& [name, s] : d.by_cover)
    by[name] = {{"count", s.count}, {"agree", s.agree}, {"omega_zero", s.omega_zero}, {"trans_zero", s.trans_zero}};
  r["pairs"] = pairs;
  r["summary"] = {{"agree_rate", d.agree_rate()},
                  {"by_cover_type", by},
                  {"punctured_torus_consistent", d.punctured_torus_consistent()}};
  emit(c, r, t);
  return d.punctured_torus_consistent() ? kPass : kPropertyFailure;
}

int cmd_verify(const RunConfig& c) {
  if (c.suite != "all" && std::find(suite_names().begin(), suite_names().end(), c.suite) == suite_names().end())
    throw ArgumentError("unknown suite '" + c.suite + "'");
  VerifyConfig v{c.genus, c.seed, c.samples, c.maxlen, c.threads, c.precision_policy()};
  FuchsianRep rep = build_rep(c.genus);
  std::vector<PropertyResult> results = run_suites(v, c.suite);
  ordered_json r = base_report(c, "verify", rep);
  ordered_json props = ordered_json::array();
  Table t{{"suite", "property", "samples", "failures", "passed", "counterexample"}};
  std::size_t failed = 0;
  bool math_failure = false;
  for (const auto& p : results) {
    props.push_back({{"suite", p.suite},
                     {"property", p.name},
                     {"samples", p.samples},
                     {"failures", p.failures},
                     {"passed", p.passed()},
                     {"counterexample", p.counterexample ? ordered_json(*p.counterexample) : ordered_json()}});
    t.push_back({p.suite, p.name, std::to_string(p.samples), std::to_string(p.failures), p.passed() ? "true" : "false",
                 p.counterexample.value_or("")});
    if (!p.passed()) {
      ++failed;
      math_failure |= !p.certification_failure;
    }
  }
  r["properties"] = props;
  r["summary"] = {{"properties", results.size()}, {"failed", failed}, {"passed", failed == 0}};
  emit(c, r, t);
  if (failed == 0) return kPass;
  return math_failure ? kPropertyFailure : kCertification;
}

int cmd_rep_dump(const RunConfig& c) {
  FuchsianRep rep = build_rep(c.genus);
  ordered_json r{{"params", params_json(c, "rep-dump")}};
  ordered_json gens = ordered_json::array();
  Table t{{"generator", "m00", "m01", "m10", "m11"}};
  for (int k = 1; k <= 2 * c.genus; ++k) {
    const Mat2<double>& m = rep.gens[k - 1];
    gens.push_back({{"name", generator_name(k)}, {"matrix", matrix_json(m)}, {"trace", m.trace()}});
    t.push_back({generator_name(k), fmt17(m.a), fmt17(m.b), fmt17(m.c), fmt17(m.d)});
  }
  r["genus"] = c.genus;
  r["orientation_flipped"] = rep.orientation_flipped;
  r["generic_turn"] = kGenericTurn;
  r["relator_residual"] = distance_to_identity(evaluate<Mp>(rep, relator(c.genus)));
  r["generators"] = gens;
  emit(c, r, t);
  return kPass;
}

// Values from a --config file fill options not given on the command line.  A
// report's "params" object is accepted, so a dumped report replays its run.
void apply_config(CLI::App& app, RunConfig& c) {
  if (c.config.empty()) return;
  std::ifstream f(c.config);
  if (!f) throw ArgumentError("cannot read config " + c.config);
  ordered_json j;
  try {
    j = ordered_json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw ArgumentError(std::string("config is not valid JSON: ") + e.what());
  }
  if (j.contains("params")) j = j["params"];
  if (!j.is_object()) throw ArgumentError("config must be a JSON object");
  auto given = [&](const char* flag) {
    for (CLI::App* sub : app.get_subcommands()) {
      const CLI::Option* o = sub->get_option_no_throw(flag);
      if (o && o->count()) return true;
    }
    const CLI::Option* o = app.get_option_no_throw(flag);
    return o && o->count() > 0;
  };
  auto take = [&](const char* key, auto& field) {
    std::string flag = std::string("--") + key;
    if (!j.contains(key) || given(flag.c_str())) return;
    try {
      j.at(key).get_to(field);
    } catch (const nlohmann::json::exception&) {
      throw ArgumentError(std::string("config key '") + key + "' has the wrong type");
    }
  };
  take("genus", c.genus);
  take("seed", c.seed);
  take("samples", c.samples);
  take("maxlen", c.maxlen);
  take("precision", c.precision);
  take("suite", c.suite);
  take("word", c.word);
  take("alpha", c.alpha);
  take("beta", c.beta);
  take("phi", c.phi);
  take("gamma", c.gamma);
  take("field", c.field);
}

void validate(const RunConfig& c) {
  check_genus(c.genus);
  if (c.samples < 1) throw ArgumentError("--samples must be at least 1");
  if (c.maxlen < 1) throw ArgumentError("--maxlen must be at least 1");
  if (c.precision != "double" && c.precision != "extended")
    throw ArgumentError("--precision must be double or extended");
  if (c.format != "json" && c.format != "csv") throw ArgumentError("--format must be json or csv");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Rotation-number crossed homomorphism toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--genus,-g", c.genus, "surface genus (>= 2)");
  app.add_option("--seed", c.seed, "experiment seed");
  app.add_option("--samples", c.samples, "sample count");
  app.add_option("--maxlen", c.maxlen, "maximum sampled word length");
  app.add_option("--threads", c.threads, "worker threads (0: all cores)");
  app.add_option("--precision", c.precision, "double | extended");
  app.add_option("--format", c.format, "json | csv");
  app.add_option("--out,-o", c.out, "output file (default stdout)");
  app.add_option("--config", c.config, "JSON config or report whose params to reuse");

  std::string command;
  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&command, name] { command = name; });
    return s;
  };
  CLI::App* verify = sub("verify", "run the property suites");
  verify->add_option("--suite", c.suite, "all | wordcore | mapclass | fuchs | circlelift | cocycle | windnum");
  sub("trans", "translation number of G~(word)")->add_option("--word,-w", c.word, "word");
  CLI::App* tau = sub("tau", "Euler cocycle value");
  tau->add_option("--alpha", c.alpha, "first word");
  tau->add_option("--beta", c.beta, "second word");
  CLI::App* r = sub("r", "R(phi)(gamma), or R(phi) on generators without --gamma");
  r->add_option("--phi", c.phi, "mapping-class expression");
  r->add_option("--gamma", c.gamma, "word");
  CLI::App* om = sub("omega", "winding number of a word");
  om->add_option("--word,-w", c.word, "word");
  om->add_option("--field", c.field, "built-in vector field 0 or 1");
  sub("compare-defects", "compare winding and translation defects")
      ->add_option("--field", c.field, "built-in vector field 0 or 1");
  sub("rep-dump", "print the generator matrices");
  CLI::App* rep = app.add_subcommand("rep", "representation tools");
  rep->require_subcommand(1);
  rep->add_subcommand("dump", "print the generator matrices")->callback([&command] { command = "rep-dump"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    apply_config(app, c);
    validate(c);
    if (command == "verify") return cmd_verify(c);
    if (command == "trans") return cmd_trans(c);
    if (command == "tau") return cmd_tau(c);
    if (command == "r") return cmd_r(c);
    if (command == "omega") return cmd_omega(c);
    if (command == "compare-defects") return cmd_compare(c);
    if (command == "rep-dump") return cmd_rep_dump(c);
    throw ArgumentError("unknown command");
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ArgumentError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const LengthError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const CertificationError& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return kCertification;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPropertyFailure;
  }
}
