#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  std::string cmd = std::string(ROTNUM_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

nlohmann::json json_of(const CliRun& r) { return nlohmann::json::parse(r.out); }

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string temp_path(const char* name) { return testing::TempDir() + name; }

}  // namespace

TEST(Cli, TransOfRelator) {
  CliRun r = run("trans --genus 2 --word \"a1 b1 A1 B1 a2 b2 A2 B2\"");
  ASSERT_EQ(r.status, 0);
  auto j = json_of(r);
  EXPECT_EQ(j["trans"], -2);
  EXPECT_EQ(j["certified"], true);
  EXPECT_TRUE(j.contains("residual"));
  EXPECT_EQ(j["conventions"]["orientation_flipped"].is_boolean(), true);
}

TEST(Cli, RAndTau) {
  CliRun r = run("r --genus 2 --phi \"push(a1)\" --gamma \"b1\"");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(json_of(r)["r"], -2);
  CliRun h = run("r --genus 3 --phi \"push(a1)\"");
  ASSERT_EQ(h.status, 0);
  EXPECT_EQ(json_of(h)["homology"]["b1"], -4);
  CliRun t = run("tau --genus 2 --alpha \"-\" --beta \"a1\"");
  ASSERT_EQ(t.status, 0);
  EXPECT_EQ(json_of(t)["tau"], 0);
}

TEST(Cli, Omega) {
  CliRun r = run("omega --genus 2 --word \"a1 b1 A1 B1 a2 b2 A2 B2\" --field 1");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(json_of(r)["omega"], -3);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("verify --genus 1").status, 2);
  EXPECT_EQ(run("trans --genus 2 --word \"a1 c1\"").status, 2);
  EXPECT_EQ(run("r --phi \"push(a1\" --gamma b1").status, 2);
  EXPECT_EQ(run("trans --genus 2").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("verify --suite nope").status, 2);
  EXPECT_EQ(run("trans --word a1 --format xml").status, 2);
  EXPECT_EQ(run("verify --samples 0").status, 2);
}

TEST(Cli, RepDumpBothSpellings) {
  CliRun a = run("rep-dump --genus 2"), b = run("rep dump --genus 2");
  ASSERT_EQ(a.status, 0);
  ASSERT_EQ(b.status, 0);
  auto j = json_of(a);
  EXPECT_EQ(j["generators"].size(), 4u);
  EXPECT_LT(j["relator_residual"].get<double>(), 1e-9);
  EXPECT_EQ(j["generators"], json_of(b)["generators"]);
  CliRun csv = run("rep-dump --format csv");
  EXPECT_EQ(csv.out.substr(0, 25), "generator,m00,m01,m10,m11");
}

TEST(Cli, VerifyIsDeterministic) {
  std::string p1 = temp_path("v1.json"), p2 = temp_path("v2.json");
  CliRun a = run("verify --genus 2 --suite cocycle --samples 5 --seed 3 --threads 1 --out " + p1);
  CliRun b = run("verify --genus 2 --suite cocycle --samples 5 --seed 3 --threads 4 --out " + p2);
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(b.status, 0);
  std::string s1 = slurp(p1);
  EXPECT_FALSE(s1.empty());
  EXPECT_EQ(s1, slurp(p2));
  auto j = nlohmann::json::parse(s1);
  for (const auto& p : j["properties"]) {
    EXPECT_TRUE(p.contains("samples"));
    EXPECT_TRUE(p.contains("counterexample"));
  }
}

TEST(Cli, DefaultVerifyPasses) { EXPECT_EQ(run("verify --samples 10 --out " + temp_path("vd.json")).status, 0); }

TEST(Cli, DoublePrecisionReportsCertificationFailures) {
  // Long products exceed what double precision can certify; the exit code
  // distinguishes this from a mathematical failure.
  CliRun r = run("verify --precision double --suite circlelift --samples 20");
  EXPECT_TRUE(r.status == 0 || r.status == 3) << r.status;
}

TEST(Cli, CompareDefectsSchemaAndReplay) {
  std::string p1 = temp_path("cd1.json"), p2 = temp_path("cd2.json");
  CliRun a = run("compare-defects --genus 2 --samples 40 --maxlen 8 --seed 42 --out " + p1);
  ASSERT_EQ(a.status, 0);
  auto j = nlohmann::json::parse(slurp(p1));
  ASSERT_EQ(j["pairs"].size(), 40u);
  for (const char* key : {"alpha", "beta", "d_omega", "d_trans", "cover_type", "agree"})
    EXPECT_TRUE(j["pairs"][0].contains(key)) << key;
  EXPECT_TRUE(j["summary"].contains("agree_rate"));
  EXPECT_TRUE(j["summary"].contains("by_cover_type"));
  EXPECT_EQ(j["params"]["seed"], 42);
  // the report's params replay the run byte for byte
  CliRun b = run("--config " + p1 + " compare-defects --out " + p2);
  ASSERT_EQ(b.status, 0);
  EXPECT_EQ(slurp(p1), slurp(p2));
  CliRun csv = run("compare-defects --samples 3 --format csv");
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "alpha,beta,d_omega,d_trans,cover_type,agree");
}
