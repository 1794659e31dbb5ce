#include <gtest/gtest.h>

#include <sstream>

#include "falc/cli.hpp"
#include "support.hpp"

using namespace falc;
using falc::testing::data_path;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, InconsistentExitsNegativeWithWitness) {
  const CliRun r = run({"check", data_path("k_prime.falc")});
  EXPECT_EQ(r.code, kExitNegative);
  EXPECT_TRUE(has(r.out, "verdict: inconsistent")) << r.out;
  EXPECT_TRUE(has(r.out, "clash: RB(P3, y4) positive 1/2 negative 1/2")) << r.out;
}

TEST(Cli, ConsistentExitsZero) {
  const CliRun k = run({"check", data_path("k.falc")});
  EXPECT_EQ(k.code, kExitOk);
  EXPECT_TRUE(has(k.out, "verdict: consistent")) << k.out;
  const CliRun e = run({"check", data_path("empty.falc")});
  EXPECT_EQ(e.code, kExitOk);
  EXPECT_TRUE(has(e.out, "facts: 0 positive, 0 negative")) << e.out;
}

TEST(Cli, KeyValueFormat) {
  const CliRun r = run({"--format", "kv", "check", data_path("k_prime.falc")});
  EXPECT_EQ(r.code, kExitNegative);
  EXPECT_TRUE(has(r.out, "verdict=inconsistent\n")) << r.out;
  EXPECT_TRUE(has(r.out, "clash.term=RB(P3, y4)\n")) << r.out;
  EXPECT_TRUE(has(r.out, "rule.bdia_b=2\n")) << r.out;
}

TEST(Cli, VersionNamesRuleSet) {
  const CliRun r = run({"--version"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("falc 0.1.0 rules ", 0), 0u) << r.out;
}

TEST(Cli, InputErrorsExitTwo) {
  const CliRun missing = run({"check", "/nonexistent/file.falc"});
  EXPECT_EQ(missing.code, kExitInputError);
  EXPECT_TRUE(has(missing.err, "error[io-error]")) << missing.err;
  EXPECT_EQ(run({}).code, kExitInputError);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInputError);
}

TEST(Cli, LimitsExitThree) {
  EXPECT_EQ(run({"check", "--cap", "2", data_path("k.falc")}).code, kExitLimit);
  const CliRun r = run({"oracle", "--budget", "3", data_path("k_prime.falc")});
  EXPECT_EQ(r.code, kExitLimit);
  EXPECT_TRUE(has(r.err, "error[budget-exceeded]")) << r.err;
}

TEST(Cli, LatticeOfExample) {
  const CliRun r = run({"lattice", data_path("three_valued_context.falc")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(has(r.out, "concepts 4\n")) << r.out;
  EXPECT_TRUE(has(r.out, "c1 extent (1, 1) intent (1/2, 0, 1/2)\n")) << r.out;
  EXPECT_TRUE(has(r.out, "c4 extent (0, 1/2) intent (1, 1, 1)\n")) << r.out;
  const CliRun dot = run({"lattice", "--dot", data_path("three_valued_context.falc")});
  EXPECT_EQ(dot.code, kExitOk);
  EXPECT_TRUE(has(dot.out, "digraph")) << dot.out;
}

TEST(Cli, OracleVerdicts) {
  EXPECT_EQ(run({"oracle", "--max-obj", "2", "--max-feat", "2", data_path("k_prime.falc")}).code,
            kExitNegative);
  const CliRun found = run({"oracle", "--max-obj", "2", "--max-feat", "2", data_path("empty.falc")});
  EXPECT_EQ(found.code, kExitOk);
  EXPECT_TRUE(has(found.out, "status: found")) << found.out;
}

TEST(Cli, ExpandPrintsUnraveledKb) {
  const CliRun r = run({"expand", data_path("k_prime.falc")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(has(r.out, "abox 1/2 <= y4 :: C1 & C3\n")) << r.out;
  EXPECT_FALSE(has(r.out, "tbox")) << r.out;
}

TEST(Cli, ModelAndTrace) {
  const CliRun m = run({"model", data_path("k.falc")});
  EXPECT_EQ(m.code, kExitOk);
  EXPECT_TRUE(has(m.out, "model {")) << m.out;
  const CliRun t = run({"trace", data_path("k_prime.falc")});
  EXPECT_TRUE(has(t.out, "bdia_b")) << t.out;
  EXPECT_EQ(run({"model", data_path("k_prime.falc")}).code, kExitNegative);
}

TEST(Cli, OutputIsDeterministic) {
  for (const char* f : {"k.falc", "k_prime.falc"}) {
    for (const char* cmd : {"check", "model", "trace"}) {
      const CliRun a = run({cmd, data_path(f)});
      const CliRun b = run({cmd, data_path(f)});
      EXPECT_EQ(a.out, b.out) << cmd << ' ' << f;
      EXPECT_EQ(a.code, b.code);
    }
  }
}

TEST(Cli, SeedDoesNotChangeVerdict) {
  for (const char* seed : {"1", "2", "3"}) {
    EXPECT_EQ(run({"--seed", seed, "check", data_path("k_prime.falc")}).code, kExitNegative);
    EXPECT_EQ(run({"--seed", seed, "check", data_path("k.falc")}).code, kExitOk);
  }
}
