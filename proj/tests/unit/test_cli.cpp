#include <gtest/gtest.h>

#include <cstdlib>

#include "wpa_cli/cli.hpp"

using wpa::cli::run;

namespace {

wpa::cli::RunReport cli(std::vector<std::string> args) {
  args.insert(args.begin(), "wpa");
  return run(args);
}

}  // namespace

TEST(Cli, CountSym3) {
  const auto r = cli({"count", "--spec", "sym:3", "--n", "6"});
  EXPECT_EQ(r.exit_code, 0);
  const auto& tab = r.report["result"]["s_table"];
  ASSERT_EQ(tab.size(), 6u);
  EXPECT_EQ(tab.back()["s_n"], "6");
  const auto csv = cli({"count", "--spec", "sym:3", "--n", "6", "--format", "csv"});
  EXPECT_EQ(csv.output, "n,s_n\n1,1\n2,2\n3,5\n4,5\n5,5\n6,6\n");
}

TEST(Cli, GrowthVerify) {
  const auto r = cli({"growth-verify", "--seq", "cyc:2,cyc:3", "--nmax", "18"});
  EXPECT_EQ(r.exit_code, 0) << r.error;
  EXPECT_EQ(r.report["result"]["all_ok"], true);
}

TEST(Cli, PlanToy) {
  const auto r = cli({"plan", "thmA", "--f", "loglog2", "--toy", "--kmax", "2"});
  EXPECT_EQ(r.exit_code, 0) << r.error;
  const auto& certs = r.report["result"]["certificates"];
  ASSERT_EQ(certs.size(), 3u);
  EXPECT_EQ(certs[0]["p"], "17");
  EXPECT_EQ(certs[1]["kind"], "symbolic");
  EXPECT_EQ(certs[2]["kind"], "symbolic");
  EXPECT_EQ(r.report["settings"]["constants"]["label"], "demonstrative (toy constants)");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({}).exit_code, 2);
  EXPECT_EQ(cli({"count"}).exit_code, 2);
  EXPECT_EQ(cli({"count", "--spec", "bogus:3"}).exit_code, 2);
  EXPECT_EQ(cli({"count", "--spec", "sym:7"}).exit_code, 3);
  EXPECT_EQ(cli({"count", "--spec", "sym:4", "--max-order", "10"}).exit_code, 3);
  EXPECT_EQ(cli({"nice-check", "--seq", "cyc:2,cyc:2"}).exit_code, 1);
  EXPECT_EQ(cli({"plan", "thmA", "--f", "const:3"}).exit_code, 2);
  EXPECT_EQ(cli({"plan", "thmA", "--toy", "--constants", "standard"}).exit_code, 2);
  EXPECT_EQ(cli({"count", "--spec", "sym:3", "--format", "xml"}).exit_code, 2);
  const auto pre = cli({"growth-verify", "--seq", "cyc:2,cyc:3", "--nmax", "3", "--r", "1"});
  EXPECT_EQ(pre.exit_code, 2);
  EXPECT_NE(pre.error.find("--r and --t"), std::string::npos);
}

TEST(Cli, EnvironmentOverridesAndFlagsWin) {
  setenv("WPA_MAX_ORDER", "10", 1);
  EXPECT_EQ(cli({"count", "--spec", "sym:4"}).exit_code, 3);
  EXPECT_EQ(cli({"count", "--spec", "sym:4", "--max-order", "100"}).exit_code, 0);
  unsetenv("WPA_MAX_ORDER");
  setenv("WPA_BITCAP", "4096", 1);
  const auto r = cli({"plan", "thmA", "--f", "log2", "--toy", "--kmax", "1"});
  EXPECT_EQ(r.report["settings"]["bitcap"], 4096);
  const auto s = cli({"plan", "thmA", "--f", "log2", "--toy", "--kmax", "1", "--bitcap", "128"});
  EXPECT_EQ(s.report["settings"]["bitcap"], 128);
  unsetenv("WPA_BITCAP");
  setenv("WPA_BITCAP", "abc", 1);
  EXPECT_EQ(cli({"plan", "thmA", "--toy"}).exit_code, 2);
  unsetenv("WPA_BITCAP");
}

TEST(Cli, EveryCommandRunsAndRepeatsIdentically) {
  const std::vector<std::vector<std::string>> cmds = {
      {"group", "--spec", "psl2:7"},
      {"wreath", "--spec", "cyc:2", "--top", "cyc:3"},
      {"wreath", "--spec", "cyc:3", "--top", "cyc:2", "--action", "imprimitive"},
      {"wreath", "--seq", "cyc:2,cyc:3,cyc:2"},
      {"count", "--spec", "alt:4", "--format", "text"},
      {"tower", "--a", "2,2,2,2,2,2,2"},
      {"tower", "--a", "6,8,12,14", "--format", "text"},
      {"nice-check", "--seq", "psl2:13,psl2:17,psl2:19", "--mode", "facts"},
      {"growth-verify", "--seq", "cyc:2,cyc:2", "--nmax", "8", "--format", "csv"},
      {"plan", "var1", "--f", "log2", "--toy"},
      {"plan", "var2", "--h", "2", "--toy", "--kmax", "1"},
  };
  for (const auto& c : cmds) {
    const auto a = cli(c), b = cli(c);
    EXPECT_EQ(a.exit_code, 0) << c[0] << ": " << a.error;
    EXPECT_EQ(a.output, b.output) << c[0];
    EXPECT_FALSE(a.output.empty());
  }
}
