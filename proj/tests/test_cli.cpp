#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "cycloid/io.hpp"
#include "fixtures.hpp"

using namespace cycloid;
using namespace cycloid::testing;

namespace {

struct Run
{
  int status;
  std::string out;
};

Run cli(std::string const &args)
{
  std::string cmd = std::string(CYCLOID_CLI) + " -q " + args + " 2>/dev/null";
  FILE *p = popen(cmd.c_str(), "r");
  if (!p)
    return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (auto n = fread(buf.data(), 1, buf.size(), p))
    out.append(buf.data(), n);
  int raw = pclose(p);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string sample(char const *name)
{
  return std::string(CYCLOID_SAMPLES) + "/" + name;
}

std::string body(std::string const &out)
{
  return detail::strip_comments(out);
}

std::vector<Census> census_of(std::string const &out)
{
  std::istringstream s(out);
  return read_censuses(s);
}

} // namespace

TEST(Cli, ValidateValid)
{
  auto r = cli("validate " + sample("two_cycle.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(body(r.out), "valid\n");
}

TEST(Cli, ValidateRowBroken)
{
  auto r = cli("validate '{\"n\":2,\"table\":[[0,0],[1,0]]}'");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("row 0 not bijective"), std::string::npos);
}

TEST(Cli, ValidateCycloidBrokenPrintsWitness)
{
  // cyclic(3) with one row replaced by the identity
  auto rows = cyclic(3).rows();
  rows[2] = {0, 1, 2};
  json j{{"n", 3}, {"table", rows}};
  auto r = cli("validate --format json '" + j.dump() + "'");
  EXPECT_EQ(r.status, 1);
  auto v = json::parse(body(r.out));
  EXPECT_FALSE(v["valid"].get<bool>());
  ASSERT_TRUE(v.contains("witness"));
  auto w = v["witness"].get<std::vector<point>>();
  auto t = CycleSet::from_rows_unchecked(rows);
  EXPECT_NE(t(t(w[0], w[1]), t(w[0], w[2])), t(t(w[1], w[0]), t(w[1], w[2])));
}

TEST(Cli, ParseErrorExitsTwo)
{
  EXPECT_EQ(cli("validate '{\"n\":2,'").status, 2);
  EXPECT_EQ(cli("validate /no/such/file").status, 2);
  EXPECT_EQ(cli("frobnicate").status, 2);
  EXPECT_EQ(cli("enumerate").status, 2);
}

TEST(Cli, MetadataHeader)
{
  auto r = cli("analyze " + sample("two_cycle.json"));
  EXPECT_EQ(r.out.rfind("# cycloid ", 0), 0u);
  EXPECT_NE(r.out.find("# command: cycloid -q analyze"), std::string::npos);
  EXPECT_NE(r.out.find("# wall-clock: "), std::string::npos);
}

TEST(Cli, AnalyzeSizeTwo)
{
  auto r = cli("analyze --format json " + sample("two_cycle.json"));
  ASSERT_EQ(r.status, 0);
  auto j = json::parse(body(r.out));
  EXPECT_EQ(j, to_json(analyze(two_cycle())));
}

TEST(Cli, AnalyzeTwelvePoints)
{
  EXPECT_EQ(body(cli("analyze --field decomposable " + sample("twelve_points.json")).out),
            "yes\n");
  EXPECT_EQ(body(cli("analyze --field group_order " + sample("twelve_points.json")).out),
            "6\n");
  EXPECT_EQ(cli("analyze --field nonsense " + sample("twelve_points.json")).status, 2);
}

TEST(Cli, AnalyzeIdentity)
{
  auto r = cli("analyze " + sample("identity5.json"));
  EXPECT_NE(r.out.find("squaring: ()"), std::string::npos);
  EXPECT_NE(r.out.find("decomposable: yes"), std::string::npos);
}

TEST(Cli, SigmaInputIsOneBased)
{
  auto r = cli("analyze --format json --field squaring --sigma '(1 2)' --sigma '(1 2)'");
  EXPECT_EQ(body(r.out), "[1,0]\n");
  auto z = cli("--zero-based analyze --field squaring --sigma '(0 1)' --sigma '(0 1)'");
  EXPECT_EQ(body(z.out), "(0 1)\n");
  EXPECT_EQ(cli("analyze --sigma '(0 1)' --sigma '(0 1)'").status, 2);
}

TEST(Cli, EnumerateCounts)
{
  auto two = census_of(cli("enumerate -n 2 --indecomposable").out);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0].count(), 1u);
  auto four = census_of(cli("enumerate -n 4 --indecomposable --squaring 2,1,1").out);
  ASSERT_EQ(four.size(), 1u);
  EXPECT_EQ(four[0].count(), 1u);
  auto one = json::parse(body(cli("enumerate -n 1 --count-only").out));
  EXPECT_EQ(one["summary"]["count"], 1);
}

TEST(Cli, EnumerateIndependentOfJobs)
{
  EXPECT_EQ(body(cli("enumerate -n 5 --jobs 1").out),
            body(cli("enumerate -n 5 --jobs 3").out));
}

TEST(Cli, EnumerateCap)
{
  EXPECT_EQ(cli("enumerate -n 40 --count-only").status, 2);
}

TEST(Cli, EmittedTablesRoundTrip)
{
  for (auto &c : census_of(cli("enumerate -n 4").out))
    for (auto const &X : c.representatives) {
      auto j = to_json(X).dump();
      auto r = cli("cable -k 3 '" + j + "'");
      ASSERT_EQ(r.status, 0) << j;
      auto Y = parse_cycle_set(r.out);
      EXPECT_EQ(Y, cabling(X, 3));
      auto t = cli("--format text retract '" + j + "'");
      EXPECT_EQ(parse_cycle_set(t.out), retraction(X).set);
    }
}

TEST(Cli, Product)
{
  auto r = cli("product " + sample("two_cycle.json") + " " + sample("cyclic3.json"));
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(parse_cycle_set(r.out), direct_product(two_cycle(), cyclic(3)));
}

TEST(Cli, VerifyAllUpToFive)
{
  auto r = cli("verify --all --max-size 5");
  EXPECT_EQ(r.status, 0);
  std::size_t verdicts = 0;
  std::istringstream s(body(r.out));
  for (std::string line; std::getline(s, line);) {
    auto j = json::parse(line);
    EXPECT_TRUE(j["passed"].get<bool>()) << j["checker"];
    ++verdicts;
  }
  EXPECT_EQ(verdicts, all_checker_ids().size());
  EXPECT_NE(r.out.find("# checker"), std::string::npos);
}

TEST(Cli, VerifyLatinUpToSix)
{
  EXPECT_EQ(cli("verify --suite latin --max-size 6").status, 0);
}

TEST(Cli, VerifyInjectedCensusFails)
{
  auto path = ::testing::TempDir() + "/injected.jsonl";
  {
    std::ofstream f(path);
    f << census_to_string(enumerate(3));
    f << "{\"n\":3,\"table\":[[0,1,2],[0,1,2],[1,2,0]]}\n";
  }
  EXPECT_EQ(cli("verify --suite fixedp --census " + path).status, 1);
  EXPECT_EQ(cli("verify --suite fixedp --census " + path + " --validate-members").status,
            0);
  EXPECT_EQ(cli("verify --suite fixedp --census /no/such/census").status, 2);
  EXPECT_EQ(cli("verify --suite nosuch").status, 2);
}

TEST(Cli, BraceValidateZ4)
{
  auto r = cli("brace validate " + sample("z4_brace.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(body(r.out), "valid\n");
  EXPECT_EQ(cli("brace validate '{\"n\":2,\"add\":[[0,1],[1,1]],\"circ\":[[0,1],[1,0]]}'")
                .status,
            1);
}

TEST(Cli, BraceSocleIndex)
{
  auto j = json::parse(body(cli("--format json brace socle " + sample("z9_brace.json")).out));
  EXPECT_EQ(j["index"], 3);
}

TEST(Cli, BraceCosetsGivesCyclicThree)
{
  auto r = cli("brace cosets " + sample("z3_trivial_brace.json") + " --a 1 --k 0");
  ASSERT_EQ(r.status, 0);
  EXPECT_TRUE(is_isomorphic(parse_cycle_set(r.out), cyclic(3)));
  EXPECT_EQ(cli("brace cosets " + sample("z3_trivial_brace.json") + " --a 1 --k 0,1")
                .status,
            2);
}

TEST(Cli, BraceOfCycleSet)
{
  auto r = cli("brace of-cycleset " + sample("two_cycle.json"));
  ASSERT_EQ(r.status, 0);
  auto B = parse_brace(r.out);
  EXPECT_TRUE(are_isomorphic(B, trivial_cyclic_brace(2)));
}
