#include <gtest/gtest.h>

#include <sstream>

#include "cycloid/io.hpp"
#include "fixtures.hpp"

using namespace cycloid;
using namespace cycloid::testing;

TEST(Io, JsonRoundTrip)
{
  for (auto const &X : {two_cycle(), cyclic(3), twelve_point_example()}) {
    auto text = to_json(X).dump();
    EXPECT_EQ(parse_cycle_set(text), X);
  }
}

TEST(Io, TextRoundTrip)
{
  auto X = twelve_point_example();
  EXPECT_EQ(parse_cycle_set(to_text(X)), X);
  EXPECT_EQ(to_text(two_cycle()), "n=2\n1 0\n1 0\n");
}

TEST(Io, CommentLinesIgnored)
{
  auto X = parse_cycle_set("# version x\n# command y\n{\"n\":2,\"table\":[[1,0],[1,0]]}\n");
  EXPECT_EQ(X, two_cycle());
  EXPECT_EQ(parse_cycle_set("# hi\nn=2\n1 0\n  # mid\n1 0\n"), two_cycle());
}

TEST(Io, MalformedInputIsParseError)
{
  for (char const *bad :
       {"", "{", "{\"n\":2}", "{\"n\":2,\"table\":[[1,0]]}",
        "{\"n\":2,\"table\":[[1,0],[2,0]]}", "{\"n\":2,\"table\":[[1,0],[-1,0]]}",
        "{\"n\":-2,\"table\":[]}", "n=2\n1 0\n1", "n=2\n1 0 1 0 1",
        "size 2", "n=x\n"})
    EXPECT_THROW(parse_table(bad), ParseError) << bad;
}

TEST(Io, ParseTableDoesNotValidate)
{
  auto rows = parse_table("{\"n\":2,\"table\":[[0,0],[1,0]]}");
  EXPECT_EQ(rows, (table_rows{{0, 0}, {1, 0}}));
  EXPECT_THROW(parse_cycle_set("{\"n\":2,\"table\":[[0,0],[1,0]]}"),
               InvalidCycleSet);
}

TEST(Io, BraceRoundTrip)
{
  for (auto const &B : {trivial_cyclic_brace(3), cyclic_p_squared_brace(2),
                        cyclic_p_squared_brace(3)}) {
    auto back = parse_brace(to_json(B).dump());
    EXPECT_EQ(back, B);
  }
}

TEST(Io, BraceRejections)
{
  EXPECT_THROW(parse_brace("{\"n\":2,\"add\":[[0,1],[1,0]]}"), ParseError);
  EXPECT_THROW(parse_brace("{\"n\":2,\"add\":[[0,1],[1,1]],\"circ\":[[0,1],[1,0]]}"),
               InvalidBrace);
  EXPECT_THROW(
      parse_brace("{\"n\":2,\"zero\":1,\"add\":[[0,1],[1,0]],\"circ\":[[0,1],[1,0]]}"),
      InvalidBrace);
}

TEST(Io, CensusRoundTrip)
{
  EnumerationFilter f;
  f.indecomposable = true;
  std::stringstream s;
  auto a = enumerate(4, f);
  auto b = enumerate(3);
  write_census(s, a);
  write_census(s, b);
  auto back = read_censuses(s);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_TRUE(back[0].same_content(a));
  EXPECT_TRUE(back[1].same_content(b));
  EXPECT_EQ(back[0].hash(), a.hash());
}

TEST(Io, CensusCountOnlyHasSummary)
{
  auto text = census_to_string(enumerate(3), false);
  auto j = json::parse(text);
  EXPECT_EQ(j["summary"]["count"], 5);
  EXPECT_EQ(j["summary"]["filter"], "all");
  EXPECT_EQ(j["summary"]["hash"].get<std::string>().size(), 16u);
}

TEST(Io, CensusBytesIndependentOfJobs)
{
  EnumerationOptions one, four;
  four.jobs = 4;
  EXPECT_EQ(census_to_string(enumerate(5, {}, one)),
            census_to_string(enumerate(5, {}, four)));
}

TEST(Io, CensusKeepsBrokenMembers)
{
  std::istringstream s("{\"n\":2,\"table\":[[1,0],[0,1]]}\n"
                       "{\"n\":3,\"table\":[[1,2,0],[1,2,0],[1,2,0]]}\n");
  auto back = read_censuses(s);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].n, 2u);
  EXPECT_EQ(back[0].filter, "unlabelled");
  EXPECT_EQ(back[1].n, 3u);
}

TEST(Io, CensusBadLine)
{
  std::istringstream s("{\"n\":2,\"table\":[[1,0],[1,0]]}\nnot json\n");
  EXPECT_THROW(read_censuses(s), ParseError);
}

TEST(Io, AnalysisJson)
{
  auto j = to_json(analyze(twelve_point_example()));
  EXPECT_EQ(j["size"], 12);
  EXPECT_EQ(j["group_order"], 6);
  EXPECT_EQ(j["decomposable"], true);
  EXPECT_EQ(j["pi_type"], true);
}

TEST(Io, VerdictJson)
{
  auto v = run_checker("fixedp", std::vector<Census>{enumerate(3)});
  auto j = to_json(v);
  EXPECT_EQ(j["checker"], "fixedp");
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(j["examined"].get<std::size_t>() + j["skipped"].get<std::size_t>(), 5u);
  EXPECT_TRUE(j["notes"].is_array());
  bool has_engine = false;
  for (auto const &n : j["notes"])
    has_engine |= n["key"] == "engine";
  EXPECT_TRUE(has_engine);
}
