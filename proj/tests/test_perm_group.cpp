#include <gtest/gtest.h>

#include <set>

#include "cycloid/perm_group.hpp"
#include "fixtures.hpp"

using namespace cycloid;
using cycloid::testing::cyc;
using cycloid::testing::for_each_partition;
using cycloid::testing::nilpotent_by_sylow;

namespace {

std::uint64_t factorial(std::size_t n)
{
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i)
    f *= i;
  return f;
}

/// Brute-force block systems: every equal-size invariant partition.
std::vector<BlockSystem> brute_block_systems(PermGroup const &g)
{
  std::vector<BlockSystem> out;
  for_each_partition(g.degree(), [&](auto const &parts) {
    if (parts.size() <= 1 || parts.size() == g.degree())
      return;
    for (auto const &p : parts)
      if (p.size() != parts[0].size())
        return;
    BlockSystem sys{g.degree(), parts};
    auto idx = sys.block_index();
    for (auto const &s : g.generators())
      for (auto const &blk : parts)
        for (point i : blk)
          if (idx[s(i)] != idx[s(blk.front())])
            return;
    std::sort(sys.blocks.begin(), sys.blocks.end());
    out.push_back(sys);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BlockSystem> brute_minimal(std::vector<BlockSystem> const &all)
{
  std::vector<BlockSystem> out;
  for (auto const &a : all) {
    bool minimal = true;
    for (auto const &b : all)
      if (b != a && detail::refines(b, a))
        minimal = false;
    if (minimal)
      out.push_back(a);
  }
  return out;
}

} // namespace

TEST(PermGroup, GenerateSymmetricGroup)
{
  auto g = PermGroup::generate({cyc(3, "(0 1)"), cyc(3, "(0 1 2)")});
  EXPECT_EQ(g.order(), 6u);
}

TEST(PermGroup, TrivialGroup)
{
  auto g = PermGroup::generate({Permutation::identity(4)});
  EXPECT_EQ(g.order(), 1u);
  EXPECT_TRUE(g.is_trivial());
}

TEST(PermGroup, CyclicOfOrderSix)
{
  auto g = PermGroup::generate({cyc(5, "(0 1)(2 3 4)")});
  EXPECT_EQ(g.order(), 6u);
  EXPECT_TRUE(is_nilpotent(g));
}

TEST(PermGroup, Errors)
{
  EXPECT_THROW(PermGroup::generate({}), PreconditionFailed);
  EXPECT_THROW(PermGroup::generate({cyc(2, "(0 1)"), cyc(3, "(0 1)")}),
               DegreeMismatch);
  auto big = PermGroup::generate({cyc(6, "(0 1)"), cyc(6, "(0 1 2 3 4 5)")},
                                 100);
  EXPECT_THROW((void)big.order(), CapExceeded);
}

TEST(PermGroup, DeterministicElementOrder)
{
  auto gens = std::vector{cyc(4, "(0 1)"), cyc(4, "(0 1 2 3)")};
  auto a = PermGroup::generate(gens).elements();
  auto b = PermGroup::generate(gens).elements();
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.front().is_identity());
}

TEST(PermGroup, ClosureAndLagrange)
{
  std::vector<std::vector<Permutation>> gen_sets = {
      {cyc(4, "(0 1)"), cyc(4, "(0 1 2 3)")},
      {cyc(4, "(0 1 2 3)"), cyc(4, "(0 2)")},
      {cyc(5, "(0 1 2)"), cyc(5, "(2 3 4)")},
      {cyc(6, "(0 1)(2 3)"), cyc(6, "(4 5)")},
  };
  for (auto const &gens : gen_sets) {
    auto g = PermGroup::generate(gens);
    auto const &el = g.elements();
    EXPECT_EQ(factorial(g.degree()) % el.size(), 0u);
    for (auto const &a : el) {
      EXPECT_TRUE(g.contains(a.inverse()));
      for (auto const &b : el)
        EXPECT_TRUE(g.contains(a * b));
    }
  }
}

TEST(PermGroup, Orbits)
{
  using orbit_list = std::vector<std::vector<point>>;
  EXPECT_EQ(PermGroup::generate({cyc(3, "(0 1)")}).orbits(),
            (orbit_list{{0, 1}, {2}}));
  auto s3 = PermGroup::generate({cyc(3, "(0 1)"), cyc(3, "(0 1 2)")});
  EXPECT_EQ(s3.orbits(), (orbit_list{{0, 1, 2}}));
  EXPECT_TRUE(s3.is_transitive());
  EXPECT_EQ(PermGroup::trivial(2).orbits(), (orbit_list{{0}, {1}}));
}

TEST(PermGroup, SingleGeneratorOrbitsAreCycles)
{
  auto p = cyc(8, "(0 5 3)(1 7)(2 4 6)");
  auto orbits = PermGroup::generate({p}).orbits();
  auto cs = cycles(p, true);
  for (auto &c : cs)
    std::sort(c.begin(), c.end());
  std::sort(cs.begin(), cs.end());
  EXPECT_EQ(orbits, cs);
}

TEST(BlockSystems, CyclicFour)
{
  auto g = PermGroup::generate({cyc(4, "(0 1 2 3)")});
  auto sys = minimal_block_systems(g);
  ASSERT_EQ(sys.size(), 1u);
  EXPECT_EQ(sys[0].blocks, (std::vector<std::vector<point>>{{0, 2}, {1, 3}}));
  EXPECT_EQ(sys, brute_minimal(brute_block_systems(g)));
}

TEST(BlockSystems, SymmetricThreeIsPrimitive)
{
  auto g = PermGroup::generate({cyc(3, "(0 1)"), cyc(3, "(0 1 2)")});
  EXPECT_TRUE(minimal_block_systems(g).empty());
}

TEST(BlockSystems, KleinFour)
{
  auto g = PermGroup::generate({cyc(4, "(0 1)(2 3)"), cyc(4, "(0 2)(1 3)")});
  auto sys = minimal_block_systems(g);
  EXPECT_EQ(sys.size(), 3u);
  for (auto const &s : sys)
    EXPECT_EQ(s.block_size(), 2u);
  EXPECT_EQ(sys, brute_minimal(brute_block_systems(g)));
}

TEST(BlockSystems, AgreeWithBruteForce)
{
  std::vector<std::vector<Permutation>> gen_sets = {
      {cyc(6, "(0 1 2 3 4 5)")},
      {cyc(6, "(0 1 2 3 4 5)"), cyc(6, "(1 5)(2 4)")},
      {cyc(8, "(0 1 2 3 4 5 6 7)")},
      {cyc(8, "(0 1 2 3)(4 5 6 7)"), cyc(8, "(0 4)(1 5)(2 6)(3 7)")},
      {cyc(6, "(0 1)(2 3)(4 5)"), cyc(6, "(0 2 4)(1 3 5)")},
      {cyc(4, "(0 1)"), cyc(4, "(0 1 2 3)")},
  };
  for (auto const &gens : gen_sets) {
    auto g = PermGroup::generate(gens);
    auto all = brute_block_systems(g);
    EXPECT_EQ(block_systems(g), all);
    EXPECT_EQ(minimal_block_systems(g), brute_minimal(all));
    for (auto const &s : minimal_block_systems(g)) {
      // every generator permutes the blocks
      for (auto const &gen : gens)
        EXPECT_NO_THROW(block_action(gen, s));
    }
  }
}

TEST(BlockSystems, RequiresTransitive)
{
  EXPECT_THROW(minimal_block_systems(PermGroup::generate({cyc(3, "(0 1)")})),
               PreconditionFailed);
}

TEST(Nilpotency, Examples)
{
  auto s3 = PermGroup::generate({cyc(3, "(0 1)"), cyc(3, "(0 1 2)")});
  EXPECT_FALSE(is_nilpotent(s3));
  EXPECT_TRUE(is_nilpotent(PermGroup::trivial(3)));
  auto series = lower_central_series(PermGroup::generate({cyc(5, "(0 1)(2 3 4)")}));
  EXPECT_TRUE(series.nilpotent);
  EXPECT_EQ(series.terms.back().order(), 1u);
}

TEST(Nilpotency, AgreesWithSylowOracle)
{
  std::vector<std::vector<Permutation>> gen_sets = {
      {cyc(3, "(0 1)"), cyc(3, "(0 1 2)")},                     // S3
      {cyc(4, "(0 1)"), cyc(4, "(0 1 2 3)")},                   // S4
      {cyc(4, "(0 1 2 3)"), cyc(4, "(0 2)")},                   // D4
      {cyc(4, "(0 1 2)"), cyc(4, "(1 2 3)")},                   // A4
      {cyc(6, "(0 1 2 3 4 5)"), cyc(6, "(1 5)(2 4)")},          // D6
      {cyc(5, "(0 1)"), cyc(5, "(2 3 4)")},                     // C6
      {cyc(5, "(0 1)(2 3)"), cyc(5, "(0 2)(1 3)")},             // V4
      {cyc(5, "(0 1)"), cyc(5, "(2 3)"), cyc(5, "(2 3 4)")},    // C2 x S3
      {cyc(8, "(0 1 2 3)(4 5 6 7)"), cyc(8, "(0 4 2 6)(1 7 3 5)")}, // Q8
      {cyc(7, "(0 1 2)"), cyc(7, "(3 4 5 6)")},                 // C12
      {cyc(6, "(0 1 2)"), cyc(6, "(3 4)"), cyc(6, "(0 1)")},   // S3 x C2
  };
  for (auto const &gens : gen_sets) {
    auto g = PermGroup::generate(gens);
    ASSERT_LE(g.order(), 24u);
    EXPECT_EQ(is_nilpotent(g), nilpotent_by_sylow(g.elements()))
        << "order " << g.order();
  }
}
