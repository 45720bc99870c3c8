#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cycloid/brace.hpp"
#include "cycloid/canonical.hpp"
#include "fixtures.hpp"

using namespace cycloid;
using namespace cycloid::testing;

namespace {

LeftBrace trivial_klein()
{
  return direct_product_brace(trivial_cyclic_brace(2), trivial_cyclic_brace(2));
}

/// Restriction of B to a subset closed under both operations, relabelled by
/// position in S (ascending).
LeftBrace sub_brace(LeftBrace const &B, std::vector<element> S)
{
  std::sort(S.begin(), S.end());
  auto pos = [&](element e) {
    return static_cast<element>(std::lower_bound(S.begin(), S.end(), e) -
                                S.begin());
  };
  return brace_from_operations(
      S.size(), [&](element x, element y) { return pos(B.plus(S[x], S[y])); },
      [&](element x, element y) { return pos(B.times(S[x], S[y])); });
}

std::vector<LeftBrace> fixtures()
{
  return {
      trivial_cyclic_brace(1),
      trivial_cyclic_brace(4),
      trivial_klein(),
      cyclic_p_squared_brace(2),
      cyclic_p_squared_brace(3),
      direct_product_brace(cyclic_p_squared_brace(2), trivial_cyclic_brace(3)),
      direct_product_brace(cyclic_p_squared_brace(3), trivial_cyclic_brace(2)),
      direct_product_brace(trivial_klein(), trivial_cyclic_brace(3)),
  };
}

/// Braces of order ≤ 12 having a transitive cycle base.
std::vector<LeftBrace> transitive_fixtures()
{
  return {
      trivial_cyclic_brace(2), trivial_cyclic_brace(3),
      trivial_cyclic_brace(5), trivial_cyclic_brace(6),
      cyclic_p_squared_brace(2), cyclic_p_squared_brace(3),
      direct_product_brace(cyclic_p_squared_brace(2), trivial_cyclic_brace(3)),
  };
}

} // namespace

TEST(Brace, TrivialBraceOnZ4)
{
  auto B = trivial_cyclic_brace(4);
  EXPECT_EQ(B.zero, 0u);
  for (element x = 0; x < 4; ++x)
    EXPECT_TRUE(lambda_of(B, x).is_identity());
  EXPECT_EQ(socle(B), (std::vector<element>{0, 1, 2, 3}));
  EXPECT_EQ(additive_exponent(B), 4u);
}

TEST(Brace, CyclicPSquaredExample)
{
  auto B = cyclic_p_squared_brace(2);
  // 1∘1 = 1+1+2 = 0 mod 4, so λ_1(1) = -1 + 0 = 3.
  EXPECT_EQ(B.times(1, 1), 0u);
  EXPECT_EQ(lambda_of(B, 1)(1), 3u);
  EXPECT_EQ(socle(B), (std::vector<element>{0, 2}));
  EXPECT_EQ(additive_exponent(B), 4u);
  EXPECT_EQ(multiplicative_order(B, 1), 2u);
  EXPECT_EQ(additive_order(B, 1), 4u);
}

TEST(Brace, SocleHasIndexP)
{
  for (std::uint64_t p : {2u, 3u, 5u}) {
    auto B = cyclic_p_squared_brace(p);
    auto s = socle(B);
    EXPECT_EQ(B.n / s.size(), p);
    // Oracle: λ_x = id iff p·x ≡ 0 mod p².
    for (element x = 0; x < B.n; ++x)
      EXPECT_EQ(std::binary_search(s.begin(), s.end(), x), x % p == 0);
  }
}

TEST(Brace, KleinExponent)
{
  EXPECT_EQ(additive_exponent(trivial_klein()), 2u);
}

TEST(Brace, CorruptedCircRejected)
{
  auto B = cyclic_p_squared_brace(2);
  auto circ = B.circ;
  std::swap(circ[1 * 4 + 1], circ[1 * 4 + 2]);
  auto r = check_brace(4, B.add, circ);
  ASSERT_TRUE(r.has_value());
  EXPECT_TRUE(r->kind == BraceRejection::Kind::not_group ||
              r->kind == BraceRejection::Kind::axiom);
  EXPECT_THROW(validate_brace(4, B.add, circ), InvalidBrace);
}

TEST(Brace, RejectionKinds)
{
  using K = BraceRejection::Kind;
  auto B = trivial_cyclic_brace(3);
  EXPECT_EQ(check_brace(3, B.add, {0, 1})->kind, K::shape);
  auto bad = B.add;
  bad[0] = 7;
  EXPECT_EQ(check_brace(3, bad, B.circ)->kind, K::out_of_range);
  // Non-commutative +: the multiplication table of S3 as addition.
  auto s3 = PermGroup::generate({cyc(3, "(0 1)"), cyc(3, "(0 1 2)")});
  auto const &el = s3.elements();
  std::vector<element> t(36);
  for (element a = 0; a < 6; ++a)
    for (element b = 0; b < 6; ++b)
      t[a * 6 + b] = static_cast<element>(*s3.index_of(el[a] * el[b]));
  EXPECT_EQ(check_brace(6, t, t)->kind, K::not_abelian_group);
  // ∘ a copy of Z/4 relabelled by a map s; valid iff s is additive.
  auto circ_via = [](auto s) {
    std::vector<element> add(16), circ(16);
    for (element x = 0; x < 4; ++x)
      for (element y = 0; y < 4; ++y) {
        add[x * 4 + y] = (x + y) % 4;
        circ[x * 4 + y] = s((s(x) + s(y)) % 4);
      }
    return check_brace(4, add, circ);
  };
  // x ↦ -x is an automorphism, so ∘ = + again
  EXPECT_FALSE(circ_via([](element x) { return (4 - x) % 4; }).has_value());
  // swapping 1 and 2 is not: λ_2 = (2 3) fails additivity
  auto r = circ_via([](element x) { return x == 1 ? 2u : x == 2 ? 1u : x; });
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->kind, K::axiom);
}

TEST(Brace, EquationOneAndLambdaLaws)
{
  for (auto const &B : fixtures()) {
    auto lam = lambda_maps(B);
    for (element x = 0; x < B.n; ++x)
      for (element y = 0; y < B.n; ++y) {
        EXPECT_EQ(B.times(x, y), B.plus(x, lam[x](y)));
        EXPECT_EQ(lam[B.times(x, y)], lam[x] * lam[y]);
        for (element z = 0; z < B.n; ++z)
          EXPECT_EQ(lam[x](B.plus(y, z)), B.plus(lam[x](y), lam[x](z)));
      }
  }
}

TEST(Brace, SocleIsIdeal)
{
  for (auto const &B : fixtures()) {
    auto s = socle(B);
    EXPECT_TRUE(is_ideal(B, s));
    for (auto x : s)
      EXPECT_TRUE(lambda_of(B, x).is_identity());
  }
}

TEST(Brace, IdealExamples)
{
  for (auto const &B : fixtures()) {
    EXPECT_TRUE(is_ideal(B, {B.zero}));
    std::vector<element> all(B.n);
    std::iota(all.begin(), all.end(), element{0});
    EXPECT_TRUE(is_ideal(B, all));
  }
  auto B = trivial_cyclic_brace(4);
  EXPECT_FALSE(is_left_ideal(B, {0, 1}));
  EXPECT_TRUE(is_left_ideal(B, {0, 2}));
}

TEST(Brace, DirectProducts)
{
  auto P = direct_product_brace(trivial_cyclic_brace(2), trivial_cyclic_brace(3));
  EXPECT_TRUE(are_isomorphic(P, trivial_cyclic_brace(6)));

  auto one = trivial_cyclic_brace(1);
  auto B = cyclic_p_squared_brace(3);
  EXPECT_EQ(direct_product_brace(B, one), B);

  auto Q = direct_product_brace(cyclic_p_squared_brace(2), trivial_cyclic_brace(3));
  EXPECT_EQ(Q.n, 12u);
  std::vector<element> expect;
  for (element a : {0u, 2u})
    for (element b = 0; b < 3; ++b)
      expect.push_back(a * 3 + b);
  EXPECT_EQ(socle(Q), expect);

  // each factor is an ideal
  std::vector<element> first, second;
  for (element a = 0; a < 4; ++a)
    first.push_back(a * 3);
  for (element b = 0; b < 3; ++b)
    second.push_back(b);
  EXPECT_TRUE(is_ideal(Q, first));
  EXPECT_TRUE(is_ideal(Q, second));
}

TEST(Brace, CoprimeFactorsAreIdeals)
{
  // When (B,∘) is nilpotent its Sylow subgroups are the sets of elements of
  // prime-power order; each should be an ideal and B their product.
  for (auto const &B : fixtures()) {
    if (B.n > 24 || B.n == 1)
      continue;
    std::map<std::uint64_t, std::vector<element>> sylow;
    for (auto p : prime_support(B.n))
      for (element x = 0; x < B.n; ++x) {
        auto o = multiplicative_order(B, x);
        if (o == 1 || prime_power_base(o) == p)
          sylow[p].push_back(x);
      }
    std::size_t product = 1;
    for (auto const &[p, S] : sylow)
      product *= S.size();
    if (product != B.n)
      continue; // not nilpotent
    std::optional<LeftBrace> rebuilt;
    for (auto const &[p, S] : sylow) {
      EXPECT_TRUE(is_ideal(B, S)) << "order " << B.n << " p " << p;
      auto part = sub_brace(B, S);
      rebuilt = rebuilt ? direct_product_brace(*rebuilt, part) : part;
    }
    EXPECT_TRUE(are_isomorphic(B, *rebuilt)) << "order " << B.n;
  }
}

TEST(Brace, CycleBases)
{
  auto z3 = cycle_bases(trivial_cyclic_brace(3));
  std::vector<std::vector<element>> transitive;
  for (auto const &c : z3)
    if (c.transitive)
      transitive.push_back(c.elements);
  EXPECT_EQ(transitive, (std::vector<std::vector<element>>{{1}, {2}}));

  for (auto const &c : cycle_bases(trivial_klein()))
    EXPECT_FALSE(c.transitive);

  bool found = false;
  for (auto const &c : cycle_bases(cyclic_p_squared_brace(2)))
    found |= c.transitive && c.elements == std::vector<element>{1, 3};
  EXPECT_TRUE(found);
}

TEST(Brace, CycleBaseInvariants)
{
  for (auto const &B : fixtures()) {
    auto orbits = lambda_orbits(B);
    for (auto const &c : cycle_bases(B)) {
      EXPECT_TRUE(generates_additively(B, c.elements));
      std::size_t covered = 0, used = 0;
      for (auto const &o : orbits) {
        auto hits = std::count_if(o.begin(), o.end(), [&](element e) {
          return std::binary_search(c.elements.begin(), c.elements.end(), e);
        });
        EXPECT_TRUE(hits == 0 || hits == static_cast<long>(o.size()));
        covered += hits;
        used += hits > 0;
      }
      EXPECT_EQ(covered, c.elements.size());
      EXPECT_EQ(c.transitive, used == 1);
    }
  }
}

TEST(Coset, TrivialZ3)
{
  auto B = trivial_cyclic_brace(3);
  auto X = coset_construction(B, {{1}, true}, 1, {0});
  // σ_x(y) = -1 + y
  for (point x = 0; x < 3; ++x)
    for (point y = 0; y < 3; ++y)
      EXPECT_EQ(X(x, y), (y + 2) % 3);
  EXPECT_TRUE(is_single_cycle_of_length(squaring_map(X), 3));
  EXPECT_TRUE(is_isomorphic(X, cyclic(3)));
}

TEST(Coset, TrivialZ2)
{
  auto X = coset_construction(trivial_cyclic_brace(2), {{1}, true}, 1, {0});
  EXPECT_EQ(X, two_cycle());
}

TEST(Coset, Rejections)
{
  using Kind = InvalidCosetData::Kind;
  auto B = trivial_cyclic_brace(4);
  auto expect_kind = [](auto f, Kind k) {
    try {
      f();
      ADD_FAILURE() << "accepted";
    } catch (InvalidCosetData const &e) {
      EXPECT_EQ(e.kind, k) << e.what();
    }
  };
  // λ is trivial so the whole stabilizer is B, whose core is B.
  expect_kind([&] { coset_construction(B, {{1}, true}, 1, {0, 1, 2, 3}); },
              Kind::not_core_free);
  expect_kind([&] { coset_construction(B, {{1}, true}, 1, {0, 1}); },
              Kind::not_subgroup);
  expect_kind([&] { coset_construction(B, {{1}, true}, 2, {0}); },
              Kind::not_in_base);
  expect_kind([&] { coset_construction(B, {{2}, true}, 2, {0}); },
              Kind::not_transitive_base);
  // In the Z/4 example λ_1 moves 1, and {0,1} is a subgroup of (B,∘).
  auto E = cyclic_p_squared_brace(2);
  expect_kind([&] { coset_construction(E, {{1, 3}, true}, 1, {0, 1}); },
              Kind::not_in_stabilizer);
}

TEST(Coset, IndecomposableAndRecoversBrace)
{
  for (auto const &B : transitive_fixtures()) {
    for (auto const &Y : cycle_bases(B)) {
      if (!Y.transitive)
        continue;
      auto X = coset_construction(B, Y, Y.elements.front(), {B.zero});
      EXPECT_TRUE(is_indecomposable(X));
      EXPECT_EQ(X.size(), B.n);
      auto G = brace_of_cycle_set(X);
      EXPECT_TRUE(are_isomorphic(G.brace, B)) << "order " << B.n;
    }
  }
}

TEST(BraceOfCycleSet, Examples)
{
  auto b2 = brace_of_cycle_set(two_cycle());
  EXPECT_TRUE(are_isomorphic(b2.brace, trivial_cyclic_brace(2)));

  auto b3 = brace_of_cycle_set(cyclic(3));
  EXPECT_TRUE(are_isomorphic(b3.brace, trivial_cyclic_brace(3)));
  EXPECT_EQ(additive_exponent(b3.brace), 3u);
  EXPECT_EQ(dehornoy_class(cyclic(3)), 3u);
}

TEST(BraceOfCycleSet, GeneratorsAndLambda)
{
  for (auto const &X :
       {two_cycle(), cyclic(4), twelve_point_example(),
        direct_product(two_cycle(), cyclic(3))}) {
    auto pb = brace_of_cycle_set(X);
    auto const &B = pb.brace;
    EXPECT_EQ(pb.elements[B.zero], Permutation::identity(X.size()));
    for (point x = 0; x < X.size(); ++x) {
      EXPECT_EQ(pb.elements[pb.generator[x]], X.sigma(x).inverse());
      for (point y = 0; y < X.size(); ++y)
        // the defining rule on generators
        EXPECT_EQ(B.plus(pb.generator[x], pb.generator[y]),
                  B.times(pb.generator[x], pb.generator[X(x, y)]));
    }
  }
}

TEST(BraceOfCycleSet, CablingIsMultiple)
{
  for (auto const &X : {cyclic(4), twelve_point_example(),
                        direct_product(two_cycle(), cyclic(3))}) {
    auto pb = brace_of_cycle_set(X);
    for (std::uint64_t k = 1; k <= 6; ++k) {
      std::set<Permutation> multiple;
      for (auto e : multiple_set(pb.brace, k))
        multiple.insert(pb.elements[e]);
      auto const &el = perm_group(cabling(X, k)).elements();
      std::set<Permutation> cabled(el.begin(), el.end());
      EXPECT_EQ(cabled, multiple) << "k=" << k;
    }
  }
}

TEST(BraceIsomorphism, RelabelledCopies)
{
  std::mt19937 rng(3);
  for (auto const &B : fixtures()) {
    std::vector<element> pi(B.n);
    std::iota(pi.begin(), pi.end(), element{0});
    std::shuffle(pi.begin(), pi.end(), rng);
    std::vector<element> back(B.n);
    for (element i = 0; i < B.n; ++i)
      back[pi[i]] = i;
    auto C = brace_from_operations(
        B.n, [&](element x, element y) { return pi[B.plus(back[x], back[y])]; },
        [&](element x, element y) { return pi[B.times(back[x], back[y])]; });
    auto f = find_brace_isomorphism(B, C);
    ASSERT_TRUE(f.has_value());
    for (element x = 0; x < B.n; ++x)
      for (element y = 0; y < B.n; ++y) {
        EXPECT_EQ((*f)[B.plus(x, y)], C.plus((*f)[x], (*f)[y]));
        EXPECT_EQ((*f)[B.times(x, y)], C.times((*f)[x], (*f)[y]));
      }
  }
  EXPECT_FALSE(are_isomorphic(trivial_cyclic_brace(4), cyclic_p_squared_brace(2)));
  EXPECT_FALSE(are_isomorphic(trivial_cyclic_brace(4), trivial_klein()));
}
