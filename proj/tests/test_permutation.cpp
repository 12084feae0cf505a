#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "sstcuts/group.hpp"
#include "sstcuts/permutation.hpp"

using namespace sstcuts;

namespace {

Permutation cyc(std::size_t n, std::string_view text) { return parse_cycles(text, n); }

GeneratorSet sym3() { return GeneratorSet(3, {cyc(3, "(1,2)"), cyc(3, "(1,2,3)")}); }

Permutation random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>(i);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

// Random generator sets mixing involutions and short cycles so that both
// small and full symmetric groups show up.
GeneratorSet random_group(std::mt19937_64& rng, std::size_t n) {
  GeneratorSet g(n);
  std::size_t k = rng() % 3;
  for (std::size_t i = 0; i < k; ++i) {
    if (rng() % 2) {
      g.generators.push_back(random_perm(rng, n));
    } else {
      Point a = static_cast<Point>(rng() % n), b = static_cast<Point>(rng() % n);
      if (a != b) g.generators.push_back(Permutation::from_cycles(n, {{a, b}}));
    }
  }
  return g;
}

std::set<Permutation> as_set(const std::vector<Permutation>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation(std::vector<Point>{0, 0, 1}), InputError);
  EXPECT_THROW(Permutation(std::vector<Point>{0, 3, 1}), InputError);
}

TEST(Permutation, ApplyToVectorFollowsCoordinateAction) {
  std::vector<int> x{10, 20, 30};
  EXPECT_EQ(apply_to_vector(cyc(3, "(1,2,3)"), x), (std::vector<int>{30, 10, 20}));
  EXPECT_EQ(apply_to_vector(Permutation::identity(3), std::vector<int>{3, 1, 2}),
            (std::vector<int>{3, 1, 2}));
  EXPECT_THROW(apply_to_vector(cyc(4, "(1,2)"), x), InputError);
}

TEST(Permutation, ApplyInverseRoundTrip) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng() % 9;
    auto p = random_perm(rng, n);
    std::vector<double> x(n);
    for (auto& v : x) v = static_cast<double>(rng() % 100) / 7.0;
    EXPECT_EQ(apply_to_vector(p, apply_to_vector(p.inverse(), x)), x);
    EXPECT_TRUE(compose(p, p.inverse()).is_identity());
    // Applying q then p equals applying p o q.
    auto q = random_perm(rng, n);
    EXPECT_EQ(apply_to_vector(p, apply_to_vector(q, x)), apply_to_vector(compose(p, q), x));
  }
}

TEST(Permutation, CycleTextRoundTrip) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng() % 12;
    auto p = random_perm(rng, n);
    EXPECT_EQ(parse_cycles(format_cycles(p), n), p);
  }
  EXPECT_EQ(format_cycles(Permutation::identity(4)), "()");
  EXPECT_TRUE(parse_cycles("()", 4).is_identity());
  EXPECT_EQ(format_cycles(cyc(6, "(1 2 3) (5,6)")), "(1,2,3)(5,6)");
}

TEST(Permutation, ParserErrors) {
  EXPECT_THROW(parse_cycles("(1,7)", 6), InputError);
  EXPECT_THROW(parse_cycles("(0,1)", 6), InputError);
  EXPECT_THROW(parse_cycles("(1,2)(2,3)", 6), InputError);
  EXPECT_THROW(parse_cycles("(1,2", 6), InputError);
  EXPECT_THROW(parse_cycles("1,2", 6), InputError);
  try {
    parse_generator_file("# header\n(1,2)\n\n(1,9)\n", 4);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
}

TEST(Permutation, GeneratorFileRoundTrip) {
  GeneratorSet g(6, {cyc(6, "(1,2,3)(5,6)"), cyc(6, "(2,4)")});
  auto back = parse_generator_file(format_generator_file(g), 6);
  EXPECT_EQ(back.generators, g.generators);
  EXPECT_TRUE(parse_generator_file("", 3).generators.empty());
}

TEST(Group, OrbitExamples) {
  GeneratorSet g(4, {cyc(4, "(1,2,3)")});
  EXPECT_EQ(orbit(g, 0).members, (std::vector<Point>{0, 1, 2}));
  EXPECT_EQ(orbit(GeneratorSet(4), 1).members, (std::vector<Point>{1}));
  EXPECT_EQ(orbit(sym3(), 2).members, (std::vector<Point>{0, 1, 2}));
  EXPECT_THROW(orbit(g, 4), InputError);
}

TEST(Group, S3OrbitMatchesImagesOfEnumeratedElements) {
  std::set<Point> images;
  for (const auto& p : enumerate_elements(sym3(), 100)) images.insert(p(2));
  EXPECT_EQ(std::vector<Point>(images.begin(), images.end()), orbit(sym3(), 2).members);
}

TEST(Group, EnumerationCounts) {
  EXPECT_EQ(enumerate_elements(GeneratorSet(3), 10).size(), 1u);
  EXPECT_EQ(enumerate_elements(GeneratorSet(3, {cyc(3, "(1,2)")}), 10).size(), 2u);
  EXPECT_EQ(enumerate_elements(sym3(), 10).size(), 6u);
  EXPECT_THROW(enumerate_elements(sym3(), 5), GroupTooLarge);
  auto elems = enumerate_elements(sym3(), 10);
  EXPECT_TRUE(std::is_sorted(elems.begin(), elems.end()));
}

TEST(Group, StabilizerExamples) {
  auto st = pointwise_stabilizer(sym3(), {0});
  EXPECT_EQ(as_set(enumerate_elements(st, 10)),
            (std::set<Permutation>{Permutation::identity(3), cyc(3, "(2,3)")}));
  EXPECT_EQ(as_set(enumerate_elements(pointwise_stabilizer(sym3(), std::span<const Point>{}), 10)),
            as_set(enumerate_elements(sym3(), 10)));
  GeneratorSet dbl(4, {cyc(4, "(1,2)(3,4)")});
  EXPECT_TRUE(pointwise_stabilizer(dbl, {0}).is_trivial());
}

TEST(Group, StabilizerMatchesFilteredEnumeration) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + rng() % 7;
    GeneratorSet g = random_group(rng, n);
    auto all = enumerate_elements(g, 5040);
    std::vector<Point> fixed;
    for (Point i = 0; i < n; ++i) {
      if (rng() % 3 == 0) fixed.push_back(i);
    }
    std::set<Permutation> expect;
    for (const auto& p : all) {
      if (std::all_of(fixed.begin(), fixed.end(), [&](Point i) { return p(i) == i; })) expect.insert(p);
    }
    auto st = pointwise_stabilizer(g, fixed);
    EXPECT_EQ(as_set(enumerate_elements(st, 5040)), expect);

    StabilizerChain chain(g);
    EXPECT_EQ(chain.order(), all.size());
    for (const auto& p : all) EXPECT_TRUE(chain.contains(p));
    // Lagrange on a random point.
    Point i = static_cast<Point>(rng() % n);
    EXPECT_EQ(orbit(g, i).size() * enumerate_elements(pointwise_stabilizer(g, {i}), 5040).size(),
              all.size());
  }
}

TEST(Group, ChainRejectsNonMembers) {
  GeneratorSet g(5, {cyc(5, "(1,2,3)")});
  StabilizerChain chain(g);
  EXPECT_FALSE(chain.contains(cyc(5, "(1,2)")));
  EXPECT_TRUE(chain.contains(cyc(5, "(1,3,2)")));
}

TEST(Group, LargeSymmetricGroupOrder) {
  const std::size_t n = 12;
  std::vector<Point> shift(n);
  for (std::size_t i = 0; i < n; ++i) shift[i] = static_cast<Point>((i + 1) % n);
  GeneratorSet g(n, {Permutation(shift), Permutation::from_cycles(n, {{0, 1}})});
  EXPECT_EQ(group_order(g), 479001600u);
  EXPECT_EQ(group_order(pointwise_stabilizer(g, {0, 1, 2})), 362880u);
}

TEST(Group, OrbitsPartitionPoints) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + rng() % 10;
    auto g = random_group(rng, n);
    std::vector<int> count(n, 0);
    for (const auto& o : orbits(g)) {
      for (Point p : o.members) {
        ++count[p];
        EXPECT_TRUE(orbit(g, p).contains(o.representative));
      }
    }
    EXPECT_TRUE(std::all_of(count.begin(), count.end(), [](int c) { return c == 1; }));
  }
}

TEST(Group, ElementMapping) {
  auto g = sym3();
  auto p = element_mapping(g, 2, 0);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ((*p)(2), 0u);
  EXPECT_FALSE(element_mapping(GeneratorSet(3, {cyc(3, "(1,2)")}), 0, 2).has_value());
}
