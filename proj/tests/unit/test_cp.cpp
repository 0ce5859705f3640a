#include <gtest/gtest.h>

#include "cmono/cp_product.hpp"
#include "test_util.hpp"

using namespace cmono;
using namespace cmono::testing;

namespace {

MapFamily random_maps(std::mt19937_64& rng, const Family& f, int rank = 2) {
  MapFamily maps{AlgebraSpec::full_matrix(2), LinearMap::from_function(1, 2, [](const Mat& b) {
                   return Mat(b(0, 0) * Mat::Identity(2, 2));
                 }), {}};
  for (int i : f.indices()) maps.theta.emplace(i, random_unital_cp_map(rng, 2, 2, rank));
  return maps;
}

TEST(FreeProductMaps, CenteredLetters) {
  std::mt19937_64 rng(1);
  const Family f = scalar_family(rng, {1, 2});
  const MapFamily maps = random_maps(rng, f);
  const Letter a1 = center(f, Letter{1, random_gaussian(rng, 2, 2)}).first;
  const Letter a2 = center(f, Letter{2, random_gaussian(rng, 2, 2)}).first;
  EXPECT_LE((free_product_maps(f, maps, make_word({a1})) - maps.theta.at(1)(a1.element)).norm(), 1e-12);
  const Mat two = maps.theta.at(1)(a1.element) * maps.theta.at(2)(a2.element);
  EXPECT_LE((free_product_maps(f, maps, make_word({a1, a2})) - two).norm(), 1e-12);
  const cd beta(0.5, 2.0);
  EXPECT_LE((free_product_maps(f, maps, make_word({{2, beta * Mat::Identity(2, 2)}})) -
             beta * Mat::Identity(2, 2)).norm(),
            1e-12);
}

TEST(FreeProductMaps, AgreesWithMonotoneOnValleyWords) {
  std::mt19937_64 rng(2);
  const Family f = scalar_family(rng, {1, 2, 3});
  const MapFamily maps = random_maps(rng, f);
  for (const std::vector<int>& p : {std::vector<int>{3, 2, 1, 2, 3}, {2, 1, 3}, {3, 1, 2}, {3, 2, 1}, {1, 2, 3}}) {
    Word w = random_word_on(rng, p, f);
    for (Letter& l : w.letters) l = center(f, l).first;
    EXPECT_LE((free_product_maps(f, maps, w) - eval_map_product(f, maps, w)).norm(), 1e-9);
  }
}

TEST(Unitalize, DisplayedFormulas) {
  std::mt19937_64 rng(3);
  const Family f = scalar_family(rng, {1, 2});
  const MapFamily maps = random_maps(rng, f);
  const Unitalization u = unitalize(f.member(2), maps.theta.at(2), f.b(), false);
  const Eigen::Index n = u.member.algebra.dim();
  const Mat a = random_gaussian(rng, 2, 2);
  const cd b(0.25, -0.75);
  EXPECT_LE((u.theta(u.lift(a)) - maps.theta.at(2)(a)).norm(), 1e-12);
  EXPECT_LE((u.theta(b * Mat::Identity(n, n)) - b * Mat::Identity(2, 2)).norm(), 1e-12);
  const Mat x = b * Mat::Identity(n, n) + u.lift(a);
  EXPECT_LE((u.theta(x) - (b * Mat::Identity(2, 2) + maps.theta.at(2)(a))).norm(), 1e-12);
  EXPECT_LE((u.e - (Mat::Identity(n, n) - u.lift(Mat::Identity(2, 2)))).norm(), 1e-12);
}

TEST(CfreeMonotone, RestrictionIdentityOnRandomScenarios) {
  for (std::uint64_t seed : {4u, 5u, 6u}) {
    std::mt19937_64 rng(seed);
    const Family f = scalar_family(rng, {1, 2});
    const MapFamily maps = random_maps(rng, f);
    const VerificationReport r = verify_cfree_monot(f, maps, rng, 200, 6, 1e-9);
    EXPECT_TRUE(r.passed()) << r.to_json().dump();
  }
}

TEST(Choi, Identity) {
  const double e = cp_check_choi(AlgebraSpec::full_matrix(2), LinearMap::identity(2));
  EXPECT_NEAR(e, 0.0, 1e-12);
}

TEST(Choi, TransposeIsNotCompletelyPositive) {
  // the Choi matrix of the transpose is the swap operator
  EXPECT_NEAR(cp_check_choi(AlgebraSpec::full_matrix(2), transpose_map(2)), -1.0, 1e-12);
}

TEST(Choi, DepolarizingIsCompletelyPositive) {
  const LinearMap dep = LinearMap::from_function(3, 3, [](const Mat& a) { return Mat(a.trace() / 3.0 * Mat::Identity(3, 3)); });
  EXPECT_GE(cp_check_choi(AlgebraSpec::full_matrix(3), dep), -1e-12);
}

TEST(Choi, NeedsFullMatrixAlgebra) {
  try {
    cp_check_choi(AlgebraSpec::diagonal(2), LinearMap::identity(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFullAlgebra);
  }
}

TEST(RandomCpMap, UnitalAndCompletelyPositive) {
  std::mt19937_64 rng(7);
  for (int rank : {2, 3}) {
    const LinearMap t = random_unital_cp_map(rng, 2, 3, rank);
    EXPECT_LE((t(Mat::Identity(2, 2)) - Mat::Identity(3, 3)).norm(), 1e-12);
    EXPECT_GE(cp_check_choi(AlgebraSpec::full_matrix(2), t), -1e-12);
  }
}

TEST(RandomCpMap, RejectsRankTooSmallForUnitality) {
  std::mt19937_64 rng(7);
  EXPECT_THROW(random_unital_cp_map(rng, 2, 3, 1), Error);
}

TEST(Gram, EmptyWordOnly) {
  std::mt19937_64 rng(8);
  const Family f = scalar_family(rng, {1, 2});
  const MapFamily maps = random_maps(rng, f);
  GramOptions g;
  g.rounds = 3;
  g.max_m = 1;
  const GramResult r = cp_check_gram(f, [&](const Word& w) { return eval_map_product(f, maps, w); }, g);
  EXPECT_NEAR(r.min_eigenvalue, 1.0, 1e-12);
}

TEST(Gram, MonotoneProductStaysPositive) {
  std::mt19937_64 rng(9);
  const Family f = scalar_family(rng, {1, 2, 3});
  const MapFamily maps = random_maps(rng, f);
  GramOptions g;
  g.seed = 9;
  const GramResult r = cp_check_gram(f, [&](const Word& w) { return eval_map_product(f, maps, w); }, g);
  EXPECT_GE(r.min_eigenvalue, -1e-8);
  EXPECT_LE(r.asymmetry, 1e-12);
  EXPECT_EQ(r.per_round.size(), 50u);

  MapFamily bad = maps;
  bad.theta.at(2) = transpose_map(2);
  const GramResult n = cp_check_gram(f, [&](const Word& w) { return eval_map_product(f, bad, w); }, g);
  EXPECT_LE(n.min_eigenvalue, -1e-3);
}

TEST(Gram, RoundsAreReproducible) {
  std::mt19937_64 rng(10);
  const Family f = scalar_family(rng, {1, 2, 3});
  const MapFamily maps = random_maps(rng, f);
  GramOptions g;
  g.rounds = 12;
  g.seed = 77;
  auto theta = [&](const Word& w) { return eval_map_product(f, maps, w); };
  EXPECT_EQ(cp_check_gram(f, theta, g).per_round, cp_check_gram(f, theta, g).per_round);
}

}  // namespace
