#include <gtest/gtest.h>

#include "cmono/bimodule_fock.hpp"
#include "cmono/fock_scalar.hpp"
#include "cmono/scenario.hpp"
#include "test_util.hpp"

using namespace cmono;
using namespace cmono::testing;

namespace {

// Value of || A1 A2 A3 (f3 ⊗ f2) || from tests/oracle/remark45_oracle.py.
constexpr double kCounterexampleOracle = 4.578516408182898;

std::vector<Eigen::Index> rows_upto(const ProductBimodule& m, int k) {
  const auto tuples = m.all_tuples();
  const auto off = m.offsets(tuples);
  std::vector<Eigen::Index> rows;
  for (const Tuple& t : tuples) {
    if (!t.empty() && t.front() > k) continue;
    for (Eigen::Index c = 0; c < m.summand(t).n; ++c) rows.push_back(off.at(t) + c);
  }
  return rows;
}

TEST(MonotoneBimodule, ScalarCaseMatchesFockDimension) {
  std::mt19937_64 rng(1);
  const Family f = scalar_family(rng, {1, 2, 3});
  const ProductBimodule m = ProductBimodule::from_family(f, ProductKind::Monotone);
  EXPECT_EQ(m.total_dim(), MonotoneFock({{1, 4}, {2, 4}, {3, 4}}).dim());
}

TEST(MonotoneBimodule, DiagonalCaseMatchesBruteForceRank) {
  const Family f = diagonal_family({1, 2});
  const ProductBimodule m = ProductBimodule::from_family(f, ProductKind::Monotone);
  // E_i° is spanned by the off-diagonal matrix units; the chain E_2° ⊗ E_1°
  // is the quotient of raw pairs by the null space of tr psi(y^* psi(x^* x') y').
  const std::vector<Mat> off{unit(2, 0, 1), unit(2, 1, 0)};
  const CondExpSpec& psi = f.member(1).psi;
  Mat g(4, 4);
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) {
      const Mat& x1 = off[p / 2];
      const Mat& y1 = off[p % 2];
      const Mat& x2 = off[q / 2];
      const Mat& y2 = off[q % 2];
      g(p, q) = psi(Mat(y1.adjoint() * psi(Mat(x1.adjoint() * x2)) * y2)).trace();
    }
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  const Eigen::Index chain = (es.eigenvalues().array() > 1e-9).count();
  EXPECT_EQ(chain, 2);
  EXPECT_EQ(m.total_dim(), 2 + 2 + 2 + chain);
}

TEST(MonotoneBimodule, SingleAlgebraIsItsOwnModule) {
  const Family f = diagonal_family({4});
  const ProductBimodule m = ProductBimodule::from_family(f, ProductKind::Monotone);
  EXPECT_EQ(m.total_dim(), gns_module(f.member(4).algebra, f.member(4).psi).n);
}

TEST(MonotoneBimodule, LettersAreRepresentations) {
  const Family f = diagonal_family({1, 2, 3});
  const ProductBimodule m = ProductBimodule::from_family(f, ProductKind::Monotone);
  std::mt19937_64 rng(2);
  for (int k : f.indices()) {
    const Mat a = random_gaussian(rng, 2, 2), b = random_gaussian(rng, 2, 2);
    EXPECT_LE((m.dense_letter(k, a) * m.dense_letter(k, b) - m.dense_letter(k, a * b)).norm(), 1e-9);
    EXPECT_LE((m.dense_letter(k, a.adjoint()) - m.dense_letter(k, a).adjoint()).norm(), 1e-9);
    EXPECT_LE((m.vacuum_expectation(make_word({{k, a}})) - f.psi(k, a)).norm(), 1e-12);
    // j_k(1) is the identity on E(k) and vanishes elsewhere
    const Mat one = m.dense_letter(k, Mat::Identity(2, 2));
    const auto rows = rows_upto(m, k);
    Mat proj = Mat::Zero(m.total_dim(), m.total_dim());
    for (Eigen::Index r : rows) proj(r, r) = 1.0;
    EXPECT_LE((one - proj).norm(), 1e-12);
  }
}

TEST(PeakIdentity, RestrictionWithCenteredLetter) {
  const Family f = diagonal_family({1, 2, 3});
  const ProductBimodule m = ProductBimodule::from_family(f, ProductKind::Monotone);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    const Letter a{1, random_gaussian(rng, 2, 2)};
    const Letter b = center(f, Letter{3, random_gaussian(rng, 2, 2)}).first;
    EXPECT_LE(remark42_restriction_residual(m, f, a, b), 1e-9);
  }
}

TEST(PeakIdentity, HoldsAtPeaksAndFailsAtValleys) {
  const Family f = diagonal_family({1, 2, 3});
  const ProductBimodule m = ProductBimodule::from_family(f, ProductKind::Monotone);
  std::mt19937_64 rng(4);
  const Word p = random_word_on(rng, {2, 3, 1}, f);
  EXPECT_LE(remark42_identity_residual(m, f, {p.letters[0], p.letters[1], p.letters[2]}), 1e-9);
  const Word v = random_word_on(rng, {2, 1, 3}, f);
  EXPECT_THROW(remark42_identity_residual(m, f, {v.letters[0], v.letters[1], v.letters[2]}), Error);
  Word w = v;
  w.letters[1] = Letter{kAmalgam, f.psi(1, v.letters[1].element)};
  EXPECT_GE(operator_norm(m.dense_word(v) - m.dense_word(w)), 1e-3);
}

TEST(FreeBimodule, RestrictsToMonotoneProduct) {
  const Family f = diagonal_family({1, 2, 3});
  const ProductBimodule mono = ProductBimodule::from_family(f, ProductKind::Monotone);
  const ProductBimodule free = ProductBimodule::from_family(f, ProductKind::Free, 4);
  std::mt19937_64 rng(5);
  for (int k : f.indices()) EXPECT_LE(free_restriction_residual(free, mono, k, random_gaussian(rng, 2, 2)), 1e-12);
  for (int t = 0; t < 30; ++t) {
    const Word w = sample_random_word(rng, 4, f);
    EXPECT_LE(operator_norm(free.vacuum_expectation(w) - eval_monotone(f, w)), 1e-9);
  }
}

TEST(Counterexample, MatchesOracle) {
  const Scenario s = bundled_scenario("remark45.json");
  const Remark45Result r = counterexample_remark45(s.family, *s.remark45);
  EXPECT_LE(r.lhs_norm, 1e-10);
  EXPECT_NEAR(r.rhs_norm, kCounterexampleOracle, 1e-9);
  EXPECT_NEAR(r.rhs_norm, r.predicted_norm, 1e-9);
  EXPECT_NEAR(std::abs(r.f2_inner(0, 0)), 1.0, 1e-12);
}

TEST(Counterexample, DeeperTruncationChangesNothing) {
  const Scenario s = bundled_scenario("remark45.json");
  const Remark45Result a = counterexample_remark45(s.family, *s.remark45, 4);
  const Remark45Result b = counterexample_remark45(s.family, *s.remark45, 5);
  EXPECT_LE(std::abs(a.rhs_norm - b.rhs_norm), 1e-12);
  EXPECT_LE(std::abs(a.lhs_norm - b.lhs_norm), 1e-12);
}

TEST(Counterexample, Preconditions) {
  const Scenario s = bundled_scenario("remark45.json");
  auto letters = *s.remark45;
  letters[1].element += Mat::Identity(2, 2);
  try {
    counterexample_remark45(s.family, letters);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
  }
  letters = *s.remark45;
  letters[2].element.setZero();
  try {
    counterexample_remark45(s.family, letters);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateChoice);
  }
}

TEST(CondExpPsi, IsPositiveAndReproducesMoments) {
  std::mt19937_64 rng(6);
  const Family f = scalar_family(rng, {1, 2, 3});
  const ProductBimodule m = ProductBimodule::from_family(f, ProductKind::Monotone);
  const CondExpPsi psi(m, f, 1);
  for (int t = 0; t < 30; ++t) {
    const Word w = sample_random_word(rng, 5, f);
    const Mat x = m.dense_word(w);
    const Mat y = psi(x);
    EXPECT_LE(std::abs(f.psi(1, y)(0, 0) - eval_monotone(f, w)(0, 0)), 1e-9);
    EXPECT_GE(min_eigenvalue(psi(Mat(x.adjoint() * x))), -1e-9);
  }
}

TEST(CondExpPsi, OutsideImageIsReported) {
  const Family f = diagonal_family({1, 2});
  const ProductBimodule m = ProductBimodule::from_family(f, ProductKind::Monotone);
  const CondExpPsi psi(m, f, 1);
  std::mt19937_64 rng(7);
  // the compressed space has dimension 16, the image of A_1 only 4
  const Mat junk = random_gaussian(rng, m.total_dim(), m.total_dim());
  try {
    psi(junk);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInImage);
  }
}

TEST(InducedRepresentation, ProjectionsAndMinimalIndex) {
  const Family f = diagonal_family({1, 2, 3});
  const InducedRepresentation ind(f, 1);
  for (int i : f.indices()) {
    const Mat p = ind.letter(i, Mat::Identity(2, 2));
    EXPECT_LE((p * p - p).norm(), 1e-10);
    EXPECT_LE((p - p.adjoint()).norm(), 1e-10);
  }
  EXPECT_THROW(InducedRepresentation(f, 2), Error);
}

TEST(Embedding, TrivialNestingIsExact) {
  std::mt19937_64 rng(8);
  const Family f = scalar_family(rng, {1, 2});
  NestedScenario n{f, f, {}, LinearMap::identity(1)};
  for (int i : f.indices()) n.kappa.emplace(i, LinearMap::identity(2));
  EXPECT_TRUE(nested_is_unital(n));
  const EmbeddingResult r = verify_embedding_prop46(n, rng, 10);
  EXPECT_LE(r.max_norm_gap, 1e-12);
  EXPECT_LE(r.moment_residual, 1e-12);
  EXPECT_GE(r.min_excess, -1e-12);
  EXPECT_FALSE(r.padded);
}

TEST(Embedding, BundledNestings) {
  std::mt19937_64 rng(9);
  for (const char* name : {"nested_unital.json", "nested_nonunital.json"}) {
    const Scenario s = bundled_scenario(name);
    const EmbeddingResult r = verify_embedding_prop46(*s.nesting, rng, 10);
    EXPECT_LE(r.padded ? r.padded_gap : r.max_norm_gap, 1e-7) << name;
    EXPECT_GE(r.min_excess, -1e-12) << name;
    EXPECT_LE(r.moment_residual, 1e-9) << name;
  }
}

TEST(CpEmbedding, IdentityMapsGiveIdentity) {
  std::mt19937_64 rng(10);
  const Family f = scalar_family(rng, {1, 2, 3}, 2, true);
  CpScenario cs{f, f, {}};
  for (int i : f.indices()) cs.theta.emplace(i, LinearMap::identity(2));
  const CpEmbedding emb(cs);
  for (int i : f.indices()) {
    const Mat& v = emb.v_factor(i);
    EXPECT_LE((v.adjoint() * v - Mat::Identity(v.cols(), v.cols())).norm(), 1e-10);
  }
  for (int t = 0; t < 20; ++t) {
    const Word w = sample_random_word(rng, 5, f);
    EXPECT_LE((emb.theta(w) - emb.e().dense_word(w)).norm(), 1e-9);
  }
}

TEST(CpEmbedding, RejectsIncompatibleStates) {
  std::mt19937_64 rng(11);
  const Family a = scalar_family(rng, {1, 2}, 2, true);
  const Family d = scalar_family(rng, {1, 2}, 2, true);
  CpScenario cs{a, d, {}};
  for (int i : a.indices()) cs.theta.emplace(i, LinearMap::identity(2));
  try {
    CpEmbedding emb(cs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CompatibilityFail);
  }
}

}  // namespace
