#include <gtest/gtest.h>

#include "cmono/word.hpp"
#include "test_util.hpp"

using namespace cmono;
using namespace cmono::testing;

namespace {

TEST(Reduce, MergesSameIndexNeighbours) {
  std::mt19937_64 rng(1);
  const Family f = scalar_family(rng, {1, 2});
  const Mat a = random_gaussian(rng, 2, 2), b = random_gaussian(rng, 2, 2), c = random_gaussian(rng, 2, 2);
  const Word w = reduce(f, {{1, a}, {1, b}, {2, c}});
  ASSERT_EQ(w.length(), 2u);
  EXPECT_EQ(w.letters[0].index, 1);
  EXPECT_LE((w.letters[0].element - a * b).norm(), 1e-14);
  EXPECT_LE((w.letters[1].element - c).norm(), 1e-14);
}

TEST(Reduce, EmptyWordHasUnitCoefficient) {
  std::mt19937_64 rng(1);
  const Family f = scalar_family(rng, {1, 2});
  const Word w = reduce(f, std::vector<Letter>{});
  EXPECT_TRUE(w.empty());
  EXPECT_EQ(w.coeff, cd(1.0, 0.0));
}

TEST(Reduce, AbsorbsScalarLetterAtPeak) {
  std::mt19937_64 rng(2);
  const Family f = scalar_family(rng, {1, 2});
  const Mat a = random_gaussian(rng, 2, 2);
  const cd beta(0.3, -1.2);
  const Word w = reduce(f, {{1, a}, {2, beta * Mat::Identity(2, 2)}});
  ASSERT_EQ(w.length(), 1u);
  EXPECT_EQ(w.letters[0].index, 1);
  EXPECT_LE((w.coeff * w.letters[0].element - beta * a).norm(), 1e-13);
}

TEST(Center, AlreadyCentered) {
  const Family f = diagonal_family({1});
  const Mat a = unit(2, 0, 1);
  const auto [c, mean] = center(f, Letter{1, a});
  EXPECT_LE((c.element - a).norm(), 1e-15);
  EXPECT_LE(mean.norm(), 1e-15);
}

TEST(Center, IdentityHasUnitMean) {
  const Family f = diagonal_family({1});
  const auto [c, mean] = center(f, Letter{1, Mat::Identity(2, 2)});
  EXPECT_LE(c.element.norm(), 1e-15);
  EXPECT_LE((mean - Mat::Identity(2, 2)).norm(), 1e-15);
}

TEST(Center, TraceOfMatrixUnit) {
  const AlgebraSpec m2 = AlgebraSpec::full_matrix(2);
  const Family f(AlgebraSpec::scalars(1),
                 {Member{1, m2, CondExpSpec::from_state(m2, StateSpec(Mat::Identity(2, 2) / 2.0)), std::nullopt}});
  const auto [c, mean] = center(f, Letter{1, unit(2, 0, 0)});
  EXPECT_NEAR(std::abs(mean(0, 0) - 0.5), 0.0, 1e-15);
  EXPECT_LE((c.element - (unit(2, 0, 0) - Mat::Identity(2, 2) / 2.0)).norm(), 1e-15);
}

TEST(Adjoint, ReversesAndConjugates) {
  std::mt19937_64 rng(3);
  const Family f = scalar_family(rng, {1, 2});
  const Mat a = random_gaussian(rng, 2, 2), b = random_gaussian(rng, 2, 2);
  const Word w = adjoint(f, make_word({{1, a}, {2, b}}, cd(0.0, 2.0)));
  ASSERT_EQ(w.length(), 2u);
  EXPECT_EQ(w.letters[0].index, 2);
  EXPECT_EQ(w.letters[1].index, 1);
  EXPECT_LE((w.letters[0].element - b.adjoint()).norm(), 1e-15);
  EXPECT_LE((w.letters[1].element - a.adjoint()).norm(), 1e-15);
  EXPECT_EQ(w.coeff, cd(0.0, -2.0));
}

class WordProperties : public ::testing::TestWithParam<int> {};

TEST_P(WordProperties, InvolutionUnitIdempotence) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()));
  const Family f = scalar_family(rng, {1, 2, 3});
  for (int t = 0; t < 50; ++t) {
    const Word w = sample_random_word(rng, 6, f);
    const Word aa = adjoint(f, adjoint(f, w));
    EXPECT_EQ(word_key(aa), word_key(w));
    EXPECT_LE(word_distance(aa, w), 1e-12);
    const Word wu = multiply(f, w, Word{});
    EXPECT_EQ(word_key(wu), word_key(w));
    EXPECT_LE(word_distance(wu, w), 1e-12);
    const Word r = reduce(f, w);
    const Word rr = reduce(f, r);
    EXPECT_EQ(word_key(rr), word_key(r));
    EXPECT_LE(word_distance(rr, r), 1e-12);
  }
}

TEST_P(WordProperties, MultiplyIsAssociative) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(100 + GetParam()));
  const Family f = diagonal_family({1, 2, 3});
  for (int t = 0; t < 50; ++t) {
    const Word x = sample_random_word(rng, 4, f);
    const Word y = sample_random_word(rng, 4, f);
    const Word z = sample_random_word(rng, 4, f);
    const Word l = multiply(f, multiply(f, x, y), z);
    const Word r = multiply(f, x, multiply(f, y, z));
    ASSERT_EQ(l.letters.size(), r.letters.size());
    for (std::size_t k = 0; k < l.letters.size(); ++k) EXPECT_EQ(l.letters[k].index, r.letters[k].index);
    EXPECT_LE(word_distance(l, r), 1e-12);
  }
}

TEST_P(WordProperties, CenterReassembles) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(200 + GetParam()));
  const Family f = diagonal_family({1, 2});
  for (int t = 0; t < 50; ++t) {
    const Letter l{1 + t % 2, f.member(1).algebra.random_element(rng)};
    const auto [c, mean] = center(f, l);
    EXPECT_LE((c.element + f.embed(l.index, mean) - l.element).norm(), 1e-12);
    EXPECT_LE(f.psi(l.index, c.element).norm(), 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, WordProperties, ::testing::Values(1, 2, 3, 4));

TEST(Patterns, CountsAlternatingSequences) {
  // 3 + 3*2 + 3*2*2 + ... up to length 5
  EXPECT_EQ(alternating_patterns({1, 2, 3}, 5).size(), 3u + 6u + 12u + 24u + 48u);
  for (const auto& p : alternating_patterns({1, 2, 3}, 4))
    for (std::size_t k = 1; k < p.size(); ++k) EXPECT_NE(p[k], p[k - 1]);
}

TEST(Family, RejectsMixedB) {
  const AlgebraSpec m2 = AlgebraSpec::full_matrix(2);
  std::vector<Member> members{Member{1, m2, CondExpSpec::diagonal_compression(m2), std::nullopt}};
  try {
    Family f(AlgebraSpec::scalars(1), members);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MixedB);
  }
  EXPECT_THROW(Family(AlgebraSpec::diagonal(2), {}), Error);
}

}  // namespace
