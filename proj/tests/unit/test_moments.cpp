#include <gtest/gtest.h>

#include "cmono/fock_scalar.hpp"
#include "cmono/moments.hpp"
#include "cmono/product_bimodule.hpp"
#include "test_util.hpp"

using namespace cmono;
using namespace cmono::testing;

namespace {

cd phi_of(const Family& f, int i, const Mat& a) { return (*f.member(i).phi)(a); }
cd psi_of(const Family& f, int i, const Mat& a) { return f.psi(i, a)(0, 0); }

MapFamily phi_as_maps(const Family& f) {
  MapFamily m{AlgebraSpec::scalars(1), LinearMap::identity(1), {}};
  for (int i : f.indices()) {
    const StateSpec phi = *f.member(i).phi;
    const Eigen::Index d = f.member(i).algebra.dim();
    m.theta.emplace(i, LinearMap::from_function(d, 1, [phi](const Mat& a) {
                      Mat out(1, 1);
                      out(0, 0) = phi(a);
                      return out;
                    }));
  }
  return m;
}

TEST(EvalMonotone, SingleLetter) {
  const Family f = diagonal_family({1, 2});
  std::mt19937_64 rng(1);
  const Mat a = random_gaussian(rng, 2, 2);
  EXPECT_LE((eval_monotone(f, make_word({{1, a}})) - f.psi(1, a)).norm(), 1e-14);
}

TEST(EvalMonotone, AlternatingFourLetters) {
  std::mt19937_64 rng(2);
  const Family f = scalar_family(rng, {1, 2});
  const Mat a = random_gaussian(rng, 2, 2), b = random_gaussian(rng, 2, 2);
  const cd got = eval_monotone(f, make_word({{1, a}, {2, b}, {1, a}, {2, b}}))(0, 0);
  const cd want = psi_of(f, 1, a * a) * psi_of(f, 2, b) * psi_of(f, 2, b);
  EXPECT_LE(std::abs(got - want), 1e-12);
  // same value from the vacuum of the monotone product bimodule
  const ProductBimodule m = ProductBimodule::from_family(f, ProductKind::Monotone);
  EXPECT_LE(std::abs(m.vacuum_expectation(make_word({{1, a}, {2, b}, {1, a}, {2, b}}))(0, 0) - want), 1e-12);
}

TEST(EvalMonotone, FirstLetterHighest) {
  const Family f = diagonal_family({1, 2});
  std::mt19937_64 rng(3);
  const Mat a = random_gaussian(rng, 2, 2), b = random_gaussian(rng, 2, 2);
  EXPECT_LE((eval_monotone(f, make_word({{2, b}, {1, a}})) - f.psi(2, b) * f.psi(1, a)).norm(), 1e-14);
}

TEST(EvalCmonotone, SingleLetter) {
  std::mt19937_64 rng(4);
  const Family f = scalar_family(rng, {1, 2});
  const Mat a = random_gaussian(rng, 2, 2);
  EXPECT_LE(std::abs(eval_cmonotone(f, make_word({{2, a}})) - phi_of(f, 2, a)), 1e-14);
}

TEST(EvalCmonotone, PeakFormula) {
  std::mt19937_64 rng(5);
  const Family f = scalar_family(rng, {1, 2});
  const Mat a = random_gaussian(rng, 2, 2), b = random_gaussian(rng, 2, 2);
  const cd got = eval_cmonotone(f, make_word({{1, a}, {2, b}, {1, a}}));
  const cd want = psi_of(f, 2, b) * phi_of(f, 1, a * a) +
                  phi_of(f, 1, a) * phi_of(f, 1, a) * (phi_of(f, 2, b) - psi_of(f, 2, b));
  EXPECT_LE(std::abs(got - want), 1e-12);
}

TEST(EvalCmonotone, CollapsesToMonotoneWhenStatesAgree) {
  std::mt19937_64 rng(6);
  const Family f = scalar_family(rng, {1, 2, 3}, 2, true);
  for (int t = 0; t < 200; ++t) {
    const Word w = sample_random_word(rng, 6, f);
    EXPECT_LE(std::abs(eval_cmonotone(f, w) - eval_monotone(f, w)(0, 0)), 1e-9);
  }
}

TEST(EvalMapProduct, ExpectationsGiveMonotoneMoments) {
  const Family f = diagonal_family({1, 2, 3});
  const MapFamily maps = psi_as_maps(f);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const Word w = sample_random_word(rng, 6, f);
    EXPECT_LE((eval_map_product(f, maps, w) - eval_monotone(f, w)).norm(), 1e-9);
  }
}

TEST(EvalMapProduct, StatesGiveCmonotoneMoments) {
  std::mt19937_64 rng(8);
  const Family f = scalar_family(rng, {1, 2, 3});
  const MapFamily maps = phi_as_maps(f);
  validate_map_family(f, maps);
  for (int t = 0; t < 200; ++t) {
    const Word w = sample_random_word(rng, 6, f);
    EXPECT_LE(std::abs(eval_map_product(f, maps, w)(0, 0) - eval_cmonotone(f, w)), 1e-9);
  }
}

TEST(EvalMapProduct, CenteredDescendingPairFactorizes) {
  std::mt19937_64 rng(9);
  const Family f = scalar_family(rng, {1, 2});
  MapFamily maps{AlgebraSpec::full_matrix(2), LinearMap::from_function(1, 2, [](const Mat& b) {
                   return Mat(b(0, 0) * Mat::Identity(2, 2));
                 }), {}};
  for (int i : {1, 2}) {
    // conjugation by a fixed unitary
    const Mat u = mat2(0, 1, 1, 0);
    maps.theta.emplace(i, LinearMap::from_function(2, 2, [u](const Mat& a) { return Mat(u * a * u.adjoint()); }));
  }
  const Letter a2 = center(f, Letter{2, random_gaussian(rng, 2, 2)}).first;
  const Letter a1 = center(f, Letter{1, random_gaussian(rng, 2, 2)}).first;
  const Mat got = eval_map_product(f, maps, make_word({a2, a1}));
  const Mat want = maps.theta.at(2)(a2.element) * maps.theta.at(1)(a1.element);
  EXPECT_LE((got - want).norm(), 1e-12);
}

TEST(EvalMapProduct, LastLetterHighestSplitsOff) {
  std::mt19937_64 rng(10);
  const Family f = scalar_family(rng, {1, 2, 3});
  MapFamily maps{AlgebraSpec::full_matrix(2), LinearMap::from_function(1, 2, [](const Mat& b) {
                   return Mat(b(0, 0) * Mat::Identity(2, 2));
                 }), {}};
  for (int i : {1, 2, 3}) maps.theta.emplace(i, LinearMap::identity(2));
  for (int t = 0; t < 50; ++t) {
    Word w = sample_random_word(rng, 5, f.restrict_to({1, 2}));
    const Mat a3 = random_gaussian(rng, 2, 2);
    const Mat head = eval_map_product(f, maps, w);
    w.letters.push_back(Letter{3, a3});
    EXPECT_LE((eval_map_product(f, maps, w) - head * a3).norm(), 1e-9);
  }
}

TEST(OrderIndependence, SingleLetterHasNoDeviation) {
  const Family f = diagonal_family({1, 2});
  std::mt19937_64 rng(11);
  const Word w = make_word({{2, random_gaussian(rng, 2, 2)}});
  EXPECT_EQ(order_deviation([&](const EvalOptions& o) { return eval_monotone(f, w, o); }, 10, rng), 0.0);
}

TEST(OrderIndependence, UniquePeakIsDeterministic) {
  const Family f = diagonal_family({1, 2, 3});
  std::mt19937_64 rng(12);
  const Word w = random_word_on(rng, {1, 3, 2}, f);
  EXPECT_EQ(order_deviation([&](const EvalOptions& o) { return eval_monotone(f, w, o); }, 10, rng), 0.0);
}

TEST(OrderIndependence, RandomWords) {
  std::mt19937_64 rng(13);
  const Family f = scalar_family(rng, {1, 2, 3});
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Word w = sample_random_word(rng, 6, f);
    worst = std::max(worst, order_deviation([&](const EvalOptions& o) {
                              Mat m(1, 1);
                              m(0, 0) = eval_cmonotone(f, w, o);
                              return m;
                            },
                                            10, rng));
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(Evaluators, LinearInEachLetter) {
  std::mt19937_64 rng(14);
  const Family f = scalar_family(rng, {1, 2, 3});
  const Family fd = diagonal_family({1, 2, 3});
  for (int t = 0; t < 50; ++t) {
    const Word w = sample_random_word(rng, 5, f);
    const std::size_t k = static_cast<std::size_t>(t) % w.length();
    const Mat delta = random_gaussian(rng, 2, 2);
    const cd s(0.7, -0.4);
    Word wp = w, wd = w;
    wp.letters[k].element += s * delta;
    wd.letters[k].element = delta;
    EXPECT_LE(std::abs(eval_cmonotone(f, wp) - eval_cmonotone(f, w) - s * eval_cmonotone(f, wd)), 1e-9);
    Word v = w;
    for (Letter& l : v.letters) l.element = fd.member(l.index).algebra.random_element(rng);
    Word vp = v, vd = v;
    vp.letters[k].element += s * delta;
    vd.letters[k].element = delta;
    EXPECT_LE((eval_monotone(fd, vp) - eval_monotone(fd, v) - s * eval_monotone(fd, vd)).norm(), 1e-9);
  }
}

TEST(Evaluators, AgreeWithScalarFockModel) {
  std::mt19937_64 rng(15);
  const Family f = scalar_family(rng, {1, 2, 3});
  const ScalarFockModel model(f);
  for (const auto& p : alternating_patterns(f.indices(), 4)) {
    const Word w = random_word_on(rng, p, f);
    EXPECT_LE(std::abs(model.vacuum(w) - eval_cmonotone(f, w)), 1e-9);
  }
}

TEST(EvalMonotone, AgreesWithBimoduleVacuumOnAllPatterns) {
  const Family f = diagonal_family({1, 2, 3});
  const ProductBimodule m = ProductBimodule::from_family(f, ProductKind::Monotone);
  std::mt19937_64 rng(16);
  for (const auto& p : alternating_patterns(f.indices(), 5)) {
    const Word w = random_word_on(rng, p, f);
    EXPECT_LE(operator_norm(m.vacuum_expectation(w) - eval_monotone(f, w)), 1e-9);
  }
}

TEST(EvalMapProduct, GroupedEqualsFlat) {
  const Family f = diagonal_family({1, 2, 3, 4});
  const MapFamily maps = psi_as_maps(f);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    const Word w = sample_random_word(rng, 6, f);
    const Mat flat = eval_map_product(f, maps, w);
    EXPECT_LE((eval_map_product_grouped(f, maps, w, {{1, 2}, {3, 4}}) - flat).norm(), 1e-9);
    EXPECT_LE((eval_map_product_grouped(f, maps, w, {{1}, {2, 3}, {4}}) - flat).norm(), 1e-9);
  }
}

TEST(EvalCmonotone, RequiresStates) {
  const Family f = diagonal_family({1, 2});
  EXPECT_THROW(eval_cmonotone(f, make_word({{1, Mat::Identity(2, 2)}})), Error);
}

}  // namespace
