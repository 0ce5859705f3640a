#include <gtest/gtest.h>

#include "cmono/algebra.hpp"
#include "cmono/bmodule.hpp"
#include "test_util.hpp"

using namespace cmono;
using cmono::testing::mat2;
using cmono::testing::unit;

namespace {

// Rank of the scalarized Gram matrix of a ⊗ c over B, built from the
// defining formula tr psi(c1^* psi(a1^* a2) c2) without any module code.
Eigen::Index brute_tensor_rank(const AlgebraSpec& a, const CondExpSpec& psi) {
  std::vector<std::pair<Mat, Mat>> raw;
  for (const Mat& x : a.basis())
    for (const Mat& y : a.basis()) raw.emplace_back(x, y);
  const auto n = static_cast<Eigen::Index>(raw.size());
  Mat g(n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q) {
      const auto& [a1, c1] = raw[static_cast<std::size_t>(p)];
      const auto& [a2, c2] = raw[static_cast<std::size_t>(q)];
      g(p, q) = psi(Mat(c1.adjoint() * psi(Mat(a1.adjoint() * a2)) * c2)).trace();
    }
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  return (es.eigenvalues().array() > 1e-9).count();
}

TEST(Gns, VectorStateHasTwoDimensions) {
  const AlgebraSpec m2 = AlgebraSpec::full_matrix(2);
  const Representation r = gns(m2, StateSpec(unit(2, 0, 0)));
  EXPECT_EQ(r.dim, 2);
}

TEST(Gns, FaithfulStateHasFullDimension) {
  const AlgebraSpec m2 = AlgebraSpec::full_matrix(2);
  const Representation r = gns(m2, StateSpec(Mat::Identity(2, 2) / 2.0));
  EXPECT_EQ(r.dim, 4);
}

TEST(Gns, ScalarsAreOneDimensional) {
  const AlgebraSpec c = AlgebraSpec::scalars(1);
  const Representation r = gns(c, StateSpec(Mat::Identity(1, 1)));
  ASSERT_EQ(r.dim, 1);
  Mat a(1, 1);
  a(0, 0) = cd(2.5, -1.0);
  EXPECT_LE((r(a) - a).norm(), 1e-14);
}

TEST(Gns, ReproducesStateAndIsRepresentation) {
  std::mt19937_64 rng(3);
  for (Eigen::Index d : {1, 2, 3}) {
    const AlgebraSpec a = AlgebraSpec::full_matrix(d);
    for (int t = 0; t < 3; ++t) {
      Mat rho = random_density(rng, d);
      if (t == 2) rho = unit(d, 0, 0);  // degenerate state
      const StateSpec phi(rho);
      const Representation r = gns(a, phi);
      for (const Mat& b : a.basis()) EXPECT_LE(std::abs(r.xi.dot(r(b) * r.xi) - phi(b)), 1e-10);
      EXPECT_LE(representation_defect(a, r), 1e-10);
    }
  }
}

TEST(PairedGns, SeparatesTheTwoStates) {
  const AlgebraSpec m2 = AlgebraSpec::full_matrix(2);
  const PairedGns pg = paired_gns(m2, StateSpec(unit(2, 0, 0)), StateSpec(unit(2, 1, 1)));
  const Mat e11 = unit(2, 0, 0);
  EXPECT_NEAR(std::abs(pg.pi.xi.dot(pg.pi(e11) * pg.pi.xi) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(pg.sigma.xi.dot(pg.sigma(e11) * pg.sigma.xi)), 0.0, 1e-12);
}

TEST(PairedGns, SigmaReproducesPsi) {
  std::mt19937_64 rng(11);
  const AlgebraSpec m2 = AlgebraSpec::full_matrix(2);
  const StateSpec phi(random_density(rng, 2));
  const StateSpec psi(random_density(rng, 2));
  const PairedGns pg = paired_gns(m2, phi, psi);
  for (int t = 0; t < 100; ++t) {
    const Mat a = random_gaussian(rng, 2, 2);
    EXPECT_LE(std::abs(pg.sigma.xi.dot(pg.sigma(a) * pg.sigma.xi) - psi(a)), 1e-12);
    EXPECT_LE(std::abs(pg.pi.xi.dot(pg.pi(a) * pg.pi.xi) - phi(a)), 1e-12);
  }
}

TEST(PairedGns, EqualStatesGiveEqualMoments) {
  std::mt19937_64 rng(12);
  const AlgebraSpec m2 = AlgebraSpec::full_matrix(2);
  const StateSpec phi(random_density(rng, 2));
  const PairedGns pg = paired_gns(m2, phi, phi);
  for (const Mat& b : m2.basis())
    EXPECT_LE(std::abs(pg.pi.xi.dot(pg.pi(b) * pg.pi.xi) - pg.sigma.xi.dot(pg.sigma(b) * pg.sigma.xi)), 1e-12);
}

TEST(States, NonPositiveDensityIsRejected) {
  try {
    StateSpec bad(mat2(1.5, 0, 0, -0.5));
    FAIL() << "accepted a non-positive density";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonState);
  }
  EXPECT_THROW(StateSpec(mat2(0.7, 0, 0, 0.7)), Error);  // trace 1.4
}

TEST(AlgebraSpec, CoordinatesRoundTrip) {
  std::mt19937_64 rng(2);
  const AlgebraSpec d2 = AlgebraSpec::diagonal(3);
  const Mat x = d2.random_element(rng);
  EXPECT_LE((d2.element(d2.coords(x)) - x).norm(), 1e-12);
  EXPECT_TRUE(d2.contains(x));
  EXPECT_FALSE(d2.contains(unit(3, 0, 1)));
  EXPECT_NEAR(operator_norm(x), 1.0, 1e-12);
}

TEST(GnsModule, IdentityExpectationHasNoReducedPart) {
  const AlgebraSpec b = AlgebraSpec::diagonal(2);
  const BModule e = gns_module(b, CondExpSpec::identity(b));
  EXPECT_EQ(e.n, 2);
  EXPECT_EQ(e.n_reduced(), 0);
}

TEST(GnsModule, TraceOverScalars) {
  const AlgebraSpec m2 = AlgebraSpec::full_matrix(2);
  const BModule e = gns_module(m2, CondExpSpec::from_state(m2, StateSpec(Mat::Identity(2, 2) / 2.0)));
  EXPECT_EQ(e.n, 4);
  EXPECT_EQ(e.n_reduced(), 3);
}

TEST(GnsModule, DiagonalCompression) {
  const AlgebraSpec m2 = AlgebraSpec::full_matrix(2);
  const CondExpSpec psi = CondExpSpec::diagonal_compression(m2);
  const BModule e = gns_module(m2, psi);
  EXPECT_EQ(e.n, 4);
  EXPECT_EQ(e.n_reduced(), 2);
  EXPECT_LE(module_defect(e, psi.target(), m2.basis()), 1e-10);
  // xi B is orthogonal to E°
  for (Eigen::Index p = 0; p < e.n_xi; ++p)
    for (Eigen::Index q = e.n_xi; q < e.n; ++q) EXPECT_LE(e.block(p, q).norm(), 1e-10);
}

TEST(TensorOver, ScalarAmalgamationIsHilbertTensor) {
  std::mt19937_64 rng(4);
  const AlgebraSpec m2 = AlgebraSpec::full_matrix(2);
  const AlgebraSpec m3 = AlgebraSpec::full_matrix(3);
  const BModule e = gns_module(m2, CondExpSpec::from_state(m2, StateSpec(random_density(rng, 2))));
  const BModule f = gns_module(m3, CondExpSpec::from_state(m3, StateSpec(random_density(rng, 3))));
  EXPECT_EQ(tensor_over(e, f).module.n, e.n * f.n);
}

TEST(TensorOver, UnitModuleIsNeutral) {
  const AlgebraSpec m2 = AlgebraSpec::full_matrix(2);
  const CondExpSpec psi = CondExpSpec::diagonal_compression(m2);
  const BModule b = gns_module(psi.target(), CondExpSpec::identity(psi.target()));
  const BModule f = gns_module(m2, psi);
  const TensorModule t = tensor_over(b, f);
  ASSERT_EQ(t.module.n, f.n);
  // <xi ⊗ x, xi ⊗ y> = <x, y>
  for (Eigen::Index p = 0; p < f.n; ++p)
    for (Eigen::Index q = 0; q < f.n; ++q) {
      const Vec x = t.coords * kron(b.xi, Vec(Vec::Unit(f.n, p)));
      const Vec y = t.coords * kron(b.xi, Vec(Vec::Unit(f.n, q)));
      EXPECT_LE((t.module.inner(x, y) - f.block(p, q)).norm(), 1e-10);
    }
}

TEST(TensorOver, DiagonalAmalgamationMatchesBruteForceRank) {
  const AlgebraSpec m2 = AlgebraSpec::full_matrix(2);
  const CondExpSpec psi = CondExpSpec::diagonal_compression(m2);
  const BModule e = gns_module(m2, psi);
  const Eigen::Index oracle = brute_tensor_rank(m2, psi);
  EXPECT_EQ(oracle, 8);
  EXPECT_EQ(tensor_over(e, e).module.n, oracle);
  EXPECT_LE(module_defect(tensor_over(e, e).module, psi.target()), 1e-10);
}

TEST(TensorOver, AssociativeOnElementaryTensors) {
  const AlgebraSpec m2 = AlgebraSpec::full_matrix(2);
  const CondExpSpec psi = CondExpSpec::diagonal_compression(m2);
  const BModule e = gns_module(m2, psi);
  const TensorModule ef = tensor_over(e, e);
  const TensorModule ef_g = tensor_over(ef.module, e);
  const TensorModule fg = tensor_over(e, e);
  const TensorModule e_fg = tensor_over(e, fg.module);
  ASSERT_EQ(ef_g.module.n, e_fg.module.n);
  std::vector<Vec> left, right;
  for (Eigen::Index p = 0; p < e.n; ++p)
    for (Eigen::Index q = 0; q < e.n; ++q)
      for (Eigen::Index r = 0; r < e.n; ++r) {
        const Vec ep = Vec::Unit(e.n, p), eq = Vec::Unit(e.n, q), er = Vec::Unit(e.n, r);
        left.push_back(ef_g.coords * kron(Vec(ef.coords * kron(ep, eq)), er));
        right.push_back(e_fg.coords * kron(ep, Vec(fg.coords * kron(eq, er))));
      }
  double worst = 0.0;
  for (std::size_t s = 0; s < left.size(); ++s)
    for (std::size_t t = 0; t < left.size(); ++t)
      worst = std::max(worst, (ef_g.module.inner(left[s], left[t]) - e_fg.module.inner(right[s], right[t])).norm());
  EXPECT_LE(worst, 1e-9);
}

TEST(CondExp, CentersAndEmbeds) {
  const AlgebraSpec m2 = AlgebraSpec::full_matrix(2);
  const CondExpSpec psi = CondExpSpec::from_state(m2, StateSpec(Mat::Identity(2, 2) / 2.0));
  EXPECT_NEAR(std::abs(psi(unit(2, 0, 0))(0, 0) - 0.5), 0.0, 1e-14);
  EXPECT_LE((psi.embed(Mat::Identity(1, 1)) - Mat::Identity(2, 2)).norm(), 1e-14);
}

}  // namespace
