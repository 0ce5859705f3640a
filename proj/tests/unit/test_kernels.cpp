#include <gtest/gtest.h>

#include <random>

#include "cmono/kernels.hpp"
#include "cmono/linalg.hpp"

namespace k = cmono::kernels;
using cmono::Mat;
using cmono::Vec;
using cmono::cd;

namespace {

class KernelShapes : public ::testing::TestWithParam<std::tuple<int, int, int>> {};

TEST_P(KernelShapes, GemmVariantsMatchEigen) {
  const auto [m, kk, n] = GetParam();
  std::mt19937_64 rng(static_cast<std::uint64_t>(m * 131 + kk * 17 + n));
  const Mat a = cmono::random_gaussian(rng, m, kk);
  const Mat b = cmono::random_gaussian(rng, kk, n);
  const Mat ref = a * b;
  for (k::Isa isa : {k::Isa::Scalar, k::Isa::Avx2}) {
    if (!k::isa_available(isa)) continue;
    Mat c(m, n);
    k::zgemm(isa, a.data(), b.data(), c.data(), static_cast<std::size_t>(m), static_cast<std::size_t>(kk),
             static_cast<std::size_t>(n));
    EXPECT_LE((c - ref).norm(), 1e-12 * (1.0 + ref.norm())) << k::isa_name(isa);
  }
}

TEST_P(KernelShapes, GemvAndDotVariantsAgree) {
  const auto [m, n, extra] = GetParam();
  std::mt19937_64 rng(static_cast<std::uint64_t>(m * 7 + n * 3 + extra));
  const Mat a = cmono::random_gaussian(rng, m, n);
  const Vec x = cmono::random_gaussian(rng, n, 1).col(0);
  const Vec y = cmono::random_gaussian(rng, n, 1).col(0);
  Vec ys(m), yv(m);
  k::scalar::zgemv(a.data(), x.data(), ys.data(), static_cast<std::size_t>(m), static_cast<std::size_t>(n));
  EXPECT_LE((ys - a * x).norm(), 1e-12 * (1.0 + ys.norm()));
  const cd ds = k::scalar::zdotc(x.data(), y.data(), static_cast<std::size_t>(n));
  EXPECT_LE(std::abs(ds - x.dot(y)), 1e-12 * (1.0 + std::abs(ds)));
  if (!k::isa_available(k::Isa::Avx2)) GTEST_SKIP() << "no AVX2 on this machine";
  k::avx2::zgemv(a.data(), x.data(), yv.data(), static_cast<std::size_t>(m), static_cast<std::size_t>(n));
  EXPECT_LE((yv - ys).norm(), 1e-12 * (1.0 + ys.norm()));
  const cd dv = k::avx2::zdotc(x.data(), y.data(), static_cast<std::size_t>(n));
  EXPECT_LE(std::abs(dv - ds), 1e-12 * (1.0 + std::abs(ds)));
}

INSTANTIATE_TEST_SUITE_P(Shapes, KernelShapes,
                         ::testing::Values(std::make_tuple(1, 1, 1), std::make_tuple(2, 3, 5), std::make_tuple(7, 1, 9),
                                           std::make_tuple(16, 16, 16), std::make_tuple(33, 17, 5),
                                           std::make_tuple(64, 63, 65), std::make_tuple(128, 3, 1)));

TEST(Kernels, WrappersUseActiveIsa) {
  std::mt19937_64 rng(5);
  const Mat a = cmono::random_gaussian(rng, 12, 9);
  const Mat b = cmono::random_gaussian(rng, 9, 4);
  EXPECT_LE((k::multiply(a, b) - a * b).norm(), 1e-12);
  const Vec x = b.col(0);
  EXPECT_LE((k::apply(a, x) - a * x).norm(), 1e-12);
  EXPECT_LE(std::abs(k::dotc(x, b.col(1)) - x.dot(b.col(1))), 1e-12);
  EXPECT_TRUE(k::isa_available(k::Isa::Scalar));
}

TEST(Kernels, EmptyProducts) {
  const Mat a(0, 3);
  EXPECT_EQ(k::multiply(a, Mat::Zero(3, 2)).rows(), 0);
  Mat c = Mat::Constant(2, 2, cd(9.0, 0.0));
  const Mat z(2, 0), w(0, 2);
  k::zgemm(k::Isa::Scalar, z.data(), w.data(), c.data(), 2, 0, 2);
  EXPECT_EQ(c.norm(), 0.0);
}

}  // namespace
