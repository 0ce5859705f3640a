#pragma once
// Complex double-precision kernels used on the hot paths (Fock operator
// products and vacuum matrix-vector chains). Every kernel has a scalar
// reference variant and an AVX2+FMA variant; the variant is chosen once at
// runtime from CPUID and can be pinned with CMONO_ISA=scalar|avx2.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace cmono::kernels {

using cd = std::complex<double>;

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();

// All matrices are column-major and densely packed (leading dimension = rows).
// C = A * B with A m x k, B k x n.
void zgemm(Isa isa, const cd* a, const cd* b, cd* c, std::size_t m, std::size_t k,
           std::size_t n);
// y = A * x with A m x n.
void zgemv(Isa isa, const cd* a, const cd* x, cd* y, std::size_t m, std::size_t n);
// sum_i conj(x_i) * y_i
cd zdotc(Isa isa, const cd* x, const cd* y, std::size_t n);

namespace scalar {
void zgemm(const cd* a, const cd* b, cd* c, std::size_t m, std::size_t k, std::size_t n);
void zgemv(const cd* a, const cd* x, cd* y, std::size_t m, std::size_t n);
cd zdotc(const cd* x, const cd* y, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool compiled();
void zgemm(const cd* a, const cd* b, cd* c, std::size_t m, std::size_t k, std::size_t n);
void zgemv(const cd* a, const cd* x, cd* y, std::size_t m, std::size_t n);
cd zdotc(const cd* x, const cd* y, std::size_t n);
}  // namespace avx2

// Eigen-facing wrappers using the active ISA.
Eigen::MatrixXcd multiply(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
Eigen::VectorXcd apply(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& x);
cd dotc(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y);

}  // namespace cmono::kernels
