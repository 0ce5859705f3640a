#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "cmono/kernels.hpp"

namespace cmono::kernels {

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(__x86_64__) || defined(__i386__)
  return avx2::compiled() && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {
Isa detect() {
  if (const char* env = std::getenv("CMONO_ISA")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  }
  return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}
}  // namespace

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

void zgemm(Isa isa, const cd* a, const cd* b, cd* c, std::size_t m, std::size_t k,
           std::size_t n) {
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2))
    avx2::zgemm(a, b, c, m, k, n);
  else
    scalar::zgemm(a, b, c, m, k, n);
}

void zgemv(Isa isa, const cd* a, const cd* x, cd* y, std::size_t m, std::size_t n) {
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2))
    avx2::zgemv(a, x, y, m, n);
  else
    scalar::zgemv(a, x, y, m, n);
}

cd zdotc(Isa isa, const cd* x, const cd* y, std::size_t n) {
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) return avx2::zdotc(x, y, n);
  return scalar::zdotc(x, y, n);
}

Eigen::MatrixXcd multiply(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd c(a.rows(), b.cols());
  if (a.cols() != b.rows()) throw std::invalid_argument("kernels::multiply: shape mismatch");
  if (c.size() == 0) return c;
  if (a.cols() == 0) {
    c.setZero();
    return c;
  }
  zgemm(active_isa(), a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
  return c;
}

Eigen::VectorXcd apply(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& x) {
  Eigen::VectorXcd y(a.rows());
  if (a.cols() != x.size()) throw std::invalid_argument("kernels::apply: shape mismatch");
  if (y.size() == 0) return y;
  if (a.cols() == 0) {
    y.setZero();
    return y;
  }
  zgemv(active_isa(), a.data(), x.data(), y.data(), a.rows(), a.cols());
  return y;
}

cd dotc(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
  if (x.size() != y.size()) throw std::invalid_argument("kernels::dotc: shape mismatch");
  return zdotc(active_isa(), x.data(), y.data(), x.size());
}

}  // namespace cmono::kernels
