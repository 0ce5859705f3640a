#include "cmono/kernels.hpp"

namespace cmono::kernels::scalar {

void zgemm(const cd* a, const cd* b, cd* c, std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    cd* cj = c + j * m;
    for (std::size_t i = 0; i < m; ++i) cj[i] = cd(0.0, 0.0);
    for (std::size_t p = 0; p < k; ++p) {
      const cd s = b[j * k + p];
      if (s == cd(0.0, 0.0)) continue;
      const cd* ap = a + p * m;
      for (std::size_t i = 0; i < m; ++i) cj[i] += ap[i] * s;
    }
  }
}

void zgemv(const cd* a, const cd* x, cd* y, std::size_t m, std::size_t n) {
  zgemm(a, x, y, m, n, 1);
}

cd zdotc(const cd* x, const cd* y, std::size_t n) {
  cd acc(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

}  // namespace cmono::kernels::scalar
