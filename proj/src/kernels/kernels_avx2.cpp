#include "cmono/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define CMONO_HAVE_AVX2 1
#else
#define CMONO_HAVE_AVX2 0
#endif

namespace cmono::kernels::avx2 {

#if CMONO_HAVE_AVX2

bool compiled() { return true; }

namespace {

// y[0..m) += s * x[0..m) for interleaved complex doubles.
inline void zaxpy(std::size_t m, cd s, const cd* x, cd* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d sr = _mm256_set1_pd(s.real());
  const __m256d si = _mm256_set1_pd(s.imag());
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    __m256d x0 = _mm256_loadu_pd(xd + 2 * i);
    __m256d x1 = _mm256_loadu_pd(xd + 2 * i + 4);
    __m256d y0 = _mm256_loadu_pd(yd + 2 * i);
    __m256d y1 = _mm256_loadu_pd(yd + 2 * i + 4);
    // (xr, xi) * (sr, si) = (xr*sr - xi*si, xi*sr + xr*si)
    __m256d p0 = _mm256_fmaddsub_pd(x0, sr, _mm256_mul_pd(_mm256_permute_pd(x0, 0x5), si));
    __m256d p1 = _mm256_fmaddsub_pd(x1, sr, _mm256_mul_pd(_mm256_permute_pd(x1, 0x5), si));
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(y0, p0));
    _mm256_storeu_pd(yd + 2 * i + 4, _mm256_add_pd(y1, p1));
  }
  for (; i + 2 <= m; i += 2) {
    __m256d x0 = _mm256_loadu_pd(xd + 2 * i);
    __m256d y0 = _mm256_loadu_pd(yd + 2 * i);
    __m256d p0 = _mm256_fmaddsub_pd(x0, sr, _mm256_mul_pd(_mm256_permute_pd(x0, 0x5), si));
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(y0, p0));
  }
  for (; i < m; ++i) y[i] += x[i] * s;
}

}  // namespace

void zgemm(const cd* a, const cd* b, cd* c, std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    cd* cj = c + j * m;
    for (std::size_t i = 0; i < m; ++i) cj[i] = cd(0.0, 0.0);
    for (std::size_t p = 0; p < k; ++p) {
      const cd s = b[j * k + p];
      if (s == cd(0.0, 0.0)) continue;
      zaxpy(m, s, a + p * m, cj);
    }
  }
}

void zgemv(const cd* a, const cd* x, cd* y, std::size_t m, std::size_t n) {
  zgemm(a, x, y, m, n, 1);
}

cd zdotc(const cd* x, const cd* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    re = _mm256_fmadd_pd(xv, yv, re);                            // xr*yr, xi*yi
    im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0x5), im);    // xr*yi, xi*yr
  }
  alignas(32) double r[4];
  alignas(32) double q[4];
  _mm256_store_pd(r, re);
  _mm256_store_pd(q, im);
  cd acc(r[0] + r[1] + r[2] + r[3], q[0] - q[1] + q[2] - q[3]);
  for (; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

#else

bool compiled() { return false; }
void zgemm(const cd* a, const cd* b, cd* c, std::size_t m, std::size_t k, std::size_t n) {
  scalar::zgemm(a, b, c, m, k, n);
}
void zgemv(const cd* a, const cd* x, cd* y, std::size_t m, std::size_t n) {
  scalar::zgemv(a, x, y, m, n);
}
cd zdotc(const cd* x, const cd* y, std::size_t n) { return scalar::zdotc(x, y, n); }

#endif

}  // namespace cmono::kernels::avx2
