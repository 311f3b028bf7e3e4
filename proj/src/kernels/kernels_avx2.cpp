// AVX2/FMA lane for the batched quadratic-form and matvec kernels.
// This translation unit is the only one compiled with -mavx2 -mfma;
// callers reach it through the runtime dispatch in kernels.cpp.

#if defined(GPR_HAVE_AVX2_LANE)

#include <immintrin.h>

#include <cstddef>

namespace gpr::kernels {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d sum2 = _mm_add_pd(lo, hi);
  const __m128d swapped = _mm_unpackhi_pd(sum2, sum2);
  return _mm_cvtsd_f64(_mm_add_sd(sum2, swapped));
}

inline double column_dot(const double* col, const double* x, int dim) {
  __m256d acc = _mm256_setzero_pd();
  int r = 0;
  for (; r + 4 <= dim; r += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(col + r), _mm256_loadu_pd(x + r), acc);
  double dot = hsum(acc);
  for (; r < dim; ++r) dot += col[r] * x[r];
  return dot;
}

}  // namespace

void quadratic_forms_avx2(const double* mats, int dim, int count, const double* x,
                          double* out) {
  const size_t stride = static_cast<size_t>(dim) * dim;
  for (int j = 0; j < count; ++j) {
    const double* a = mats + static_cast<size_t>(j) * stride;
    double acc = 0.0;
    for (int c = 0; c < dim; ++c) acc += column_dot(a + static_cast<size_t>(c) * dim, x, dim) * x[c];
    out[j] = acc;
  }
}

void matvec_columns_avx2(const double* mats, int dim, int count, const double* x,
                         double* cols) {
  const size_t stride = static_cast<size_t>(dim) * dim;
  for (int j = 0; j < count; ++j) {
    const double* a = mats + static_cast<size_t>(j) * stride;
    double* y = cols + static_cast<size_t>(j) * dim;
    int r = 0;
    for (; r + 4 <= dim; r += 4) _mm256_storeu_pd(y + r, _mm256_setzero_pd());
    for (; r < dim; ++r) y[r] = 0.0;
    for (int c = 0; c < dim; ++c) {
      const double* col = a + static_cast<size_t>(c) * dim;
      const __m256d xc = _mm256_set1_pd(x[c]);
      int i = 0;
      for (; i + 4 <= dim; i += 4) {
        const __m256d yi = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(_mm256_loadu_pd(col + i), xc, yi));
      }
      for (; i < dim; ++i) y[i] += col[i] * x[c];
    }
  }
}

}  // namespace gpr::kernels

#endif  // GPR_HAVE_AVX2_LANE
