// Compiled with -mavx2 -mfma; only reached through the runtime dispatcher.
#include <immintrin.h>

#include "cqkd/qcore/kernels.hpp"

namespace cqkd::qcore::kernels {
namespace {

// One __m256d holds two interleaved complex doubles [re0, im0, re1, im1].

inline __m256d cmul_scalar(__m256d v, __m256d re, __m256d im) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_addsub_pd(_mm256_mul_pd(v, re), _mm256_mul_pd(swapped, im));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void apply_1q_avx2(cplx* amps, std::size_t dim, std::size_t stride, const Gate2& g) {
  if (stride == 1) {
    // Partners are adjacent; the pairwise form is not worth vectorizing.
    scalar().apply_1q(amps, dim, stride, g);
    return;
  }
  const __m256d r00 = _mm256_set1_pd(g[0].real()), i00 = _mm256_set1_pd(g[0].imag());
  const __m256d r01 = _mm256_set1_pd(g[1].real()), i01 = _mm256_set1_pd(g[1].imag());
  const __m256d r10 = _mm256_set1_pd(g[2].real()), i10 = _mm256_set1_pd(g[2].imag());
  const __m256d r11 = _mm256_set1_pd(g[3].real()), i11 = _mm256_set1_pd(g[3].imag());
  auto* base = reinterpret_cast<double*>(amps);
  for (std::size_t block = 0; block < dim; block += 2 * stride) {
    for (std::size_t i = block; i < block + stride; i += 2) {
      double* p0 = base + 2 * i;
      double* p1 = base + 2 * (i + stride);
      const __m256d a0 = _mm256_loadu_pd(p0);
      const __m256d a1 = _mm256_loadu_pd(p1);
      const __m256d out0 = _mm256_add_pd(cmul_scalar(a0, r00, i00), cmul_scalar(a1, r01, i01));
      const __m256d out1 = _mm256_add_pd(cmul_scalar(a0, r10, i10), cmul_scalar(a1, r11, i11));
      _mm256_storeu_pd(p0, out0);
      _mm256_storeu_pd(p1, out1);
    }
  }
}

double norm_sq_avx2(const cplx* amps, std::size_t dim) {
  const auto* p = reinterpret_cast<const double*>(amps);
  const std::size_t n = 2 * dim;
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d v = _mm256_loadu_pd(p + k);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double total = hsum(acc);
  for (; k < n; ++k) total += p[k] * p[k];
  return total;
}

double prob_one_avx2(const cplx* amps, std::size_t dim, std::size_t stride) {
  if (stride == 1) return scalar().prob_one(amps, dim, stride);
  const auto* p = reinterpret_cast<const double*>(amps);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t block = stride; block < dim; block += 2 * stride) {
    for (std::size_t i = block; i < block + stride; i += 2) {
      const __m256d v = _mm256_loadu_pd(p + 2 * i);
      acc = _mm256_fmadd_pd(v, v, acc);
    }
  }
  return hsum(acc);
}

constexpr KernelTable kAvx2{"avx2", apply_1q_avx2, norm_sq_avx2, prob_one_avx2};

}  // namespace

namespace detail {
const KernelTable& avx2_table() { return kAvx2; }
}  // namespace detail

}  // namespace cqkd::qcore::kernels
