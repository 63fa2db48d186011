#pragma once

// State-vector inner loops. A portable scalar table is always present; an AVX2
// table is compiled in on x86 builds and chosen at runtime when the CPU reports
// avx2 and fma. Setting CQKD_SIMD=scalar in the environment forces the scalar
// table (read once, on first use).

#include <array>
#include <complex>
#include <cstddef>

namespace cqkd::qcore::kernels {

using cplx = std::complex<double>;

/// Row-major 2x2 gate {m00, m01, m10, m11}.
using Gate2 = std::array<cplx, 4>;

struct KernelTable {
  const char* name;

  /// In-place single-qubit gate. `stride` is the basis-index distance between
  /// the |0> and |1> partners of the target qubit; dim is a multiple of 2*stride.
  void (*apply_1q)(cplx* amps, std::size_t dim, std::size_t stride, const Gate2& gate);

  /// sum |a_i|^2.
  double (*norm_sq)(const cplx* amps, std::size_t dim);

  /// sum of |a_i|^2 over indices whose `stride` bit is set.
  double (*prob_one)(const cplx* amps, std::size_t dim, std::size_t stride);
};

const KernelTable& scalar();

/// nullptr when the AVX2 kernels were not compiled in or the CPU lacks support.
const KernelTable* avx2();

/// The table used by the rest of the library.
const KernelTable& active();

}  // namespace cqkd::qcore::kernels
