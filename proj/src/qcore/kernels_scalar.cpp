#include "cqkd/qcore/kernels.hpp"

#include <complex>

namespace cqkd::qcore::kernels {
namespace {

void apply_1q_scalar(cplx* amps, std::size_t dim, std::size_t stride, const Gate2& g) {
  for (std::size_t block = 0; block < dim; block += 2 * stride) {
    for (std::size_t i = block; i < block + stride; ++i) {
      const cplx a0 = amps[i];
      const cplx a1 = amps[i + stride];
      amps[i] = g[0] * a0 + g[1] * a1;
      amps[i + stride] = g[2] * a0 + g[3] * a1;
    }
  }
}

double norm_sq_scalar(const cplx* amps, std::size_t dim) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) acc += std::norm(amps[i]);
  return acc;
}

double prob_one_scalar(const cplx* amps, std::size_t dim, std::size_t stride) {
  double acc = 0.0;
  for (std::size_t block = stride; block < dim; block += 2 * stride) {
    for (std::size_t i = block; i < block + stride; ++i) acc += std::norm(amps[i]);
  }
  return acc;
}

constexpr KernelTable kScalar{"scalar", apply_1q_scalar, norm_sq_scalar, prob_one_scalar};

}  // namespace

const KernelTable& scalar() { return kScalar; }

}  // namespace cqkd::qcore::kernels
