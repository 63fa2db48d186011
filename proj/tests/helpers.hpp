#pragma once

#include <cmath>
#include <vector>

#include "cqkd/qcore/state.hpp"
#include "cqkd/random.hpp"
#include "oracle.hpp"

namespace testing {

inline cqkd::qcore::StateVector from_oracle(const oracle::Vec& v) {
  int n = 0;
  while ((std::size_t{1} << n) < v.size()) ++n;
  return cqkd::qcore::StateVector(n, std::vector<cqkd::qcore::Amplitude>(v.begin(), v.end()));
}

inline double max_abs_diff(const cqkd::qcore::StateVector& s, const oracle::Vec& v) {
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(s[i] - v[i]));
  return worst;
}

inline oracle::Vec random_vec(std::size_t dim, cqkd::RandomStream& rng) {
  oracle::Vec v(dim);
  double norm = 0.0;
  for (auto& x : v) {
    x = {rng.normal(), rng.normal()};
    norm += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(norm);
  return v;
}

inline cqkd::qcore::StateVector random_state(int n, cqkd::RandomStream& rng) {
  return from_oracle(random_vec(std::size_t{1} << n, rng));
}

/// Pearson chi-square statistic of observed counts against expected probabilities.
inline double chi_square(const std::vector<double>& counts, const std::vector<double>& probs) {
  double total = 0.0;
  for (double c : counts) total += c;
  double chi = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double e = total * probs[i];
    chi += (counts[i] - e) * (counts[i] - e) / e;
  }
  return chi;
}

/// Chi-square acceptance bound: mean plus four standard deviations.
inline double chi_square_bound(int df) { return df + 4.0 * std::sqrt(2.0 * df); }

}  // namespace testing
