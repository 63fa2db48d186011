#include "cqkd/keyrate/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cqkd/qcore/entropy.hpp"

namespace cqkd::keyrate {

using qcore::binary_entropy;
using qcore::shannon_entropy;

namespace {

constexpr double kTol = 1e-9;

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void ObservedStats::validate() const {
  for (double x : {p00, p01, p10, p11, pc, pin}) {
    if (!in_unit(x)) throw std::invalid_argument("ObservedStats: entry outside [0, 1]");
  }
  if (std::abs(p00 + p01 + p10 + p11 - 1.0) > kTol) {
    throw std::invalid_argument("ObservedStats: p_ij do not sum to 1");
  }
  if (std::abs(pc + pin - 1.0) > kTol) throw std::invalid_argument("ObservedStats: pc + pin != 1");
}

ObservedStats stats_from_Q(double q) {
  if (!(q >= 0.0 && q <= 0.5)) throw std::invalid_argument("stats_from_Q: Q must lie in [0, 0.5]");
  return {(1.0 - q) / 2.0, q / 2.0, q / 2.0, (1.0 - q) / 2.0, 1.0 - q, q};
}

ObservedStats stats_from_transcript(std::span<const protocol::RoundRecord> records) {
  double joint[2][2] = {{0, 0}, {0, 0}};
  double key_rounds = 0;
  double consistent = 0;
  double case3_rounds = 0;
  for (const auto& r : records) {
    switch (r.case_kind) {
      case protocol::CaseKind::Case1:
      case protocol::CaseKind::Case2:
        joint[r.mr_A][r.mr_C4.value()] += 1;
        key_rounds += 1;
        break;
      case protocol::CaseKind::Case3:
        case3_rounds += 1;
        if (protocol::consistency_check(r)) consistent += 1;
        break;
      case protocol::CaseKind::Case4:
        break;
    }
  }
  if (key_rounds == 0) throw std::invalid_argument("stats_from_transcript: no Case-1/Case-2 rounds");
  if (case3_rounds == 0) throw std::invalid_argument("stats_from_transcript: no Case-3 rounds");
  ObservedStats s;
  s.p00 = joint[0][0] / key_rounds;
  s.p01 = joint[0][1] / key_rounds;
  s.p10 = joint[1][0] / key_rounds;
  s.p11 = 1.0 - s.p00 - s.p01 - s.p10;
  s.pc = consistent / case3_rounds;
  s.pin = 1.0 - s.pc;
  return s;
}

double conditional_entropy_H_AC(const ObservedStats& s) {
  s.validate();
  return shannon_entropy({s.p00, s.p01, s.p10, s.p11}) - shannon_entropy({s.p00 + s.p10, s.p01 + s.p11});
}

double bound_B(const ObservedStats& s) {
  s.validate();
  const double x = (s.pc - s.pin) - 2.0 * std::sqrt(s.p01 * s.p10);
  return x * x;
}

double lambda_tilde(const ObservedStats& s) {
  s.validate();
  const double xi1 = s.p00 + s.p11;
  if (!(xi1 > 0.0)) throw std::domain_error("lambda_tilde: p00 + p11 = 0");
  const double diff = s.p00 - s.p11;
  const double lt = 0.5 + std::sqrt(diff * diff + bound_B(s)) / (2.0 * xi1);
  return std::min(lt, 1.0);
}

KeyRateReport key_rate_lower(const ObservedStats& s) {
  s.validate();
  KeyRateReport rep;
  const double xi1 = s.p00 + s.p11;
  const double xi2 = s.p01 + s.p10;
  rep.H_AC = conditional_entropy_H_AC(s);
  rep.S_AEF = shannon_entropy({s.p00, s.p01, s.p10, s.p11});
  rep.B = bound_B(s);
  // With no correlated mass the sigma_1 term carries zero weight.
  rep.lambda_tilde = xi1 > 0.0 ? lambda_tilde(s) : 0.5;
  const double s_sigma1 = xi1 > 0.0 ? binary_entropy(rep.lambda_tilde) : 0.0;
  rep.S_EF_bound = shannon_entropy({xi1, xi2}) + xi1 * s_sigma1 + xi2;
  rep.r_lower = rep.S_AEF - rep.S_EF_bound - rep.H_AC;
  return rep;
}

ThresholdResult noise_threshold(double tolerance) {
  auto r = [](double q) { return key_rate_lower(stats_from_Q(q)).r_lower; };
  double lo = 1e-6;
  double hi = 0.25;
  double r_lo = r(lo);
  const double r_hi = r(hi);
  if (!(r_lo > 0.0 && r_hi < 0.0)) {
    throw std::runtime_error("noise_threshold: r_lower does not change sign on [1e-6, 0.25]");
  }
  ThresholdResult out;
  while (hi - lo >= tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double r_mid = r(mid);
    if (r_mid > 0.0) {
      lo = mid;
      r_lo = r_mid;
    } else {
      hi = mid;
    }
    ++out.iterations;
  }
  out.threshold = 0.5 * (lo + hi);
  out.bracket_width = hi - lo;
  return out;
}

std::vector<CurvePoint> key_rate_curve(double q_min, double q_max, std::size_t steps) {
  if (!(q_min >= 0.0 && q_min < q_max && q_max <= 0.5)) {
    throw std::invalid_argument("key_rate_curve: need 0 <= q_min < q_max <= 0.5");
  }
  if (steps < 2) throw std::invalid_argument("key_rate_curve: need at least 2 steps");
  std::vector<CurvePoint> out(steps);
  const double step = (q_max - q_min) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) {
    const double q = i + 1 == steps ? q_max : q_min + step * static_cast<double>(i);
    out[i] = {q, key_rate_lower(stats_from_Q(q)).r_lower};
  }
  return out;
}

}  // namespace cqkd::keyrate
