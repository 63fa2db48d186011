#include <doctest.h>

#include <cmath>

#include "cqkd/attacks/model.hpp"
#include "cqkd/keyrate/keyrate.hpp"
#include "cqkd/protocol/protocol.hpp"
#include "cqkd/qcore/matrices.hpp"
#include "helpers.hpp"

using namespace cqkd::keyrate;

namespace {

ObservedStats stats(double p00, double p01, double p10, double p11, double pc) {
  return {p00, p01, p10, p11, pc, 1.0 - pc};
}

double r_of(double q) { return key_rate_lower(stats_from_Q(q)).r_lower; }

}  // namespace

TEST_CASE("depolarizing statistics") {
  const ObservedStats s0 = stats_from_Q(0.0);
  CHECK(s0.p00 == 0.5);
  CHECK(s0.p01 == 0.0);
  CHECK(s0.pc == 1.0);
  const ObservedStats s = stats_from_Q(0.1);
  CHECK(s.p00 == doctest::Approx(0.45));
  CHECK(s.p01 == doctest::Approx(0.05));
  CHECK(s.p10 == doctest::Approx(0.05));
  CHECK(s.p11 == doctest::Approx(0.45));
  CHECK(s.pc == doctest::Approx(0.9));
  CHECK(s.pin == doctest::Approx(0.1));
  const ObservedStats half = stats_from_Q(0.5);
  for (double p : {half.p00, half.p01, half.p10, half.p11}) CHECK(p == doctest::Approx(0.25));
  CHECK_THROWS_AS(stats_from_Q(0.6), std::invalid_argument);
  CHECK_THROWS_AS(stats_from_Q(-0.01), std::invalid_argument);
}

TEST_CASE("conditional entropy") {
  CHECK(conditional_entropy_H_AC(stats_from_Q(0.0)) == doctest::Approx(0.0));
  CHECK(conditional_entropy_H_AC(stats(0.25, 0.25, 0.25, 0.25, 0.5)) == doctest::Approx(1.0));
  const double want = oracle::entropy({0.475, 0.025, 0.025, 0.475}) - 1.0;
  CHECK(conditional_entropy_H_AC(stats_from_Q(0.05)) == doctest::Approx(want).epsilon(1e-12));
  CHECK(std::abs(conditional_entropy_H_AC(stats_from_Q(0.05)) - 0.28640) < 1e-5);
}

TEST_CASE("overlap bound") {
  CHECK(bound_B(stats_from_Q(0.0)) == doctest::Approx(1.0));
  CHECK(bound_B(stats_from_Q(0.1)) == doctest::Approx(0.49));
  CHECK(bound_B(stats(0.5, 0.0, 0.0, 0.5, 0.5)) == doctest::Approx(0.0));
}

TEST_CASE("lambda tilde") {
  CHECK(lambda_tilde(stats_from_Q(0.0)) == doctest::Approx(1.0));
  CHECK(lambda_tilde(stats_from_Q(0.1)) == doctest::Approx(0.5 + 0.7 / 1.8));
  CHECK(std::abs(lambda_tilde(stats_from_Q(0.1)) - 0.8889) < 1e-4);
  CHECK(lambda_tilde(stats(0.5, 0.0, 0.0, 0.5, 0.5)) == doctest::Approx(0.5));
  CHECK_THROWS_AS(lambda_tilde(stats(0.0, 0.5, 0.5, 0.0, 0.5)), std::domain_error);
}

TEST_CASE("key rate examples") {
  CHECK(std::abs(r_of(0.0) - 1.0) < 1e-9);
  CHECK(std::abs(r_of(0.0968)) < 5e-3);
  CHECK(r_of(0.05) > 0.0);
  CHECK(r_of(0.12) < 0.0);
  const ObservedStats anti = stats(0.0, 0.5, 0.5, 0.0, 0.5);
  CHECK_NOTHROW(key_rate_lower(anti));
  CHECK_THROWS_AS(key_rate_lower(stats(0.5, 0.5, 0.5, 0.0, 0.5)), std::invalid_argument);
}

TEST_CASE("key rate matches the closed-form oracle") {
  for (int i = 0; i <= 100; ++i) {
    const double q = 0.5 * i / 100.0;
    CHECK(r_of(q) == doctest::Approx(oracle::key_rate(q)).epsilon(1e-12));
  }
}

TEST_CASE("report invariants on random statistics") {
  cqkd::RandomStream rng(201, 0);
  for (int trial = 0; trial < 500; ++trial) {
    double p[4], sum = 0;
    for (double& x : p) sum += x = rng.uniform();
    for (double& x : p) x /= sum;
    const ObservedStats s = stats(p[0], p[1], p[2], p[3], rng.uniform());
    const KeyRateReport r = key_rate_lower(s);
    CHECK(r.S_EF_bound >= 0.0);
    CHECK(r.H_AC >= -1e-12);
    CHECK(r.H_AC <= 2.0);
    CHECK(r.lambda_tilde >= 0.5);
    CHECK(r.lambda_tilde <= 1.0);
    CHECK(r.B >= 0.0);
    CHECK(r.r_lower <= 1.0 + 1e-12);

    // Swapping p00 with p11 and p01 with p10 leaves the rate unchanged.
    const KeyRateReport swapped = key_rate_lower(stats(p[3], p[2], p[1], p[0], s.pc));
    CHECK(swapped.r_lower == doctest::Approx(r.r_lower).epsilon(1e-12));
  }
}

TEST_CASE("lambda tilde is the larger eigenvalue of sigma_1 at the overlap bound") {
  for (int i = 0; i <= 40; ++i) {
    const double q = 0.3 * i / 40.0;
    const ObservedStats s = stats_from_Q(q);
    const double b = bound_B(s);
    // e0 = alpha|u>, e3 = beta|u> + gamma|v> with |<e0|e3>|^2 = |alpha|^2 |beta|^2 = B.
    const double alpha2 = 2 * s.p00;
    const double beta2 = b / alpha2;
    const double gamma2 = 2 * s.p11 - beta2;
    REQUIRE(gamma2 >= -1e-12);
    const std::complex<double> beta(std::sqrt(beta2) * std::cos(0.3), std::sqrt(beta2) * std::sin(0.3));
    const std::complex<double> gamma(std::sqrt(std::max(gamma2, 0.0)), 0.0);
    const double xi1 = s.p00 + s.p11;
    cqkd::qcore::ComplexMatrix sigma(2, 2);
    sigma(0, 0) = (alpha2 + beta2) / (2 * xi1);
    sigma(0, 1) = beta * std::conj(gamma) / (2 * xi1);
    sigma(1, 0) = std::conj(beta) * gamma / (2 * xi1);
    sigma(1, 1) = gamma2 / (2 * xi1);
    const Eigen::VectorXd ev = cqkd::qcore::hermitian_eigenvalues(sigma);
    CHECK(std::abs(ev.maxCoeff() - lambda_tilde(s)) < 1e-9);
  }
}

TEST_CASE("noise threshold") {
  const ThresholdResult t = noise_threshold();
  CHECK(t.threshold == doctest::Approx(0.0968).epsilon(0.0005 / 0.0968));
  CHECK(t.bracket_width < 1e-6);
  CHECK(t.iterations > 0);
  CHECK(r_of(t.threshold / 2) > 0.0);
  CHECK(std::abs(r_of(t.threshold)) < 1e-5);
}

TEST_CASE("key rate curve") {
  const auto curve = key_rate_curve(0.0, 0.12, 241);
  REQUIRE(curve.size() == 241);
  CHECK(curve.front().q == 0.0);
  CHECK(curve.front().r_lower == doctest::Approx(1.0));
  CHECK(curve.back().q == 0.12);
  int sign_changes = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    CHECK(curve[i].r_lower < curve[i - 1].r_lower);
    if ((curve[i].r_lower > 0) != (curve[i - 1].r_lower > 0)) {
      ++sign_changes;
      CHECK(curve[i - 1].q < 0.0968);
      CHECK(curve[i].q > 0.0968);
    }
  }
  CHECK(sign_changes == 1);
  const auto coarse = key_rate_curve(0.0, 0.12, 121);
  CHECK(coarse.front().r_lower == doctest::Approx(1.0));
  CHECK_THROWS_AS(key_rate_curve(0.0, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(key_rate_curve(0.1, 0.05, 10), std::invalid_argument);
  CHECK_THROWS_AS(key_rate_curve(0.0, 0.6, 10), std::invalid_argument);
  CHECK_THROWS_AS(key_rate_curve(0.0, 0.1, 1), std::invalid_argument);
}

TEST_CASE("transcript statistics") {
  cqkd::protocol::ProtocolConfig c;
  c.n = 2500;
  c.seed = 202;
  const auto clean = cqkd::protocol::run_protocol(c, cqkd::attacks::no_attack());
  const ObservedStats s = stats_from_transcript(clean.records);
  CHECK(s.p01 == 0.0);
  CHECK(s.p10 == 0.0);
  CHECK(s.pin == 0.0);
  CHECK(std::abs(s.p00 - 0.5) < 4 * std::sqrt(0.25 / 5000));
  CHECK(key_rate_lower(s).r_lower == doctest::Approx(1.0).epsilon(1e-3));

  std::vector<cqkd::protocol::RoundRecord> no_case3;
  for (const auto& r : clean.records)
    if (r.case_kind != cqkd::protocol::CaseKind::Case3) no_case3.push_back(r);
  CHECK_THROWS_AS(stats_from_transcript(no_case3), std::invalid_argument);
  CHECK_THROWS_AS(stats_from_transcript({}), std::invalid_argument);
}
