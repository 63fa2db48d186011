#include <doctest.h>

#include <cmath>
#include <numbers>
#include <tuple>

#include "cqkd/qcore/entropy.hpp"
#include "cqkd/qcore/gates.hpp"
#include "cqkd/qcore/matrices.hpp"
#include "cqkd/qcore/measure.hpp"
#include "helpers.hpp"

using namespace cqkd::qcore;
using testing::from_oracle;
using testing::max_abs_diff;

namespace {

constexpr double kExact = 1e-9;

StateVector bell(BellOutcome k) { return bell_state(k); }

int bell_index(BellOutcome k) { return static_cast<int>(k); }

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("cluster state amplitudes") {
  const StateVector c = cluster4();
  CHECK(max_abs_diff(c, oracle::cluster()) < kExact);
  CHECK(c[0b1111].real() == doctest::Approx(-0.5));
  CHECK(c.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bell states match their definitions and are orthonormal") {
  for (BellOutcome k : kBellOutcomes) {
    CHECK(max_abs_diff(bell(k), oracle::bell(bell_index(k))) < kExact);
    for (BellOutcome l : kBellOutcomes) {
      const double overlap = std::abs(inner_product(bell(k), bell(l)));
      CHECK(overlap == doctest::Approx(k == l ? 1.0 : 0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("bell basis completeness on random two-qubit states") {
  cqkd::RandomStream rng(11, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const StateVector psi = testing::random_state(2, rng);
    double total = 0.0;
    for (BellOutcome k : kBellOutcomes) total += std::norm(inner_product(bell(k), psi));
    CHECK(std::abs(total - 1.0) < kExact);
  }
}

TEST_CASE("hadamard pair acts on the bell basis as a fixed table") {
  const UnitaryMatrix hh = kron(hadamard(), hadamard());
  struct Row {
    BellOutcome in, out;
    double sign;
  };
  const Row rows[] = {{BellOutcome::PhiPlus, BellOutcome::PhiPlus, 1.0},
                      {BellOutcome::PhiMinus, BellOutcome::PsiPlus, 1.0},
                      {BellOutcome::PsiPlus, BellOutcome::PhiMinus, 1.0},
                      {BellOutcome::PsiMinus, BellOutcome::PsiMinus, -1.0}};
  for (const Row& r : rows) {
    const StateVector got = apply_unitary(bell(r.in), hh, {0, 1});
    oracle::Vec want = oracle::bell(bell_index(r.out));
    for (auto& x : want) x *= r.sign;
    CHECK(max_abs_diff(got, want) < kExact);
  }
}

// Builds a 4-qubit vector from a product whose factor positions hold the listed
// qubits, e.g. order {1, 0, 3, 2} means the first factor is qubit 2.
oracle::Vec reorder(const oracle::Vec& v, std::array<int, 4> order) {
  oracle::Vec out(16, 0.0);
  for (int i = 0; i < 16; ++i) {
    int target = 0;
    for (int pos = 0; pos < 4; ++pos) target |= (i >> (3 - pos) & 1) << (3 - order[pos]);
    out[target] = v[i];
  }
  return out;
}

TEST_CASE("cluster state regroupings") {
  const StateVector c = cluster4();
  const oracle::Vec z0 = {1, 0}, z1 = {0, 1};
  using oracle::bell;
  using oracle::kron;

  // Bell pairs on (1,2) and (3,4).
  oracle::Vec pairs(16, 0.0);
  const std::tuple<double, int, int> terms[] = {{0.5, 0, 1}, {0.5, 1, 0}, {0.5, 2, 2}, {-0.5, 3, 3}};
  for (const auto& [coef, x, y] : terms) {
    const oracle::Vec t = kron(bell(x), bell(y));
    for (int i = 0; i < 16; ++i) pairs[i] += coef * t[i];
  }
  CHECK(max_abs_diff(c, pairs) < kExact);

  // Qubit 2, Bell pair on (1,4), qubit 3.
  oracle::Vec via14(16, 0.0);
  {
    const oracle::Vec a = kron(kron(z0, bell(0)), z0);
    const oracle::Vec b = kron(kron(z1, bell(1)), z1);
    for (int i = 0; i < 16; ++i) via14[i] = oracle::kInvSqrt2 * (a[i] + b[i]);
  }
  CHECK(max_abs_diff(c, reorder(via14, {1, 0, 3, 2})) < kExact);

  // Qubit 1, Bell pair on (2,3), qubit 4.
  oracle::Vec via23(16, 0.0);
  {
    const oracle::Vec a = kron(kron(z0, bell(0)), z0);
    const oracle::Vec b = kron(kron(z1, bell(1)), z1);
    for (int i = 0; i < 16; ++i) via23[i] = oracle::kInvSqrt2 * (a[i] + b[i]);
  }
  CHECK(max_abs_diff(c, reorder(via23, {0, 1, 2, 3})) < kExact);
}

TEST_CASE("apply_unitary agrees with the full-matrix oracle") {
  cqkd::RandomStream rng(5, 1);
  for (int n = 1; n <= 6; ++n) {
    for (int target = 0; target < n; ++target) {
      const oracle::Vec v = testing::random_vec(std::size_t{1} << n, rng);
      const StateVector got = apply_unitary(from_oracle(v), hadamard(), {target});
      CHECK(max_abs_diff(got, oracle::matvec(oracle::lift(n, target, oracle::hadamard()), v)) < kExact);
    }
  }
  SUBCASE("two-qubit gate with reversed targets") {
    const oracle::Vec v = testing::random_vec(16, rng);
    const UnitaryMatrix xz = kron(pauli_x(), pauli_z());
    const StateVector got = apply_unitary(from_oracle(v), xz, {3, 1});
    oracle::Vec want = oracle::matvec(oracle::lift(4, 3, oracle::pauli_x()), v);
    want = oracle::matvec(oracle::lift(4, 1, oracle::pauli_z()), want);
    CHECK(max_abs_diff(got, want) < kExact);
  }
}

TEST_CASE("apply_unitary rejects bad targets") {
  const StateVector s(3);
  CHECK_THROWS_AS(apply_unitary(s, hadamard(), {3}), std::invalid_argument);
  CHECK_THROWS_AS(apply_unitary(s, kron(hadamard(), hadamard()), {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(apply_unitary(s, hadamard(), {0, 1}), std::invalid_argument);
}

TEST_CASE("norm preservation and hadamard involution") {
  cqkd::RandomStream rng(6, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    const int q = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const StateVector s = testing::random_state(n, rng);
    const StateVector once = apply_unitary(s, hadamard(), {q});
    CHECK(std::abs(once.norm() - 1.0) < kExact);
    CHECK(equal_amplitudes(apply_unitary(once, hadamard(), {q}), s, kExact));
  }
}

TEST_CASE("state construction validates input") {
  CHECK_THROWS_AS(StateVector(2, {1.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(StateVector(1, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(StateVector(1, {std::nan(""), 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(StateVector(0), std::invalid_argument);
}

TEST_CASE("global phase handling") {
  const StateVector a = bell(BellOutcome::PsiMinus);
  const StateVector b = apply_unitary(a, kron(hadamard(), hadamard()), {0, 1});
  CHECK(equal_up_to_phase(a, b));
  CHECK_FALSE(equal_amplitudes(a, b));
}

TEST_CASE("z measurement laws") {
  const StateVector c = cluster4();
  CHECK(probability_one(c, 0) == doctest::Approx(0.5));

  const ZMeasurement zero = measure_z(StateVector(1), 0, 0.999);
  CHECK(zero.bit == 0);

  // Collapsing qubits 1 and 4 to 00 leaves qubits 2,3 in phi+.
  ZMeasurement m1 = measure_z(c, 0, 0.1);
  ZMeasurement m4 = measure_z(m1.post, 3, 0.1);
  REQUIRE(m1.bit == 0);
  REQUIRE(m4.bit == 0);
  const DensityMatrix rho23 = partial_trace(m4.post, {1, 2});
  CHECK(std::abs(rho23(0, 0) - 0.5) < kExact);
  CHECK(std::abs(rho23(0, 3) - 0.5) < kExact);
  CHECK(std::abs(rho23(3, 3) - 0.5) < kExact);

  // Every sequential outcome pattern of the cluster state lies on its support.
  std::map<int, double> seen;
  for (int pattern = 0; pattern < 16; ++pattern) {
    StateVector s = c;
    double p = 1.0;
    bool possible = true;
    for (int q = 0; q < 4 && possible; ++q) {
      const int want = pattern >> (3 - q) & 1;
      const double p1 = probability_one(s, q);
      const double pw = want ? p1 : 1.0 - p1;
      if (pw < 1e-12) {
        possible = false;
        break;
      }
      p *= pw;
      s = measure_z(s, q, want ? 0.999999 : 0.0).post;
    }
    if (possible) seen[pattern] = p;
  }
  CHECK(seen.size() == 4);
  for (int pattern : {0b0000, 0b0110, 0b1001, 0b1111}) CHECK(seen[pattern] == doctest::Approx(0.25));
}

TEST_CASE("z measurement completeness and idempotence") {
  cqkd::RandomStream rng(7, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const StateVector s = testing::random_state(3, rng);
    const int q = static_cast<int>(rng.below(3));
    const double p1 = probability_one(s, q);
    CHECK(p1 >= 0.0);
    CHECK(p1 <= 1.0);
    const ZMeasurement m = measure_z(s, q, rng.uniform());
    CHECK(std::abs(m.post.norm() - 1.0) < kExact);
    const ZMeasurement again = measure_z(m.post, q, rng.uniform());
    CHECK(again.bit == m.bit);
    CHECK(equal_amplitudes(again.post, m.post, kExact));
  }
}

TEST_CASE("bell measurement laws") {
  CHECK(measure_bell(bell(BellOutcome::PhiPlus), 0, 1, 0.7).outcome == BellOutcome::PhiPlus);

  const auto p00 = bell_probabilities(StateVector(2), 0, 1);
  CHECK(p00[0] == doctest::Approx(0.5));
  CHECK(p00[1] == doctest::Approx(0.5));
  CHECK(p00[2] == doctest::Approx(0.0));

  StateVector s = apply_unitary(cluster4(), kron(hadamard(), hadamard()), {0, 1});
  const auto probs = bell_probabilities(s, 2, 3);
  for (double p : probs) CHECK(p == doctest::Approx(0.25));

  cqkd::RandomStream rng(8, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const StateVector r = testing::random_state(4, rng);
    const auto pr = bell_probabilities(r, 3, 1);
    CHECK(std::abs(pr[0] + pr[1] + pr[2] + pr[3] - 1.0) < kExact);
    const BellMeasurement m = measure_bell(r, 3, 1, rng.uniform());
    CHECK(std::abs(m.post.norm() - 1.0) < kExact);
    const auto post = bell_probabilities(m.post, 3, 1);
    CHECK(post[static_cast<int>(m.outcome)] == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(measure_bell(s, 2, 2, 0.5), std::invalid_argument);
}

TEST_CASE("partial trace") {
  const DensityMatrix half = partial_trace(bell(BellOutcome::PhiPlus), {0});
  CHECK(std::abs(half(0, 0) - 0.5) < kExact);
  CHECK(std::abs(half(0, 1)) < kExact);

  const DensityMatrix q1 = partial_trace(cluster4(), {0});
  CHECK(std::abs(q1(0, 0) - 0.5) < kExact);
  CHECK(std::abs(q1(1, 1) - 0.5) < kExact);
  CHECK(std::abs(q1(0, 1)) < kExact);

  cqkd::RandomStream rng(9, 0);
  const StateVector s = testing::random_state(3, rng);
  const DensityMatrix all = partial_trace(s, {0, 1, 2});
  const DensityMatrix pure = DensityMatrix::pure(s);
  CHECK((all.matrix() - pure.matrix()).cwiseAbs().maxCoeff() < kExact);

  CHECK_THROWS_AS(partial_trace(s, {}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(s, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(s, {5}), std::invalid_argument);
}

TEST_CASE("shannon and binary entropy") {
  CHECK(shannon_entropy({0.5, 0.5}) == doctest::Approx(1.0));
  CHECK(shannon_entropy({1.0, 0.0, 0.0, 0.0}) == doctest::Approx(0.0));
  CHECK(shannon_entropy({0.25, 0.25, 0.25, 0.25}) == doctest::Approx(2.0));
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.11) == doctest::Approx(oracle::h2(0.11)).epsilon(1e-12));
  CHECK(std::abs(binary_entropy(0.11) - 0.49992) < 1e-4);
  CHECK_THROWS_AS(shannon_entropy({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(shannon_entropy({1.5, -0.5}), std::invalid_argument);
  CHECK_THROWS_AS(binary_entropy(1.2), std::invalid_argument);

  cqkd::RandomStream rng(10, 0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> p(2 + rng.below(6));
    double sum = 0.0;
    for (double& x : p) sum += x = rng.uniform();
    for (double& x : p) x /= sum;
    const double h = shannon_entropy(p);
    CHECK(h >= 0.0);
    CHECK(h <= std::log2(static_cast<double>(p.size())) + kExact);
    CHECK(h == doctest::Approx(oracle::entropy(p)).epsilon(1e-12));
  }
}

TEST_CASE("von neumann entropy") {
  CHECK(von_neumann_entropy(DensityMatrix(diag2(0.5, 0.5))) == doctest::Approx(1.0));
  CHECK(von_neumann_entropy(DensityMatrix(diag2(0.75, 0.25))) == doctest::Approx(0.81128).epsilon(1e-5));
  CHECK(std::abs(von_neumann_entropy(DensityMatrix::pure(cluster4()))) < kExact);

  cqkd::RandomStream rng(12, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const StateVector s = testing::random_state(4, rng);
    const DensityMatrix rho = partial_trace(s, {0, 2});
    const double S = von_neumann_entropy(rho);
    CHECK(S >= -kExact);
    CHECK(S <= 2.0 + kExact);
    // Entropies of complementary subsystems of a pure state agree.
    CHECK(S == doctest::Approx(von_neumann_entropy(partial_trace(s, {1, 3}))).epsilon(1e-9));
  }
}

TEST_CASE("density matrix validation") {
  CHECK_THROWS_AS(DensityMatrix(diag2(0.6, 0.6)), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(diag2(1.5, -0.5)), std::invalid_argument);
  ComplexMatrix m = diag2(0.5, 0.5);
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{m}, std::invalid_argument);
}

TEST_CASE("unitary validation and kron") {
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 1) = 0.5;
  CHECK_THROWS_AS(UnitaryMatrix{bad}, std::invalid_argument);
  const UnitaryMatrix hx = kron(hadamard(), pauli_x());
  const oracle::Mat want = oracle::kron(oracle::hadamard(), oracle::pauli_x());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(hx(i, j) - want[i][j]) < kExact);
}

TEST_CASE("trace distance") {
  const DensityMatrix zero = DensityMatrix::pure(StateVector::basis(1, 0));
  const DensityMatrix one = DensityMatrix::pure(StateVector::basis(1, 1));
  const DensityMatrix plus = DensityMatrix::pure(apply_unitary(StateVector(1), hadamard(), {0}));
  CHECK(trace_distance(zero, zero) == doctest::Approx(0.0));
  CHECK(trace_distance(zero, one) == doctest::Approx(1.0));
  CHECK(trace_distance(zero, plus) == doctest::Approx(1.0 / std::numbers::sqrt2));

  cqkd::RandomStream rng(13, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const StateVector a = testing::random_state(2, rng);
    const StateVector b = testing::random_state(2, rng);
    // For pure states D = sqrt(1 - |<a|b>|^2).
    const double want = std::sqrt(std::max(0.0, 1.0 - std::norm(inner_product(a, b))));
    CHECK(trace_distance(DensityMatrix::pure(a), DensityMatrix::pure(b)) ==
          doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("closed-form 2x2 eigenvalues agree with the dense solver") {
  cqkd::RandomStream rng(14, 0);
  for (int trial = 0; trial < 100; ++trial) {
    ComplexMatrix m(2, 2);
    m(0, 0) = rng.normal();
    m(1, 1) = rng.normal();
    m(0, 1) = {rng.normal(), rng.normal()};
    m(1, 0) = std::conj(m(0, 1));
    const auto [hi, lo] = hermitian_eigenvalues_2x2(m);
    const Eigen::VectorXd dense = hermitian_eigenvalues(m);
    CHECK(std::abs(hi - dense.maxCoeff()) < kExact);
    CHECK(std::abs(lo - dense.minCoeff()) < kExact);
  }
}

TEST_CASE("bell outcome names round trip") {
  for (BellOutcome k : kBellOutcomes) CHECK(bell_outcome_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(bell_outcome_from_string("Phi"), std::invalid_argument);
}
