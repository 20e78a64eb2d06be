#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sicprop/dual_oracle.hpp"

using namespace sicprop;

TEST_CASE("oracle_diagonal is the rank-1 projector |T><T|") {
  // n=1, S=0 -> diag(1, 0)
  OracleSpec spec(1, 0, 0, 0.4);
  const Matrix d = oracle_diagonal(spec, OracleTarget::candidate);
  CHECK(std::abs(d(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(d(1, 1)) < 1e-15);

  // random spec: D^2 = D, trace 1
  OracleSpec s2(3, 5, 2, 1.1);
  const Matrix p = oracle_diagonal(s2, OracleTarget::solution);
  CHECK((p * p - p).norm() < 1e-13);
  CHECK(std::abs(p.trace() - 1.0) < 1e-13);
  CHECK(std::abs(p(5, 5) - 1.0) < 1e-13);
}

TEST_CASE("theta = 0 gives the identity oracle") {
  OracleSpec spec(2, 1, 3, 0.0);
  const Matrix c = oracle_phase_operator(spec, OracleTarget::candidate);
  CHECK((c - identity_op(4)).norm() < 1e-13);
}

TEST_CASE("apply_oracle: pure phase on basis state, norms preserved") {
  OracleSpec spec(2, 2, 1, PI);
  auto pair = DualAmplitudePair::shared_initial(basis_state(4, 2));
  auto out = apply_oracle(pair, spec);
  CHECK(std::abs(out.physical(2) + 1.0) < 1e-15); // -e_{x0}
  CHECK(std::abs(out.physical.norm() - 1.0) < 1e-12);
  CHECK(std::abs(out.math.norm() - 1.0) < 1e-12);
}

TEST_CASE("apply_oracle agrees with the exponential operator form") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  OracleSpec spec(3, 6, 1, 0.77);
  Vector psi(8);
  for (int i = 0; i < 8; ++i) psi(i) = Complex(g(rng), g(rng));
  psi.normalize();
  auto out = apply_oracle(DualAmplitudePair::shared_initial(psi), spec);
  const Vector brute =
      oracle_phase_operator(spec, OracleTarget::solution) * psi;
  CHECK((out.physical - brute).norm() < 1e-13);
  const Vector brute_math =
      oracle_phase_operator(spec, OracleTarget::candidate) * psi;
  CHECK((out.math - brute_math).norm() < 1e-13);
}

TEST_CASE("S = x0 keeps physical and math identical") {
  OracleSpec spec(2, 3, 3, 0.9);
  auto out = apply_oracle(DualAmplitudePair::uniform(2), spec);
  CHECK((out.physical - out.math).norm() < 1e-15);
  CHECK(std::abs(overlap_integral(out) - 1.0) < 1e-14);
}

TEST_CASE("uniform N=4, theta=pi: overlap vanishes") {
  OracleSpec spec(2, 0, 3, PI);
  auto pair = DualAmplitudePair::uniform(2);
  auto out = apply_oracle(pair, spec);
  CHECK(std::abs(overlap_integral(out)) < 1e-15);
  CHECK(std::abs(closed_form_overlap(spec, pair.physical)) < 1e-15);
}

TEST_CASE("closed form: vanishing coefficients give overlap 1") {
  OracleSpec spec(2, 0, 3, 1.3);
  Vector psi = Vector::Zero(4);
  psi(1) = std::sqrt(0.5);
  psi(2) = std::sqrt(0.5);
  CHECK(std::abs(closed_form_overlap(spec, psi) - 1.0) < 1e-15);
  auto out = apply_oracle(DualAmplitudePair::shared_initial(psi), spec);
  CHECK(std::abs(overlap_integral(out) - 1.0) < 1e-15);
}

TEST_CASE("randomized overlap matches the closed form; oracles commute") {
  std::mt19937_64 rng(2026);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> th(-PI, PI);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const long dim = 1L << n;
    long x0 = static_cast<long>(rng() % dim);
    long s = static_cast<long>(rng() % dim);
    if (dim > 1 && s == x0) s = (s + 1) % dim;
    OracleSpec spec(n, x0, s, th(rng));
    Vector psi(dim);
    for (long i = 0; i < dim; ++i) psi(i) = Complex(g(rng), g(rng));
    psi.normalize();
    auto pair = DualAmplitudePair::shared_initial(psi);
    auto out = apply_oracle(pair, spec);
    CHECK(std::abs(overlap_integral(out) - closed_form_overlap(spec, psi)) <
          1e-12);
  }

  // order permutation of two commuting oracles
  OracleSpec a(3, 1, 6, 0.4), b(3, 1, 2, -1.2);
  Vector psi(8);
  for (int i = 0; i < 8; ++i) psi(i) = Complex(g(rng), g(rng));
  psi.normalize();
  auto ab = apply_oracle(apply_oracle(DualAmplitudePair::shared_initial(psi), a), b);
  auto ba = apply_oracle(apply_oracle(DualAmplitudePair::shared_initial(psi), b), a);
  CHECK((ab.physical - ba.physical).norm() < 1e-12);
  CHECK((ab.math - ba.math).norm() < 1e-12);
}
