#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sicprop/perturbation.hpp"

using namespace sicprop;

namespace {
const PhysicalParams kDefault{};

HamiltonianSplit harmonic_plus_x(int dim, double lambda) {
  return HamiltonianSplit(fock_number_hamiltonian(dim, kDefault),
                          fock_position(dim, kDefault), lambda);
}
} // namespace

TEST_CASE("interaction Hamiltonian: t = 0, commuting split, Hermiticity") {
  const auto split = harmonic_plus_x(20, 0.1);
  const Matrix h_i0 = interaction_hamiltonian(split, LogicalSign(+1), 0.0);
  CHECK((h_i0 - split.H1).norm() < 1e-12);

  // commuting H1: conjugation is inert
  HamiltonianSplit commuting(fock_number_hamiltonian(16, kDefault),
                             fock_number_hamiltonian(16, kDefault) * 0.3, 1.0);
  const Matrix h_ic = interaction_hamiltonian(commuting, LogicalSign(-1), 0.9);
  CHECK((h_ic - commuting.H1).norm() < 1e-11);

  for (double t : {0.21, 1.7}) {
    const Matrix h_i = interaction_hamiltonian(split, LogicalSign(+1), t);
    CHECK(hermiticity_defect(h_i) < 1e-12);
  }
}

TEST_CASE("dyson: order 0 and vanishing perturbation return U0") {
  const int dim = 24;
  const auto split = harmonic_plus_x(dim, 0.0);
  const Matrix u0 =
      mat_exp(fock_number_hamiltonian(dim, kDefault), -I_UNIT * 0.5);
  const Matrix n0 = dyson_iterate(split, LogicalSign(+1), 0.5, 0);
  CHECK((n0 - u0).norm() < 1e-12);
  const Matrix n2 = dyson_iterate(split, LogicalSign(+1), 0.5, 2, 16);
  CHECK((n2 - u0).norm() < 1e-12);
}

TEST_CASE("dyson error scales as lambda^(n+1); unitarity defect follows") {
  const int dim = 40;
  const double t = 0.5;
  const LogicalSign a(+1);
  auto exact = [&](double lambda) {
    return mat_exp(Matrix(fock_number_hamiltonian(dim, kDefault) +
                          lambda * fock_position(dim, kDefault)),
                   -I_UNIT * double(a.value) * t);
  };
  for (int order : {1, 2}) {
    std::vector<double> errs, udefs;
    for (double lambda : {0.1, 0.05}) {
      const auto split = harmonic_plus_x(dim, lambda);
      const Matrix approx = dyson_iterate(split, a, t, order);
      errs.push_back((exact(lambda) - approx).norm());
      udefs.push_back(unitarity_defect(approx));
    }
    const double want = std::pow(2.0, order + 1);
    CHECK(errs[0] / errs[1] > want - (order == 1 ? 0.5 : 1.5));
    CHECK(errs[0] / errs[1] < want + (order == 1 ? 0.5 : 1.5));
    // unitarity is violated at O(lambda^(n+1)) or better (the order-2
    // leading term cancels anti-Hermitically and falls like lambda^4)
    CHECK(udefs[0] / udefs[1] > want - 1.5);
  }
}

TEST_CASE("commuting split: partial sums track the scalar exponential tail") {
  // H0 diagonal, H1 = 0.4 H0: U(t) = exp(-i(1+0.4 lambda) H0 t) and the
  // iterates reproduce the scalar series in (lambda H1 t).
  const int dim = 8;
  const Matrix h0 = fock_number_hamiltonian(dim, kDefault);
  HamiltonianSplit split(h0, 0.4 * h0, 0.3);
  const LogicalSign a(+1);
  const double t = 0.7;
  const Matrix exact = mat_exp(Matrix(h0 + 0.3 * 0.4 * h0), -I_UNIT * t);
  double prev = 1e9;
  for (int order : {0, 1, 2, 3}) {
    const double err = (dyson_iterate(split, a, t, order, 24) - exact).norm();
    CHECK(err < prev);
    prev = err;
    // scalar truncation bound: sum_k |e H0 t|^{order+1}/(order+1)! per mode
    double bound = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double z = 0.12 * (k + 0.5) * t;
      double term = 1.0;
      for (int j = 1; j <= order + 1; ++j) term *= z / j;
      bound += term * term * std::exp(2.0 * z);
    }
    CHECK(err <= std::sqrt(bound) + 1e-12);
  }
}

TEST_CASE("green perturbation: zero H1 returns the background kernel") {
  LatticeConfig cfg(1, -8.0, 8.0, 128);
  const SicInterval t(0.4, LogicalSign(+1));
  auto background = [&](double tau) {
    return free_step_matrix(cfg, kDefault, double(t.sign) * tau);
  };
  const Matrix g = green_perturbation_step(
      background, [](double) { return 0.0; }, t, cfg, 2, 0.7);
  CHECK((g - background(0.4)).norm() < 1e-12);
}

TEST_CASE("green perturbation: free + lambda V_harmonic tends to harmonic") {
  LatticeConfig cfg(1, -8.0, 8.0, 160);
  const double T = 0.4;
  const SicInterval t(T, LogicalSign(+1));
  const GaussianPacket psi(0.2, 0.7, 0.4);
  const Vector sampled = sample_packet(cfg, psi);
  auto vharm = [](double x) { return 0.5 * x * x; };
  auto background = [&](double tau) {
    return free_step_matrix(cfg, kDefault, double(t.sign) * tau);
  };

  std::vector<double> errs;
  for (double lambda : {0.2, 0.1}) {
    const Matrix g1 =
        green_perturbation_step(background, vharm, t, cfg, 1, lambda);
    // reference: propagator of p^2/2m + lambda m w^2 x^2/2, an oscillator
    // with omega' = sqrt(lambda) w
    PhysicalParams scaled(1.0, std::sqrt(lambda), 1.0);
    const Matrix exact = sample_kernel(cfg, [&](double xb, double xa) {
      return harmonic_green(xa, xb, t, scaled);
    });
    errs.push_back(grid_distance(cfg, g1 * sampled, exact * sampled));
  }
  const double ratio = errs[0] / errs[1];
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);

  // sign flip gives the conjugate-transposed kernel order by order
  const SicInterval tm(T, LogicalSign(-1));
  auto background_m = [&](double tau) {
    return free_step_matrix(cfg, kDefault, double(tm.sign) * tau);
  };
  const Matrix gp =
      green_perturbation_step(background, vharm, t, cfg, 1, 0.2);
  const Matrix gm =
      green_perturbation_step(background_m, vharm, tm, cfg, 1, 0.2);
  CHECK((gm - gp.adjoint()).norm() < 1e-10);
}
