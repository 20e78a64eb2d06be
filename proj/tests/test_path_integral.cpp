#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sicprop/path_integral.hpp"

using namespace sicprop;

namespace {
const PhysicalParams kDefault{};
const LatticeConfig kGrid{1, -10.0, 10.0, 320};

double packet_error_vs(const TrotterKernel& lattice,
                       const std::function<Complex(double, double)>& exact,
                       const GaussianPacket& psi) {
  LatticeConfig cfg(1, lattice.grid(0), lattice.grid(0) +
                        lattice.dx * lattice.grid.size(),
                    static_cast<int>(lattice.grid.size()));
  const Vector sampled = sample_packet(cfg, psi);
  const Vector coarse = lattice.apply(sampled);
  const Vector reference = sample_kernel(cfg, exact) * sampled;
  return grid_distance(cfg, coarse, reference);
}
} // namespace

TEST_CASE("free-step matrix is unitary and composes as a semigroup") {
  const Matrix k1 = free_step_matrix(kGrid, kDefault, 0.2);
  CHECK(unitarity_defect(k1) < 1e-10);
  const Matrix k2 = free_step_matrix(kGrid, kDefault, 0.35);
  const Matrix k3 = free_step_matrix(kGrid, kDefault, 0.55);
  CHECK((k1 * k2 - k3).norm() < 1e-10);
}

TEST_CASE("V = 0 lattice kernel matches the free kernel at packet level") {
  const GaussianPacket psi(0.4, 0.8, 0.5);
  require_packet_resolved(kGrid, psi, kDefault);
  for (int N : {1, 4, 16}) {
    LatticeConfig cfg(N, -10.0, 10.0, 320);
    const SicInterval t(0.5, LogicalSign(+1));
    const auto lattice =
        trotter_green([](double) { return 0.0; }, t, cfg, kDefault);
    CHECK(lattice.unitarity() < 1e-6);
    const double err = packet_error_vs(
        lattice,
        [&](double xb, double xa) { return free_green(xa, xb, t, kDefault); },
        psi);
    CHECK(err < 1e-6);
  }
}

TEST_CASE("N = 1 is a single split step by construction") {
  LatticeConfig cfg(1, -8.0, 8.0, 128);
  const SicInterval t(0.3, LogicalSign(-1));
  auto V = [](double x) { return 0.5 * x * x; };
  const auto lattice = trotter_green(V, t, cfg, kDefault);
  const Matrix kin = free_step_matrix(cfg, kDefault, t.effective());
  Vector vphase(cfg.points);
  const RealVector x = cfg.grid();
  for (int i = 0; i < cfg.points; ++i)
    vphase(i) = std::exp(-I_UNIT * double(t.sign) * V(x(i)) * t.T_m);
  const Matrix direct = kin * vphase.asDiagonal();
  CHECK((lattice.K - direct).norm() < 1e-12);
}

TEST_CASE("harmonic Trotter error shows first-order convergence") {
  const GaussianPacket psi(0.6, 0.8, 0.3);
  const SicInterval t(0.5, LogicalSign(+1));
  auto V = [](double x) { return 0.5 * x * x; };
  auto exact = [&](double xb, double xa) {
    return harmonic_green(xa, xb, t, kDefault);
  };
  std::vector<double> errs;
  std::vector<int> ns = {8, 16, 32, 64, 128};
  for (int N : ns) {
    LatticeConfig cfg(N, -10.0, 10.0, 320);
    errs.push_back(packet_error_vs(trotter_green(V, t, cfg, kDefault), exact,
                                   psi));
  }
  // halving per doubling
  for (size_t i = 1; i < errs.size(); ++i) {
    const double ratio = errs[i - 1] / errs[i];
    CHECK(ratio > 1.6);
    CHECK(ratio < 2.6);
  }
  // least-squares slope on log2-log2
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < ns.size(); ++i) {
    const double lx = std::log2(double(ns[i])), ly = std::log2(errs[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = double(ns.size());
  const double slope = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope > 0.8);
  CHECK(slope < 1.2);
}

TEST_CASE("packet resolution guard") {
  // too wide: tails hit the edge
  CHECK_THROWS_AS(
      require_packet_resolved(kGrid, GaussianPacket(8.5, 1.0, 0.0), kDefault),
      resolution_error);
  // too much momentum for the band
  LatticeConfig coarse(1, -10.0, 10.0, 64);
  CHECK_THROWS_AS(
      require_packet_resolved(coarse, GaussianPacket(0.0, 0.05, 0.0), kDefault),
      resolution_error);
}

namespace {
PiecewiseHamiltonian ramped_drive(int dim, double T) {
  PhysicalParams params;
  const Matrix h0 = fock_number_hamiltonian(dim, params);
  const Matrix x = fock_position(dim, params);
  PiecewiseHamiltonian h;
  h.t0 = 0.0;
  h.T_m = T;
  h.H_of_t = [h0, x, T](double t) { return Matrix(h0 + (2.0 * t / T) * x); };
  return h;
}
} // namespace

TEST_CASE("time-dependent definitions: constant H collapses both variants") {
  PhysicalParams params;
  const Matrix h0 = fock_number_hamiltonian(12, params);
  PiecewiseHamiltonian h;
  h.t0 = 0.4;
  h.T_m = 0.9;
  h.H_of_t = [h0](double) { return h0; };
  const Matrix direct = mat_exp(h0, -I_UNIT * 0.9);
  for (auto variant : {TimedepVariant::def437, TimedepVariant::def440}) {
    for (int N : {1, 7}) {
      const Matrix u = timedep_sic_propagator(h, LogicalSign(+1), variant, N);
      CHECK((u - direct).norm() < 1e-10);
    }
  }
}

TEST_CASE("def437 keeps the global reversal for a ramped drive") {
  const auto h = ramped_drive(16, 1.0);
  const int N = 24;
  const Matrix up =
      timedep_sic_propagator(h, LogicalSign(+1), TimedepVariant::def437, N);
  PiecewiseHamiltonian rev = h;
  rev.t0 = h.t0 + h.T_m; // the -1 propagator runs from the far end
  const Matrix um =
      timedep_sic_propagator(rev, LogicalSign(-1), TimedepVariant::def437, N);
  CHECK(reversal_symmetry_check(up, um) < 1e-10);
}

TEST_CASE("def440 has local but not global reversal for a ramped drive") {
  const auto h = ramped_drive(16, 1.0);
  const int N = 24;
  CHECK(local_reversal_defect(h, N) < 1e-10);
  const Matrix up =
      timedep_sic_propagator(h, LogicalSign(+1), TimedepVariant::def440, N);
  const Matrix um =
      timedep_sic_propagator(h, LogicalSign(-1), TimedepVariant::def440, N);
  CHECK(reversal_symmetry_check(up, um) > 1e-3);
}
