#ifndef SICPROP_PATH_INTEGRAL_HPP
#define SICPROP_PATH_INTEGRAL_HPP

#include <functional>

#include "sicprop/core.hpp"
#include "sicprop/green_calculus.hpp"

namespace sicprop {

struct LatticeConfig {
  int N;          // time slices
  double x_min;
  double x_max;
  int points;     // P, periodic grid (x_max excluded)

  LatticeConfig(int slices, double lo, double hi, int P)
      : N(slices), x_min(lo), x_max(hi), points(P) {
    if (N < 1) throw contract_violation("LatticeConfig: N >= 1");
    if (P < 64) throw contract_violation("LatticeConfig: P >= 64");
    if (hi <= lo) throw contract_violation("LatticeConfig: empty domain");
  }
  double dx() const { return (x_max - x_min) / points; }
  RealVector grid() const;
};

// N alternating steps of the exact free kernel over a*eps (as a dense grid
// matrix) and the diagonal potential phase exp(-i a V(x) eps / hbar).
// The returned matrix is the discrete operator: psi' = K psi; the kernel
// estimate on the grid is K / dx.
struct TrotterKernel {
  RealVector grid;
  double dx;
  Matrix K;

  Vector apply(const Vector& psi) const { return K * psi; }
  double unitarity() const { return unitarity_defect(K); }
};

TrotterKernel trotter_green(const std::function<double(double)>& V,
                            const SicInterval& interval,
                            const LatticeConfig& cfg,
                            const PhysicalParams& params);

// Exact free evolution over effective time tau on the periodic grid
// (momentum-diagonal construction; unitary to machine precision at any tau).
Matrix free_step_matrix(const LatticeConfig& cfg, const PhysicalParams& params,
                        double tau);

// Samples a continuum kernel G(x_b; x_a) into the discrete-operator
// convention (multiplied by dx).
Matrix sample_kernel(const LatticeConfig& cfg,
                     const std::function<Complex(double, double)>& G);

// Checks that a packet is representable on the grid: tails below 1e-12 at
// the edges and momentum content within the Nyquist band.
void require_packet_resolved(const LatticeConfig& cfg,
                             const GaussianPacket& packet,
                             const PhysicalParams& params);

// Weighted L2 distance of two grid functions (weight dx).
double grid_distance(const LatticeConfig& cfg, const Vector& f,
                     const Vector& g);

Vector sample_packet(const LatticeConfig& cfg, const GaussianPacket& packet);

// Piecewise-Hermitian time-dependent Hamiltonian on a finite space.
struct PiecewiseHamiltonian {
  std::function<Matrix(double)> H_of_t;
  double t0 = 0.0;
  double T_m = 0.0;
};

// Ordered product of exp(-(i/hbar) a H(t_j) (T_m/N)).
// def437 samples at t_j = t0 + (j - 1/2) a T_m / N (sign-dependent schedule,
// global time-evolution-reversal symmetry); def440 samples at
// t_j = t0 + (j - 1/2) T_m / N (sign-independent, per-slice reversal only).
enum class TimedepVariant { def437, def440 };
Matrix timedep_sic_propagator(const PiecewiseHamiltonian& H, LogicalSign sign,
                              TimedepVariant variant, int N,
                              double hbar = 1.0);

// Frobenius defect of U_plus - U_minus^dagger; callers pass whole products
// (global check) or single slices (local check).
double reversal_symmetry_check(const Matrix& U_plus, const Matrix& U_minus);

// Max per-slice defect of U_j(+1) = U_j(-1)^+ for the def440 schedule.
double local_reversal_defect(const PiecewiseHamiltonian& H, int N,
                             double hbar = 1.0);

} // namespace sicprop

#endif
