#ifndef SICPROP_PERTURBATION_HPP
#define SICPROP_PERTURBATION_HPP

#include <functional>

#include "sicprop/core.hpp"
#include "sicprop/path_integral.hpp"

namespace sicprop {

// H = H0 + lambda H1; both Hermitian on the same finite space.
struct HamiltonianSplit {
  Matrix H0;
  Matrix H1;
  double lambda = 1.0;
  double hbar = 1.0;

  HamiltonianSplit(Matrix h0, Matrix h1, double lam, double hb = 1.0);
  long dim() const { return H0.rows(); }
};

// Interaction-picture Hamiltonian U0+(t) H1 U0(t); reduces to H1 at t = 0.
Matrix interaction_hamiltonian(const HamiltonianSplit& split, LogicalSign sign,
                               double t);

// Order-n iterate of
//   U(t) = U0(t) + (1/i hbar) int_0^t U0(t-t') (a lambda H1) U(t') dt'
// with U^(0) = U0; nested composite Gauss-Legendre time integrals,
// quad_points nodes per level.
Matrix dyson_iterate(const HamiltonianSplit& split, LogicalSign sign, double t,
                     int order, int quad_points = 32);

// Lattice realization of the Green-function form: the background kernel is
// supplied as a discrete-operator generator tau -> K(tau) on the grid
// (psi' = K psi convention), H1 is a multiplicative potential.
// Returns the discrete operator of the order-n kernel over the interval.
Matrix green_perturbation_step(
    const std::function<Matrix(double)>& background_step,
    const std::function<double(double)>& H1_of_x, const SicInterval& interval,
    const LatticeConfig& cfg, int order, double lambda, double hbar = 1.0,
    int quad_points = 16);

} // namespace sicprop

#endif
