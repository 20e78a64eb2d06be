#ifndef SICPROP_OSCILLATOR_BASIS_HPP
#define SICPROP_OSCILLATOR_BASIS_HPP

#include <functional>
#include <memory>

#include "sicprop/core.hpp"

namespace sicprop {

// hbar = 1 by default; kept explicit so dimensional formulas evaluate
// verbatim.
struct PhysicalParams {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;

  PhysicalParams() = default;
  PhysicalParams(double m, double w, double hb) : mass(m), omega(w), hbar(hb) {
    if (m <= 0 || w <= 0 || hb <= 0)
      throw contract_violation("PhysicalParams: all parameters must be > 0");
  }
  double alpha_sq() const { return mass * omega / hbar; }
  double alpha() const { return std::sqrt(alpha_sq()); }
};

// 1-D eigensystem with evaluable eigenfunctions.  Harmonic: E_k =
// (k+1/2) hbar omega with Hermite-Gaussian eigenfunctions.  Square well on
// [x_min, x_min+width]: E_k = (k+1)^2 pi^2 hbar^2 / (2 m width^2) with sine
// eigenfunctions (k = 0,1,... maps to the quantum number n = k+1).
class EigenSystem {
 public:
  enum class Kind { harmonic, square_well };

  static EigenSystem harmonic(const PhysicalParams& params,
                              int stability_cap = 500);
  static EigenSystem square_well(const PhysicalParams& params, double x_min,
                                 double width);

  Kind kind() const { return kind_; }
  const PhysicalParams& params() const { return params_; }
  double eigenvalue(int k) const;
  double eigenfunction(int k, double x) const;
  // Evaluates u_0..u_{kmax} at x in one recurrence pass.
  void eigenfunctions_upto(int kmax, double x, double* out) const;

  // Quadrature window covering the first L eigenfunctions and smooth
  // packets to below 1e-16 tails.
  double window_min(int L) const;
  double window_max(int L) const;
  int stability_cap() const { return cap_; }

  double well_x_min() const { return x_min_; }
  double well_width() const { return width_; }

 private:
  Kind kind_;
  PhysicalParams params_;
  double x_min_ = 0.0, width_ = 0.0;
  int cap_ = 500;
};

// Coefficient vector B_k of a state in an eigenbasis, with residual-norm
// accessors.
struct ExpansionState {
  std::shared_ptr<const EigenSystem> basis;
  Vector coeffs;

  int L_max() const { return static_cast<int>(coeffs.size()); }
  // NRES(L) = sqrt(sum_{k>=L} |B_k|^2), non-increasing in L.
  double residual_norm(int L) const;
  // Reconstruction sum_{k<L} B_k u_k(x).
  Complex evaluate(double x, int L = -1) const;
};

// B_k = integral of u_k(x) psi(x) dx by composite Gauss-Legendre; refuses
// (accuracy_error) when refinement disagrees beyond 1e-8.
ExpansionState expand_state(const std::function<Complex(double)>& psi,
                            std::shared_ptr<const EigenSystem> basis, int L);

double residual_norm(const ExpansionState& state, int L);

// Multiplies B_k by exp(-i a E_k t / hbar).
ExpansionState eigensum_evolution(const ExpansionState& state,
                                  LogicalSign sign, double t);

// Displaced ground state: |B_k|^2 Poisson with mean beta^2 (real beta).
std::function<Complex(double)> coherent_displacement_packet(
    const PhysicalParams& params, double beta);

// Normalized Gaussian with center x0, width w (position spread), momentum p0.
std::function<Complex(double)> gaussian_packet_function(double x0, double p0,
                                                        double w,
                                                        double hbar = 1.0);

// Fock-space matrices on an n-level truncation (harmonic ladder).
Matrix fock_position(int n, const PhysicalParams& params);
Matrix fock_momentum(int n, const PhysicalParams& params);
Matrix fock_number_hamiltonian(int n, const PhysicalParams& params);

} // namespace sicprop

#endif
