#ifndef SICPROP_GREEN_CALCULUS_HPP
#define SICPROP_GREEN_CALCULUS_HPP

#include <functional>

#include "sicprop/core.hpp"
#include "sicprop/oscillator_basis.hpp"

namespace sicprop {

// Time interval with its logical sign; kernels depend only on the effective
// time a T_m (the t_b - t_a value).
struct SicInterval {
  double T_m;
  LogicalSign sign;

  SicInterval(double duration, LogicalSign a) : T_m(duration), sign(a) {
    if (duration < 0)
      throw contract_violation("SicInterval: duration must be >= 0");
  }
  double effective() const { return sign.value * T_m; }
};

// Kernel of a propagator generated by a multiplicative potential:
// exp(-i a V(x) T/hbar) delta(x_b - x_a).  The delta stays symbolic; applying
// the kernel multiplies a sampled wavefunction pointwise.
struct PotentialPhaseKernel {
  std::function<double(double)> phase; // x -> -a V(x) T / hbar
  bool delta_marker = true;

  Complex factor(double x) const { return std::exp(I_UNIT * phase(x)); }
  void apply_inplace(const RealVector& grid, Vector& psi) const {
    for (long i = 0; i < grid.size(); ++i) psi(i) *= factor(grid(i));
  }
};

PotentialPhaseKernel potential_phase_green(
    const std::function<double(double)>& V, const SicInterval& interval,
    double hbar = 1.0);

// sqrt(m / (i 2 pi hbar aT)) exp(i m (x_b - x_a)^2 / (2 hbar aT)).
Complex free_green(double xa, double xb, const SicInterval& interval,
                   const PhysicalParams& params);

// Truncated series and closed form of
// sum_k H_k(x) H_k(y) s^k / (2^k k!) = (1-s^2)^{-1/2}
//   exp(-(s^2 (x^2+y^2) - 2 s x y)/(1-s^2)).
struct MehlerValues {
  Complex series;
  Complex closed;
  // sum_k |H_k(x) H_k(y) s^k / (2^k k!)|: the conditioning scale of the sum.
  // Near the alternating corners (x ~ -y, |s| -> 1) the closed form is
  // exponentially smaller than the terms, so agreement is only meaningful
  // relative to this scale.
  double term_scale;
};
MehlerValues mehler_kernel(double x, double y, Complex s, int terms);

// Harmonic kernel via the Mehler closed form, theta_s = omega a T_m.
Complex harmonic_green(double xa, double xb, const SicInterval& interval,
                       const PhysicalParams& params);

// Harmonic kernel with the Mehler variable shrunk to (1-damping) s; the
// closed-form counterpart of the Abel-damped eigensum.
Complex harmonic_green_damped(double xa, double xb,
                              const SicInterval& interval,
                              const PhysicalParams& params, double damping);

// Driven-oscillator kernel, H = p^2/2m + m w^2 x^2 / 2 + f x.
Complex driven_green(double xa, double xb, const SicInterval& interval,
                     const PhysicalParams& params, double f);

// Abel-damped partial eigensum  sum_{k<L} e^{-i a E_k T/hbar} (1-damping)^k
// u_k(xa) u_k(xb).
Complex eigensum_green(const EigenSystem& basis, const SicInterval& interval,
                       double xa, double xb, int L, double damping = 0.0);

// Image-sum kernel for the infinite well with walls at 0 and `width`.
Complex square_well_green(double xa, double xb, const SicInterval& interval,
                          const PhysicalParams& params, double width,
                          int n_images);

// Gaussian-exponent kernel
//   G(x_b; x_a) = prefactor exp[(i/hbar)(m(S_bb x_b^2 + 2 S_ab x_a x_b
//                 + S_aa x_a^2)/2 + Q_a x_a + Q_b x_b + Theta_0)],
// closed under composition.
struct QuadraticGreenForm {
  double m = 1.0;
  double hbar = 1.0;
  double S_bb = 0.0, S_ab = 0.0, S_aa = 0.0;
  double Q_a = 0.0, Q_b = 0.0;
  double Theta_0 = 0.0;
  Complex prefactor{0.0, 0.0};

  // Canonical prefactor sqrt(m (-S_ab) / (i 2 pi hbar)), principal branch.
  static Complex canonical_prefactor(double m, double hbar, double S_ab);
  Complex evaluate(double xa, double xb) const;
};

QuadraticGreenForm free_form(const PhysicalParams& params,
                             const SicInterval& interval);
QuadraticGreenForm harmonic_form(const PhysicalParams& params,
                                 const SicInterval& interval);
QuadraticGreenForm driven_form(const PhysicalParams& params,
                               const SicInterval& interval, double f);
// One image term of the square-well kernel: the free form evaluated at
// (x_b - (+-x_a) + shift).
QuadraticGreenForm free_image_form(const PhysicalParams& params,
                                   const SicInterval& interval, double shift,
                                   bool reflected);

// Composition g2 after g1 over the shared intermediate coordinate.
QuadraticGreenForm compose_quadratic(const QuadraticGreenForm& g1,
                                     const QuadraticGreenForm& g2);

// Complex Gaussian psi(x) = exp(-A x^2 + B x + C); packets stay in this
// family under quadratic kernels (the width acquires a chirp).
struct GaussianPacket {
  Complex A{0.25, 0.0};
  Complex B{0.0, 0.0};
  Complex C{0.0, 0.0};
  double hbar = 1.0;

  GaussianPacket() = default;
  // Normalized packet with <x> = x0, position spread w, <p> = p0.
  GaussianPacket(double x0, double w, double p0, double hb = 1.0);

  Complex evaluate(double x) const {
    return std::exp(-A * x * x + B * x + C);
  }
  double norm() const;        // sqrt(integral |psi|^2)
  double center() const;      // <x>
  double width() const;       // sqrt(<x^2> - <x>^2)
  double momentum() const;    // <p>
  Complex overlap(const GaussianPacket& other) const; // <this|other>
  GaussianPacket normalized() const;
};

GaussianPacket propagate_packet(const GaussianPacket& packet,
                                const QuadraticGreenForm& g);

// Both sides of exp(i H0 t_c/hbar) exp(-i a V t_m/hbar) exp(-i H0 t_c/hbar)
// = exp(-i a T t_m/hbar) (and the dual with T and V swapped) on an N_fock
// truncation, with the defect of the low-k block k < N_fock/2.
struct QuarterPeriodCheck {
  Matrix lhs;
  Matrix rhs;
  double defect;
};
QuarterPeriodCheck quarter_period_conjugation(const PhysicalParams& params,
                                              double t_m, LogicalSign sign,
                                              int N_fock,
                                              bool swap_t_and_v = false);

} // namespace sicprop

#endif
