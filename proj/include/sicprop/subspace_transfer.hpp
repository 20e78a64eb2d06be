#ifndef SICPROP_SUBSPACE_TRANSFER_HPP
#define SICPROP_SUBSPACE_TRANSFER_HPP

#include <array>
#include <vector>

#include "sicprop/core.hpp"
#include "sicprop/oscillator_basis.hpp"

namespace sicprop {

// Two- or three-component tensor space; component 1 is the most significant
// index, matching tensor().
struct CompositeSpace {
  std::vector<long> dims;

  explicit CompositeSpace(std::vector<long> component_dims);
  long total_dim() const;
  long flatten(const std::vector<long>& idx) const;
};

struct PseudospinPair {
  std::vector<long> bra; // K
  std::vector<long> ket; // L
};

// Identity outside span{K, L}; the 2x2 rotation exp(-i angle Q_axis) within.
// exp(+i pi Q_x)|K> = +i|L>.
Matrix pseudospin_rotation(const CompositeSpace& space,
                           const PseudospinPair& pair, char axis,
                           double angle);

// Subspace-selective unitary: product of pi-rotations on the pairs
// (|k, u0>, |0, u_k>) for 1 <= k < K_trunc (leg 12) or
// (|u_k, v0>, |u0, v_k>) for leg 23, times the diagonal phase
// exp(-i pi/2 |ground><ground|).  W|j,u0> = -i|0,u_j> for j < K_trunc,
// identity above.  Exact form: K_trunc = full component dim.
enum class TransferLeg { leg12, leg23 };
Matrix build_transfer_W(const CompositeSpace& space, TransferLeg leg,
                        long K_trunc);

struct TargetSpectrum {
  enum class Form { linear, quadratic };
  Form form = Form::linear;
  double a = 1.0; // E_k = a k + b  or  a k^2 + b k + c
  double b = 0.0;
  double c = 0.0;
  double t_m = 0.0;

  static TargetSpectrum linear(double a, double b, double t_m) {
    return {Form::linear, a, b, 0.0, t_m};
  }
  static TargetSpectrum quadratic(double a, double b, double c, double t_m) {
    return {Form::quadratic, a, b, c, t_m};
  }
  double energy(long k) const {
    return form == Form::linear ? a * k + b : a * k * k + b * k + c;
  }
};

struct BuiltPropagator {
  Matrix op;
  GlobalPhase phase; // op|0,u_k> = e^{i phase} e^{-i a E_k t_m/hbar}|0,u_k>
                     // for k < 2^ds
};

// W12 U_ap(alpha) W12+ on the (2^ds) x D2 composite space.  The spin-side
// diagonal is the linear profile for a linear spectrum and the quadratic
// profile for a quadratic one (alpha = b t/hbar, beta = a t/hbar).
BuiltPropagator conjugate_spectrum(int ds, long D2, const TargetSpectrum& t,
                                   LogicalSign sign, double hbar = 1.0);

// W23 W12 U_ap(alpha) W12+ W23+ on (2^ds) x D2 x D3; acts effectively on
// |0, u0> (x) S3.
BuiltPropagator chained_transfer(int ds, long D2, long D3,
                                 const TargetSpectrum& t, LogicalSign sign,
                                 double hbar = 1.0);

enum class TransferPipeline { three_step, five_step };

struct TransferReport {
  std::vector<double> norms;       // Norm1..3 or Norm_1..5
  std::vector<double> fidelities;  // |<psi_k_ap, psi_k>| per step
  double bound = 0.0;              // 2 NRES(2^ds)
  bool passed = false;
};

// Builds exact-vs-truncated intermediate states step by step (with the
// analytic global-phase alignments) and reports each norm against the
// residual-sum bound.
TransferReport transfer_norm_diagnostics(const ExpansionState& state, int ds,
                                         TransferPipeline pipeline,
                                         double alpha, LogicalSign sign);

} // namespace sicprop

#endif
