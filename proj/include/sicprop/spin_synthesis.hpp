#ifndef SICPROP_SPIN_SYNTHESIS_HPP
#define SICPROP_SPIN_SYNTHESIS_HPP

#include <vector>

#include "sicprop/core.hpp"

namespace sicprop {

struct SpinRegister {
  int d;
  explicit SpinRegister(int qubits, int max_qubits = 12) : d(qubits) {
    if (d < 1 || d > max_qubits)
      throw capacity_error("SpinRegister: qubit count out of range");
  }
  long dim() const { return 1L << d; }
  // Magnetic quantum number of spin i (1-based) in basis state k:
  // m_i = 1/2 - k_{i-1}, spin 1 least significant.
  static double m_of(long k, int i) {
    return 0.5 - static_cast<double>((k >> (i - 1)) & 1);
  }
};

// Diagonal unitary U|k> = e^{i global} e^{i phases[k]} |k>.
struct DiagonalPhaseProfile {
  RealVector phases;
  GlobalPhase global;

  long dim() const { return phases.size(); }
  Matrix to_operator() const;
  Complex eigenvalue(long k) const {
    return std::exp(I_UNIT * (global.angle + phases(k)));
  }
  // Diagonal profiles commute; composition adds phases.
  DiagonalPhaseProfile compose(const DiagonalPhaseProfile& other) const;
};

// exp(-i theta a I_{spin,axis}) embedded in the register by tensoring with
// identities.
Matrix basic_sic_rotation(const SpinRegister& reg, int spin, char axis,
                          LogicalSign sign, double theta);

// Linear eigenphase profile: phases[k] = -alpha a k, with the finite-register
// global phase alpha a (2^d - 1)/2 from the theta_{ml} = -alpha 2^{l-1}
// angle choice.
DiagonalPhaseProfile linear_phase_propagator(const SpinRegister& reg,
                                             double alpha, LogicalSign sign);

// Pair-coupling profile from z-z interactions:
// phases[k] = -a sum_{j>l} 2 theta_{jl} m_j m_l.  theta_pairs is
// lower-triangular, theta_pairs[j][l] with j > l (1-based spin labels).
DiagonalPhaseProfile pair_coupling_propagator(
    const SpinRegister& reg, const std::vector<std::vector<double>>& theta_pairs,
    LogicalSign sign);

// Quadratic eigenphase profile phases[k] = -beta a k^2, built exactly from
// the bit identity k^2 = sum_j k_{j-1} 2^{2j-2} + sum_{j>l} k_{j-1}k_{l-1}
// 2^{j+l-1}: a pair-coupling profile with theta_{jl} = beta 2^{j+l-2}
// composed with single-spin z-rotations, the leftover constants tracked in
// the global phase.
DiagonalPhaseProfile quadratic_phase_propagator(const SpinRegister& reg,
                                                double beta, LogicalSign sign);

// One recursion step peels one z-factor off a multi-spin longitudinal
// product generator via conjugation:
//   exp(-i th a 2^l Iz_{k1}..Iz_{kl} Iz_{k_{l+1}})
//     = V exp(-i th a 2^{l-1} Iz_{k1}..Iz_{k_{l-1}} Iz_{k_{l+1}}) V+,
// with V = exp(+i pi Iz_{k_l} Iy_{k_{l+1}}) exp(-i (pi/2) Iy_{k_{l+1}}).
// Repeating reduces to the single-spin rotation exp(-i th a Iz_{k_{l+1}}).
struct LomsoReduction {
  Matrix target;      // the multi-spin diagonal propagator
  Matrix conjugator;  // accumulated V with target = V R V+
  Matrix core;        // R = exp(-i theta a Iz on the last index)
};
LomsoReduction lomso_conjugation_reduce(const SpinRegister& reg,
                                        const std::vector<int>& spin_indices,
                                        double theta, LogicalSign sign);

// Brute-force oracle: the same profile via mat_exp of the explicit spin
// generator sum (used by tests and the synthesize CLI).
Matrix linear_generator(const SpinRegister& reg, double alpha);
Matrix pair_generator(const SpinRegister& reg,
                      const std::vector<std::vector<double>>& theta_pairs);

} // namespace sicprop

#endif
