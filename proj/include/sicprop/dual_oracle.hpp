#ifndef SICPROP_DUAL_ORACLE_HPP
#define SICPROP_DUAL_ORACLE_HPP

#include "sicprop/core.hpp"

namespace sicprop {

// A selective phase operation tracked simultaneously in a physical-space
// state and a math-space state over the same basis labels.  Only the
// physical vector may feed measurement statistics; the math vector exists
// to make the overlap integral computable.
struct OracleSpec {
  int n_qubits;
  long solution_index;   // x0
  long candidate_index;  // S
  double theta;

  OracleSpec(int n, long x0, long s, double th);
  long dim() const { return 1L << n_qubits; }
  // Sign vector {a_m} recovered bit-by-bit: bit 0 -> +1, bit 1 -> -1,
  // per the S_m = (|0> - |1>)/2 convention.
  LogicalSign sign_of_bit(long index, int m) const;
};

struct DualAmplitudePair {
  Vector physical;
  Vector math;

  DualAmplitudePair(Vector phys, Vector math_side);
  static DualAmplitudePair shared_initial(const Vector& psi0) {
    return DualAmplitudePair(psi0, psi0);
  }
  static DualAmplitudePair uniform(int n_qubits);
};

// Rank-1 diagonal projector D_T = |T><T| assembled from the tensor product
// of (E/2 + a I_z) single-spin factors.
enum class OracleTarget { solution, candidate };
Matrix oracle_diagonal(const OracleSpec& spec, OracleTarget which);

// C_T(theta) = exp(-i theta D_T) as a dense operator.
Matrix oracle_phase_operator(const OracleSpec& spec, OracleTarget which);

// Physical side gets C_{x0}(theta), math side gets C_S(theta).
DualAmplitudePair apply_oracle(const DualAmplitudePair& pair,
                               const OracleSpec& spec);

Complex overlap_integral(const DualAmplitudePair& pair);

// Closed form for the overlap after one oracle applied to a shared initial
// state: 1 - |a_{x0}|^2 (1 - e^{+i theta}) - |a_S|^2 (1 - e^{-i theta}),
// reducing to 1 when S = x0.
Complex closed_form_overlap(const OracleSpec& spec, const Vector& initial);

} // namespace sicprop

#endif
