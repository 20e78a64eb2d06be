#include "sicprop/dual_oracle.hpp"

#include <cmath>

namespace sicprop {

OracleSpec::OracleSpec(int n, long x0, long s, double th)
    : n_qubits(n), solution_index(x0), candidate_index(s), theta(th) {
  if (n < 1) throw contract_violation("OracleSpec: n_qubits must be >= 1");
  const long d = 1L << n;
  if (x0 < 0 || x0 >= d || s < 0 || s >= d)
    throw contract_violation("OracleSpec: index out of range");
}

LogicalSign OracleSpec::sign_of_bit(long index, int m) const {
  if (m < 1 || m > n_qubits)
    throw contract_violation("OracleSpec: spin index out of range");
  return LogicalSign(((index >> (m - 1)) & 1) ? -1 : +1);
}

DualAmplitudePair::DualAmplitudePair(Vector phys, Vector math_side)
    : physical(std::move(phys)), math(std::move(math_side)) {
  if (physical.size() != math.size())
    throw dimension_mismatch("DualAmplitudePair: unequal dimensions");
  require_normalized(physical, "DualAmplitudePair");
  require_normalized(math, "DualAmplitudePair");
}

DualAmplitudePair DualAmplitudePair::uniform(int n_qubits) {
  const long d = 1L << n_qubits;
  Vector psi = Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
  return shared_initial(psi);
}

Matrix oracle_diagonal(const OracleSpec& spec, OracleTarget which) {
  const long target = which == OracleTarget::solution ? spec.solution_index
                                                      : spec.candidate_index;
  // D_T = tensor over spins of (E/2 + a I_z); spin 1 least significant, so
  // the most significant factor comes first.
  Matrix d = Matrix::Identity(1, 1);
  for (int m = spec.n_qubits; m >= 1; --m) {
    double a = spec.sign_of_bit(target, m);
    Matrix factor = 0.5 * Matrix::Identity(2, 2) + a * spin_half_op('z');
    d = tensor(d, factor);
  }
  return d;
}

Matrix oracle_phase_operator(const OracleSpec& spec, OracleTarget which) {
  return mat_exp(oracle_diagonal(spec, which), -I_UNIT * spec.theta);
}

DualAmplitudePair apply_oracle(const DualAmplitudePair& pair,
                               const OracleSpec& spec) {
  if (pair.physical.size() != spec.dim())
    throw dimension_mismatch("apply_oracle: pair dimension != 2^n");
  const Complex phase = std::exp(-I_UNIT * spec.theta);
  Vector phys = pair.physical;
  Vector math = pair.math;
  phys(spec.solution_index) *= phase;
  math(spec.candidate_index) *= phase;
  return DualAmplitudePair(std::move(phys), std::move(math));
}

Complex overlap_integral(const DualAmplitudePair& pair) {
  return pair.physical.dot(pair.math); // Eigen dot conjugates the left side
}

Complex closed_form_overlap(const OracleSpec& spec, const Vector& initial) {
  if (initial.size() != spec.dim())
    throw dimension_mismatch("closed_form_overlap: dimension mismatch");
  if (spec.candidate_index == spec.solution_index) return 1.0;
  const double ax0 = std::norm(initial(spec.solution_index));
  const double as = std::norm(initial(spec.candidate_index));
  return 1.0 - ax0 * (1.0 - std::exp(+I_UNIT * spec.theta)) -
         as * (1.0 - std::exp(-I_UNIT * spec.theta));
}

} // namespace sicprop
