#include "sicprop/spin_synthesis.hpp"

#include <cmath>
#include <set>

namespace sicprop {

Matrix DiagonalPhaseProfile::to_operator() const {
  const long n = dim();
  Matrix u = Matrix::Zero(n, n);
  for (long k = 0; k < n; ++k) u(k, k) = eigenvalue(k);
  return u;
}

DiagonalPhaseProfile DiagonalPhaseProfile::compose(
    const DiagonalPhaseProfile& other) const {
  if (dim() != other.dim())
    throw dimension_mismatch("DiagonalPhaseProfile::compose");
  DiagonalPhaseProfile out;
  out.phases = phases + other.phases;
  out.global = GlobalPhase(global.angle + other.global.angle);
  return out;
}

// Embeds a 2x2 single-spin operator at position `spin` (1-based, least
// significant first).
static Matrix embed_single(const SpinRegister& reg, int spin,
                           const Matrix& op2) {
  Matrix m = identity_op(1L << (reg.d - spin));
  m = tensor(m, op2);
  if (spin > 1) m = tensor(m, identity_op(1L << (spin - 1)));
  return m;
}

Matrix basic_sic_rotation(const SpinRegister& reg, int spin, char axis,
                          LogicalSign sign, double theta) {
  if (spin < 1 || spin > reg.d)
    throw contract_violation("basic_sic_rotation: spin out of range");
  // exp(-i theta a I_axis) = cos(theta/2) E - i a sin(theta/2) sigma_axis
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta) * sign.value;
  Matrix r = c * Matrix::Identity(2, 2) -
             I_UNIT * s * (2.0 * spin_half_op(axis));
  return embed_single(reg, spin, r);
}

DiagonalPhaseProfile linear_phase_propagator(const SpinRegister& reg,
                                             double alpha, LogicalSign sign) {
  const long n = reg.dim();
  const double a = sign;
  DiagonalPhaseProfile p;
  p.phases = RealVector(n);
  for (long k = 0; k < n; ++k) p.phases(k) = -alpha * a * static_cast<double>(k);
  p.global = GlobalPhase(alpha * a * static_cast<double>(n - 1) / 2.0);
  return p;
}

DiagonalPhaseProfile pair_coupling_propagator(
    const SpinRegister& reg, const std::vector<std::vector<double>>& theta_pairs,
    LogicalSign sign) {
  const long n = reg.dim();
  const double a = sign;
  for (int j = 0; j < static_cast<int>(theta_pairs.size()); ++j)
    if (static_cast<int>(theta_pairs[j].size()) > j)
      throw contract_violation(
          "pair_coupling_propagator: theta_pairs must be strictly lower "
          "triangular (j > l)");
  DiagonalPhaseProfile p;
  p.phases = RealVector::Zero(n);
  for (long k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int j = 2; j <= reg.d; ++j) {
      if (j - 1 >= static_cast<int>(theta_pairs.size())) break;
      const auto& row = theta_pairs[j - 1];
      for (int l = 1; l < j; ++l) {
        if (l - 1 >= static_cast<int>(row.size())) break;
        acc += 2.0 * row[l - 1] * SpinRegister::m_of(k, j) *
               SpinRegister::m_of(k, l);
      }
    }
    p.phases(k) = -a * acc;
  }
  p.global = GlobalPhase(0.0);
  return p;
}

DiagonalPhaseProfile quadratic_phase_propagator(const SpinRegister& reg,
                                                double beta, LogicalSign sign) {
  const int d = reg.d;
  // Pair couplings theta_{jl} = beta 2^{j+l-2} supply the bilinear bit terms;
  // one linear profile with alpha = beta (2^d - 1) supplies the diagonal bit
  // terms and cancels the cross terms the couplings introduce.
  std::vector<std::vector<double>> pairs(d);
  for (int j = 2; j <= d; ++j) {
    pairs[j - 1].resize(j - 1);
    for (int l = 1; l < j; ++l)
      pairs[j - 1][l - 1] = beta * std::ldexp(1.0, j + l - 2);
  }
  DiagonalPhaseProfile p =
      pair_coupling_propagator(reg, pairs, sign)
          .compose(linear_phase_propagator(
              reg, beta * static_cast<double>(reg.dim() - 1), sign));
  // Re-center so phases[k] = -beta a k^2 exactly and the constant rides in
  // the global phase (it lands on beta a sum_{j>=l} 2^{j+l-3}).
  const double a = sign;
  const double total0 = p.global.angle + p.phases(0);
  p.global = GlobalPhase(total0);
  for (long k = 0; k < reg.dim(); ++k)
    p.phases(k) = -beta * a * static_cast<double>(k) * static_cast<double>(k);
  return p;
}

Matrix linear_generator(const SpinRegister& reg, double alpha) {
  const long n = reg.dim();
  Matrix h = Matrix::Zero(n, n);
  for (int l = 1; l <= reg.d; ++l) {
    const double theta_ml = -alpha * std::ldexp(1.0, l - 1);
    h += theta_ml * embed_single(reg, l, spin_half_op('z'));
  }
  return h;
}

Matrix pair_generator(const SpinRegister& reg,
                      const std::vector<std::vector<double>>& theta_pairs) {
  const long n = reg.dim();
  Matrix h = Matrix::Zero(n, n);
  for (int j = 2; j <= reg.d; ++j) {
    if (j - 1 >= static_cast<int>(theta_pairs.size())) break;
    const auto& row = theta_pairs[j - 1];
    for (int l = 1; l < j; ++l) {
      if (l - 1 >= static_cast<int>(row.size())) break;
      h += row[l - 1] * 2.0 *
           (embed_single(reg, j, spin_half_op('z')) *
            embed_single(reg, l, spin_half_op('z')));
    }
  }
  return h;
}

LomsoReduction lomso_conjugation_reduce(const SpinRegister& reg,
                                        const std::vector<int>& spin_indices,
                                        double theta, LogicalSign sign) {
  if (spin_indices.empty())
    throw contract_violation("lomso_conjugation_reduce: need >= 1 index");
  std::set<int> uniq(spin_indices.begin(), spin_indices.end());
  if (uniq.size() != spin_indices.size())
    throw contract_violation("lomso_conjugation_reduce: repeated spin index");
  for (int s : spin_indices)
    if (s < 1 || s > reg.d)
      throw contract_violation("lomso_conjugation_reduce: index out of range");

  const int l = static_cast<int>(spin_indices.size()) - 1;
  const long n = reg.dim();
  const double a = sign;

  // Target: diagonal generator 2^l Iz_{k1} ... Iz_{k_{l+1}}.
  Matrix gen = identity_op(n) * std::ldexp(1.0, l);
  for (int s : spin_indices) gen = gen * embed_single(reg, s, spin_half_op('z'));
  LomsoReduction out;
  out.target = Matrix::Zero(n, n);
  for (long k = 0; k < n; ++k)
    out.target(k, k) = std::exp(-I_UNIT * theta * a * gen(k, k));

  // Accumulated conjugator V = V_{k_l} V_{k_{l-1}} ... V_{k_1}, each step
  // stripping one index while keeping k_{l+1}.
  const int last = spin_indices.back();
  Matrix iy_last = embed_single(reg, last, spin_half_op('y'));
  Matrix v = identity_op(n);
  for (int step = l; step >= 1; --step) {
    const int kl = spin_indices[step - 1];
    Matrix gen_v = embed_single(reg, kl, spin_half_op('z')) * iy_last;
    Matrix v_step = mat_exp(gen_v, I_UNIT * PI) * mat_exp(iy_last, -I_UNIT * PI / 2.0);
    v = (step == l) ? v_step : Matrix(v * v_step);
  }
  out.conjugator = v;
  out.core = basic_sic_rotation(reg, last, 'z', sign, theta);

  const Matrix rebuilt = v * out.core * v.adjoint();
  if ((rebuilt - out.target).norm() > 1e-10 * static_cast<double>(n))
    throw contract_violation(
        "lomso_conjugation_reduce: recursion identity failed verification");
  return out;
}

} // namespace sicprop
