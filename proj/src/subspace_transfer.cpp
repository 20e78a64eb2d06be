#include "sicprop/subspace_transfer.hpp"

#include <cmath>

#include "sicprop/spin_synthesis.hpp"

namespace sicprop {

CompositeSpace::CompositeSpace(std::vector<long> component_dims)
    : dims(std::move(component_dims)) {
  if (dims.size() < 2 || dims.size() > 3)
    throw contract_violation("CompositeSpace: need 2 or 3 components");
  long total = 1;
  for (long d : dims) {
    if (d < 1) throw contract_violation("CompositeSpace: dims must be >= 1");
    if (total > tol::max_dimension / d)
      throw capacity_error("CompositeSpace: total dim exceeds configured max");
    total *= d;
  }
}

long CompositeSpace::total_dim() const {
  long t = 1;
  for (long d : dims) t *= d;
  return t;
}

long CompositeSpace::flatten(const std::vector<long>& idx) const {
  if (idx.size() != dims.size())
    throw dimension_mismatch("CompositeSpace::flatten: index arity");
  long f = 0;
  for (size_t c = 0; c < dims.size(); ++c) {
    if (idx[c] < 0 || idx[c] >= dims[c])
      throw dimension_mismatch("CompositeSpace::flatten: index out of range");
    f = f * dims[c] + idx[c];
  }
  return f;
}

Matrix pseudospin_rotation(const CompositeSpace& space,
                           const PseudospinPair& pair, char axis,
                           double angle) {
  const long p = space.flatten(pair.bra);
  const long q = space.flatten(pair.ket);
  if (p == q) throw contract_violation("pseudospin_rotation: K == L");
  Matrix u = Matrix::Identity(space.total_dim(), space.total_dim());
  const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
  switch (axis) {
    case 'x':
      u(p, p) = c;
      u(q, q) = c;
      u(p, q) = -I_UNIT * s;
      u(q, p) = -I_UNIT * s;
      break;
    case 'y':
      u(p, p) = c;
      u(q, q) = c;
      u(p, q) = -s;
      u(q, p) = s;
      break;
    case 'z':
      u(p, p) = std::exp(-I_UNIT * 0.5 * angle);
      u(q, q) = std::exp(+I_UNIT * 0.5 * angle);
      break;
    default:
      throw contract_violation("pseudospin_rotation: bad axis");
  }
  return u;
}

namespace {

struct PairList {
  // Disjoint index pairs (p, q) with W: |p> -> -i|q>, |q> -> -i|p>,
  // plus diagonal ground indices picking up the -i phase.
  std::vector<std::pair<long, long>> pairs;
  std::vector<long> grounds;
};

PairList transfer_pairs(const CompositeSpace& space, TransferLeg leg,
                        long K_trunc) {
  const auto& d = space.dims;
  PairList out;
  if (leg == TransferLeg::leg12) {
    if (K_trunc < 1 || K_trunc > std::min(d[0], d[1]))
      throw contract_violation("build_transfer_W: K_trunc out of range");
    const long free3 = d.size() == 3 ? d[2] : 1;
    const long stride1 = d[1] * free3;
    const long stride2 = free3;
    for (long k = 1; k < K_trunc; ++k)
      for (long j = 0; j < free3; ++j)
        out.pairs.emplace_back(k * stride1 + j, k * stride2 + j);
    for (long j = 0; j < free3; ++j) out.grounds.push_back(j);
  } else {
    if (d.size() != 3)
      throw contract_violation("build_transfer_W: leg23 needs 3 components");
    if (K_trunc < 1 || K_trunc > std::min(d[1], d[2]))
      throw contract_violation("build_transfer_W: K_trunc out of range");
    const long stride1 = d[1] * d[2];
    const long stride2 = d[2];
    for (long k = 1; k < K_trunc; ++k)
      for (long j = 0; j < d[0]; ++j)
        out.pairs.emplace_back(j * stride1 + k * stride2, j * stride1 + k);
    for (long j = 0; j < d[0]; ++j) out.grounds.push_back(j * stride1);
  }
  return out;
}

void apply_transfer_W(const PairList& pl, bool dagger, Vector& v) {
  const Complex f = dagger ? Complex(0, 1) : Complex(0, -1);
  for (const auto& [p, q] : pl.pairs) {
    const Complex vp = v(p);
    v(p) = f * v(q);
    v(q) = f * vp;
  }
  for (long g : pl.grounds) v(g) *= f;
}

// Spin-side diagonal profile for a target spectrum over time t_m.
DiagonalPhaseProfile spin_profile(int ds, const TargetSpectrum& t,
                                  LogicalSign sign, double hbar) {
  SpinRegister reg(ds);
  if (t.form == TargetSpectrum::Form::linear)
    return linear_phase_propagator(reg, t.a * t.t_m / hbar, sign);
  return quadratic_phase_propagator(reg, t.a * t.t_m / hbar, sign)
      .compose(linear_phase_propagator(reg, t.b * t.t_m / hbar, sign));
}

void apply_spin_diagonal(const CompositeSpace& space,
                         const DiagonalPhaseProfile& prof, Vector& v) {
  const long block = space.total_dim() / space.dims[0];
  for (long k = 0; k < space.dims[0]; ++k) {
    const Complex ph = prof.eigenvalue(k);
    v.segment(k * block, block) *= ph;
  }
}

GlobalPhase tracked_phase(const DiagonalPhaseProfile& prof,
                          const TargetSpectrum& t, LogicalSign sign,
                          double hbar) {
  return GlobalPhase(prof.global.angle + prof.phases(0) +
                     double(sign) * t.energy(0) * t.t_m / hbar);
}

} // namespace

Matrix build_transfer_W(const CompositeSpace& space, TransferLeg leg,
                        long K_trunc) {
  const PairList pl = transfer_pairs(space, leg, K_trunc);
  const long n = space.total_dim();
  Matrix w = Matrix::Identity(n, n);
  for (const auto& [p, q] : pl.pairs) {
    w(p, p) = 0;
    w(q, q) = 0;
    w(p, q) = Complex(0, -1);
    w(q, p) = Complex(0, -1);
  }
  for (long g : pl.grounds) w(g, g) = Complex(0, -1);
  return w;
}

BuiltPropagator conjugate_spectrum(int ds, long D2, const TargetSpectrum& t,
                                   LogicalSign sign, double hbar) {
  const long K = 1L << ds;
  if (D2 < K)
    throw dimension_mismatch("conjugate_spectrum: D2 must be >= 2^ds");
  CompositeSpace space({K, D2});
  const DiagonalPhaseProfile prof = spin_profile(ds, t, sign, hbar);
  const PairList pl = transfer_pairs(space, TransferLeg::leg12, K);

  const long n = space.total_dim();
  BuiltPropagator out;
  out.op = Matrix(n, n);
  Vector col(n);
  for (long j = 0; j < n; ++j) {
    col.setZero();
    col(j) = 1.0;
    apply_transfer_W(pl, true, col);
    apply_spin_diagonal(space, prof, col);
    apply_transfer_W(pl, false, col);
    out.op.col(j) = col;
  }
  out.phase = tracked_phase(prof, t, sign, hbar);
  return out;
}

BuiltPropagator chained_transfer(int ds, long D2, long D3,
                                 const TargetSpectrum& t, LogicalSign sign,
                                 double hbar) {
  const long K = 1L << ds;
  if (D2 < K || D3 < K)
    throw dimension_mismatch("chained_transfer: D2, D3 must be >= 2^ds");
  CompositeSpace space({K, D2, D3});
  const DiagonalPhaseProfile prof = spin_profile(ds, t, sign, hbar);
  const PairList w12 = transfer_pairs(space, TransferLeg::leg12, K);
  const PairList w23 = transfer_pairs(space, TransferLeg::leg23, K);

  const long n = space.total_dim();
  BuiltPropagator out;
  out.op = Matrix(n, n);
  Vector col(n);
  for (long j = 0; j < n; ++j) {
    col.setZero();
    col(j) = 1.0;
    apply_transfer_W(w23, true, col);
    apply_transfer_W(w12, true, col);
    apply_spin_diagonal(space, prof, col);
    apply_transfer_W(w12, false, col);
    apply_transfer_W(w23, false, col);
    out.op.col(j) = col;
  }
  out.phase = tracked_phase(prof, t, sign, hbar);
  return out;
}

namespace {

// Compact state on the subspace the pipelines visit: leg0 = |k, u0(, v0)>,
// leg1 = |0, u_k(, v0)>, leg2 = |0, u0, v_k>; k = 0 lives in leg0.
struct LegState {
  Vector c0, c1, c2;

  explicit LegState(int L) {
    c0 = Vector::Zero(L);
    c1 = Vector::Zero(L);
    c2 = Vector::Zero(L);
  }
  double dist(const LegState& o) const {
    return std::sqrt((c0 - o.c0).squaredNorm() + (c1 - o.c1).squaredNorm() +
                     (c2 - o.c2).squaredNorm());
  }
  Complex dot(const LegState& o) const {
    return c0.dot(o.c0) + c1.dot(o.c1) + c2.dot(o.c2);
  }
  void scale(Complex f) {
    c0 *= f;
    c1 *= f;
    c2 *= f;
  }
};

void leg_w12(LegState& s, long K, bool dagger) {
  const Complex f = dagger ? Complex(0, 1) : Complex(0, -1);
  const long L = s.c0.size();
  for (long k = 1; k < L && k < K; ++k) {
    const Complex t = s.c0(k);
    s.c0(k) = f * s.c1(k);
    s.c1(k) = f * t;
  }
  s.c0(0) *= f;  // (0, u0) ground phase
  s.c2 *= f;     // v-leg states sit on the (0, u0) ground of S1 x S2
}

void leg_w23(LegState& s, long K, bool dagger) {
  const Complex f = dagger ? Complex(0, 1) : Complex(0, -1);
  const long L = s.c1.size();
  for (long k = 1; k < L && k < K; ++k) {
    const Complex t = s.c1(k);
    s.c1(k) = f * s.c2(k);
    s.c2(k) = f * t;
  }
  s.c0 *= f;  // spin-leg states sit on the (u0, v0) ground of S2 x S3
}

// Truncated U_ap(alpha) on the spin component; exact==true gives the
// alignment-stripped theoretical action e^{-i alpha a k} with no varphi_0.
void leg_u(LegState& s, double alpha, double a, long K, bool exact) {
  const long L = s.c0.size();
  if (exact) {
    for (long k = 0; k < L; ++k)
      s.c0(k) *= std::exp(-I_UNIT * alpha * a * static_cast<double>(k));
    return;
  }
  const double phi0 = alpha * a * static_cast<double>(K - 1) / 2.0;
  const Complex g = std::exp(I_UNIT * phi0);
  for (long k = 0; k < L; ++k) {
    const long keff = k & (K - 1); // theoretical action for k >= 2^ds
    s.c0(k) *= g * std::exp(-I_UNIT * alpha * a * static_cast<double>(keff));
  }
  s.c1 *= g;
  s.c2 *= g;
}

} // namespace

TransferReport transfer_norm_diagnostics(const ExpansionState& state, int ds,
                                         TransferPipeline pipeline,
                                         double alpha, LogicalSign sign) {
  const long K = 1L << ds;
  const int L = state.L_max();
  if (L <= K)
    throw accuracy_error(
        "transfer_norm_diagnostics: state must carry coefficients beyond 2^ds",
        static_cast<double>(L));
  const double a = sign;
  const double phi0 = alpha * a * static_cast<double>(K - 1) / 2.0;
  const Complex strip = std::exp(-I_UNIT * phi0);

  LegState ap(L), ex(L);
  const bool five = pipeline == TransferPipeline::five_step;
  // Initial state: |0> (x) Psi_c on the u-leg, or |0, u0> (x) Psi_v on the
  // v-leg for the five-step pipeline.
  Vector& init_ap = five ? ap.c2 : ap.c1;
  Vector& init_ex = five ? ex.c2 : ex.c1;
  for (int k = 1; k < L; ++k) {
    init_ap(k) = state.coeffs(k);
    init_ex(k) = state.coeffs(k);
  }
  ap.c0(0) = state.coeffs(0);
  ex.c0(0) = state.coeffs(0);

  TransferReport report;
  auto record = [&] {
    report.norms.push_back(ap.dist(ex));
    report.fidelities.push_back(std::abs(ap.dot(ex)));
  };

  if (!five) {
    leg_w12(ap, K, true);
    leg_w12(ex, L, true);
    record();
    leg_u(ap, alpha, a, K, false);
    ap.scale(strip);
    leg_u(ex, alpha, a, K, true);
    record();
    leg_w12(ap, K, false);
    leg_w12(ex, L, false);
    record();
  } else {
    leg_w23(ap, K, true);
    leg_w23(ex, L, true);
    record();
    leg_w12(ap, K, true);
    leg_w12(ex, L, true);
    record();
    leg_u(ap, alpha, a, K, false);
    ap.scale(strip);
    leg_u(ex, alpha, a, K, true);
    record();
    leg_w12(ap, K, false);
    leg_w12(ex, L, false);
    record();
    leg_w23(ap, K, false);
    leg_w23(ex, L, false);
    record();
  }

  report.bound = 2.0 * state.residual_norm(static_cast<int>(K));
  double max_norm = 0.0;
  for (double n : report.norms) max_norm = std::max(max_norm, n);
  report.passed = max_norm <= report.bound + 1e-12;
  return report;
}

} // namespace sicprop
