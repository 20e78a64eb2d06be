#include "sicprop/path_integral.hpp"

#include <cmath>

namespace sicprop {

RealVector LatticeConfig::grid() const {
  RealVector x(points);
  for (int i = 0; i < points; ++i) x(i) = x_min + i * dx();
  return x;
}

Matrix free_step_matrix(const LatticeConfig& cfg, const PhysicalParams& params,
                        double tau) {
  const int P = cfg.points;
  const double L = cfg.x_max - cfg.x_min;
  const double hb = params.hbar, m = params.mass;
  // Momentum ladder of the periodic grid, p_n = hbar 2 pi n / L with
  // n = -P/2 .. P/2-1.
  Vector phase(P);
  for (int n = 0; n < P; ++n) {
    const int nn = (n <= P / 2) ? n : n - P;
    const double p = hb * 2.0 * PI * nn / L;
    phase(n) = std::exp(-I_UNIT * p * p * tau / (2.0 * m * hb));
  }
  // K = F+ diag(phase) F assembled directly; row/col difference enters only
  // through (i - j).
  Vector row(P);
  for (int d = 0; d < P; ++d) {
    Complex acc = 0.0;
    for (int n = 0; n < P; ++n)
      acc += phase(n) * std::exp(I_UNIT * 2.0 * PI *
                                 static_cast<double>(n) *
                                 static_cast<double>(d) / static_cast<double>(P));
    row(d) = acc / static_cast<double>(P);
  }
  Matrix K(P, P);
  for (int i = 0; i < P; ++i)
    for (int j = 0; j < P; ++j) K(i, j) = row((i - j + P) % P);
  return K;
}

TrotterKernel trotter_green(const std::function<double(double)>& V,
                            const SicInterval& interval,
                            const LatticeConfig& cfg,
                            const PhysicalParams& params) {
  const double a = interval.sign;
  const double eps = interval.T_m / cfg.N;
  TrotterKernel out;
  out.grid = cfg.grid();
  out.dx = cfg.dx();

  const Matrix kin = free_step_matrix(cfg, params, a * eps);
  Vector vphase(cfg.points);
  for (int i = 0; i < cfg.points; ++i)
    vphase(i) = std::exp(-I_UNIT * a * V(out.grid(i)) * eps / params.hbar);
  Matrix step = kin * vphase.asDiagonal();

  if (unitarity_defect(step) > 1e-3)
    throw resolution_error("trotter_green: transfer matrix is not unitary; "
                           "grid too coarse");

  // step^N by binary exponentiation.
  Matrix result = Matrix::Identity(cfg.points, cfg.points);
  Matrix base = std::move(step);
  int n = cfg.N;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  out.K = std::move(result);
  return out;
}

Matrix sample_kernel(const LatticeConfig& cfg,
                     const std::function<Complex(double, double)>& G) {
  const RealVector x = cfg.grid();
  const int P = cfg.points;
  Matrix K(P, P);
  for (int i = 0; i < P; ++i)
    for (int j = 0; j < P; ++j) K(i, j) = G(x(i), x(j)) * cfg.dx();
  return K;
}

void require_packet_resolved(const LatticeConfig& cfg,
                             const GaussianPacket& packet,
                             const PhysicalParams& params) {
  const double edge = std::max(std::abs(packet.evaluate(cfg.x_min)),
                               std::abs(packet.evaluate(cfg.x_max)));
  if (edge > 1e-12)
    throw resolution_error("packet tails exceed 1e-12 at the grid edges");
  const double p_nyquist = params.hbar * PI / cfg.dx();
  const double p_content =
      std::abs(packet.momentum()) + 6.0 * params.hbar / (2.0 * packet.width());
  if (p_content > 0.8 * p_nyquist)
    throw resolution_error("packet momentum content exceeds the grid band");
}

double grid_distance(const LatticeConfig& cfg, const Vector& f,
                     const Vector& g) {
  return std::sqrt(cfg.dx()) * (f - g).norm();
}

Vector sample_packet(const LatticeConfig& cfg, const GaussianPacket& packet) {
  const RealVector x = cfg.grid();
  Vector psi(cfg.points);
  for (int i = 0; i < cfg.points; ++i) psi(i) = packet.evaluate(x(i));
  return psi;
}

Matrix timedep_sic_propagator(const PiecewiseHamiltonian& H, LogicalSign sign,
                              TimedepVariant variant, int N, double hbar) {
  if (N < 1) throw contract_violation("timedep_sic_propagator: N >= 1");
  const double a = sign;
  const double eps = H.T_m / N;
  Matrix u;
  for (int j = 1; j <= N; ++j) {
    const double tj = variant == TimedepVariant::def437
                          ? H.t0 + (j - 0.5) * a * eps
                          : H.t0 + (j - 0.5) * eps;
    const Matrix hj = H.H_of_t(tj);
    const Matrix slice = mat_exp(hj, -I_UNIT * a * eps / hbar);
    u = (j == 1) ? slice : Matrix(slice * u);
  }
  return u;
}

double reversal_symmetry_check(const Matrix& U_plus, const Matrix& U_minus) {
  if (U_plus.rows() != U_minus.rows())
    throw dimension_mismatch("reversal_symmetry_check: dimension mismatch");
  return (U_plus - U_minus.adjoint()).norm();
}

double local_reversal_defect(const PiecewiseHamiltonian& H, int N,
                             double hbar) {
  const double eps = H.T_m / N;
  double worst = 0.0;
  for (int j = 1; j <= N; ++j) {
    const double tj = H.t0 + (j - 0.5) * eps;
    const Matrix hj = H.H_of_t(tj);
    const Matrix up = mat_exp(hj, -I_UNIT * eps / hbar);
    const Matrix um = mat_exp(hj, +I_UNIT * eps / hbar);
    worst = std::max(worst, reversal_symmetry_check(up, um));
  }
  return worst;
}

} // namespace sicprop
