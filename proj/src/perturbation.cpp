#include "sicprop/perturbation.hpp"

#include <cmath>
#include <map>

#include "sicprop/quadrature.hpp"

namespace sicprop {

HamiltonianSplit::HamiltonianSplit(Matrix h0, Matrix h1, double lam, double hb)
    : H0(std::move(h0)), H1(std::move(h1)), lambda(lam), hbar(hb) {
  if (H0.rows() != H1.rows() || H0.cols() != H0.rows() ||
      H1.cols() != H1.rows())
    throw dimension_mismatch("HamiltonianSplit: operators must be square and "
                             "of equal dimension");
  const double scale = tol::hermiticity_factor * static_cast<double>(dim());
  if (hermiticity_defect(H0) > scale || hermiticity_defect(H1) > scale)
    throw contract_violation("HamiltonianSplit: terms must be Hermitian");
}

namespace {

// Diagonalizes H0 once; U0(t) then costs one scaled congruence per call.
struct FreePropagator {
  Eigen::SelfAdjointEigenSolver<Matrix> es;
  double a, hbar;

  FreePropagator(const Matrix& h0, LogicalSign sign, double hb)
      : es(h0), a(sign), hbar(hb) {}
  Matrix at(double t) const {
    Vector z(es.eigenvalues().size());
    for (long k = 0; k < z.size(); ++k)
      z(k) = std::exp(-I_UNIT * a * es.eigenvalues()(k) * t / hbar);
    return es.eigenvectors() * z.asDiagonal() * es.eigenvectors().adjoint();
  }
};

} // namespace

Matrix interaction_hamiltonian(const HamiltonianSplit& split, LogicalSign sign,
                               double t) {
  FreePropagator u0(split.H0, sign, split.hbar);
  const Matrix u = u0.at(t);
  return u.adjoint() * split.H1 * u;
}

namespace {

Matrix dyson_recurse(const FreePropagator& u0, const Matrix& aH1, double hbar,
                     int order, double t, int quad_points,
                     std::map<std::pair<int, double>, Matrix>& memo) {
  if (order == 0) return u0.at(t);
  const auto key = std::make_pair(order, t);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::vector<double> x, w;
  gauss_legendre_on(quad_points, 0.0, t, x, w);
  Matrix acc = u0.at(t);
  for (int i = 0; i < quad_points; ++i) {
    const Matrix inner =
        dyson_recurse(u0, aH1, hbar, order - 1, x[i], quad_points, memo);
    acc += (w[i] / (I_UNIT * hbar)) * (u0.at(t - x[i]) * aH1 * inner);
  }
  memo.emplace(key, acc);
  return acc;
}

} // namespace

Matrix dyson_iterate(const HamiltonianSplit& split, LogicalSign sign, double t,
                     int order, int quad_points) {
  if (order < 0) throw contract_violation("dyson_iterate: order >= 0");
  FreePropagator u0(split.H0, sign, split.hbar);
  const Matrix aH1 = double(sign) * split.lambda * split.H1;
  std::map<std::pair<int, double>, Matrix> memo;
  return dyson_recurse(u0, aH1, split.hbar, order, t, quad_points, memo);
}

namespace {

Matrix green_recurse(const std::function<Matrix(double)>& step,
                     const Vector& aH1_diag, double hbar, int order, double t,
                     int quad_points,
                     std::map<std::pair<int, double>, Matrix>& memo) {
  if (order == 0) return step(t);
  const auto key = std::make_pair(order, t);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::vector<double> x, w;
  gauss_legendre_on(quad_points, 0.0, t, x, w);
  Matrix acc = step(t);
  for (int i = 0; i < quad_points; ++i) {
    const Matrix inner =
        green_recurse(step, aH1_diag, hbar, order - 1, x[i], quad_points, memo);
    acc += (w[i] / (I_UNIT * hbar)) *
           (step(t - x[i]) * aH1_diag.asDiagonal() * inner);
  }
  memo.emplace(key, acc);
  return acc;
}

} // namespace

Matrix green_perturbation_step(
    const std::function<Matrix(double)>& background_step,
    const std::function<double(double)>& H1_of_x, const SicInterval& interval,
    const LatticeConfig& cfg, int order, double lambda, double hbar,
    int quad_points) {
  if (order < 0) throw contract_violation("green_perturbation_step: order >= 0");
  const RealVector grid = cfg.grid();
  Vector h1(cfg.points);
  for (int i = 0; i < cfg.points; ++i)
    h1(i) = double(interval.sign) * lambda * H1_of_x(grid(i));
  std::map<std::pair<int, double>, Matrix> memo;
  return green_recurse(background_step, h1, hbar, order, interval.T_m,
                       quad_points, memo);
}

} // namespace sicprop
