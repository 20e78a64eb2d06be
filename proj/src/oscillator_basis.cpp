#include "sicprop/oscillator_basis.hpp"

#include <cmath>
#include <vector>

#include "sicprop/quadrature.hpp"

namespace sicprop {

EigenSystem EigenSystem::harmonic(const PhysicalParams& params,
                                  int stability_cap) {
  EigenSystem s;
  s.kind_ = Kind::harmonic;
  s.params_ = params;
  s.cap_ = stability_cap;
  return s;
}

EigenSystem EigenSystem::square_well(const PhysicalParams& params,
                                     double x_min, double width) {
  if (width <= 0) throw contract_violation("square_well: width must be > 0");
  EigenSystem s;
  s.kind_ = Kind::square_well;
  s.params_ = params;
  s.x_min_ = x_min;
  s.width_ = width;
  s.cap_ = 100000;
  return s;
}

double EigenSystem::eigenvalue(int k) const {
  if (k < 0 || k > cap_)
    throw std::out_of_range("EigenSystem::eigenvalue: k beyond stability cap");
  if (kind_ == Kind::harmonic)
    return (k + 0.5) * params_.hbar * params_.omega;
  const double n = k + 1.0;
  return n * n * PI * PI * params_.hbar * params_.hbar /
         (2.0 * params_.mass * width_ * width_);
}

// Normalized-function three-term recurrence; H_k as written overflows past
// k ~ 150 in double precision.
void EigenSystem::eigenfunctions_upto(int kmax, double x, double* out) const {
  if (kmax < 0 || kmax > cap_)
    throw std::out_of_range("EigenSystem: k beyond stability cap");
  if (kind_ == Kind::harmonic) {
    const double al = params_.alpha();
    const double xi = al * x;
    const double u0 = std::sqrt(al) * std::pow(PI, -0.25) *
                      std::exp(-0.5 * xi * xi);
    out[0] = u0;
    if (kmax >= 1) out[1] = std::sqrt(2.0) * xi * u0;
    for (int k = 1; k < kmax; ++k)
      out[k + 1] = (std::sqrt(2.0 / (k + 1.0)) * xi * out[k] -
                    std::sqrt(k / (k + 1.0)) * out[k - 1]);
    return;
  }
  const double rel = x - x_min_;
  const bool inside = rel >= 0.0 && rel <= width_;
  const double norm = std::sqrt(2.0 / width_);
  for (int k = 0; k <= kmax; ++k)
    out[k] = inside ? norm * std::sin((k + 1.0) * PI * rel / width_) : 0.0;
}

double EigenSystem::eigenfunction(int k, double x) const {
  std::vector<double> buf(k + 1);
  eigenfunctions_upto(k, x, buf.data());
  return buf[k];
}

double EigenSystem::window_min(int L) const {
  if (kind_ == Kind::square_well) return x_min_;
  return -window_max(L);
}

double EigenSystem::window_max(int L) const {
  if (kind_ == Kind::square_well) return x_min_ + width_;
  // Hermite-Gaussian support grows like sqrt(2k+1) in xi = alpha x.
  const double xi_max = std::max(8.0, std::sqrt(2.0 * L + 1.0) + 6.0);
  return xi_max / params_.alpha();
}

double ExpansionState::residual_norm(int L) const {
  if (L < 0 || L > L_max())
    throw std::out_of_range("residual_norm: L out of range");
  double s = 0.0;
  for (int k = L_max() - 1; k >= L; --k) s += std::norm(coeffs(k));
  return std::sqrt(s);
}

Complex ExpansionState::evaluate(double x, int L) const {
  const int n = (L < 0) ? L_max() : std::min(L, L_max());
  if (n == 0) return 0.0;
  std::vector<double> u(n);
  basis->eigenfunctions_upto(n - 1, x, u.data());
  Complex acc = 0.0;
  for (int k = 0; k < n; ++k) acc += coeffs(k) * u[k];
  return acc;
}

double residual_norm(const ExpansionState& state, int L) {
  return state.residual_norm(L);
}

static Vector project_coefficients(const std::function<Complex(double)>& psi,
                                   const EigenSystem& basis, int L, int panels,
                                   int order) {
  const double a = basis.window_min(L), b = basis.window_max(L);
  Vector coeffs = Vector::Zero(L);
  std::vector<double> x, w;
  const double h = (b - a) / panels;
  std::vector<double> u(L);
  for (int p = 0; p < panels; ++p) {
    gauss_legendre_on(order, a + p * h, a + (p + 1) * h, x, w);
    for (int i = 0; i < order; ++i) {
      basis.eigenfunctions_upto(L - 1, x[i], u.data());
      const Complex f = psi(x[i]) * w[i];
      for (int k = 0; k < L; ++k) coeffs(k) += u[k] * f;
    }
  }
  return coeffs;
}

ExpansionState expand_state(const std::function<Complex(double)>& psi,
                            std::shared_ptr<const EigenSystem> basis, int L) {
  if (L < 1) throw contract_violation("expand_state: L must be >= 1");
  // Panel count scales with the number of eigenfunction oscillations.
  const int panels = std::max(16, L);
  Vector c1 = project_coefficients(psi, *basis, L, panels, 16);
  Vector c2 = project_coefficients(psi, *basis, L, 2 * panels, 16);
  const double disagreement = (c1 - c2).norm();
  if (disagreement > 1e-8)
    throw accuracy_error("expand_state: quadrature did not converge",
                         disagreement);
  ExpansionState s;
  s.basis = std::move(basis);
  s.coeffs = std::move(c2);
  const double total = s.coeffs.norm();
  if (total * total > 1.0 + 1e-8)
    throw accuracy_error("expand_state: coefficient norm exceeds state norm",
                         total);
  return s;
}

ExpansionState eigensum_evolution(const ExpansionState& state,
                                  LogicalSign sign, double t) {
  ExpansionState out = state;
  const double a = sign;
  for (int k = 0; k < state.L_max(); ++k)
    out.coeffs(k) =
        state.coeffs(k) *
        std::exp(-I_UNIT * a * state.basis->eigenvalue(k) * t /
                 state.basis->params().hbar);
  return out;
}

std::function<Complex(double)> coherent_displacement_packet(
    const PhysicalParams& params, double beta) {
  const double al = params.alpha();
  const double x0 = std::sqrt(2.0) * beta / al;
  const double norm = std::sqrt(al) * std::pow(PI, -0.25);
  return [al, x0, norm](double x) {
    const double xi = al * (x - x0);
    return Complex(norm * std::exp(-0.5 * xi * xi), 0.0);
  };
}

std::function<Complex(double)> gaussian_packet_function(double x0, double p0,
                                                        double w, double hbar) {
  if (w <= 0) throw contract_violation("gaussian packet: width must be > 0");
  const double norm = std::pow(2.0 * PI * w * w, -0.25);
  return [=](double x) {
    const double dx = x - x0;
    return norm * std::exp(Complex(-dx * dx / (4.0 * w * w), p0 * dx / hbar));
  };
}

Matrix fock_position(int n, const PhysicalParams& params) {
  const double c = std::sqrt(params.hbar / (2.0 * params.mass * params.omega));
  Matrix x = Matrix::Zero(n, n);
  for (int k = 0; k < n - 1; ++k) {
    x(k, k + 1) = c * std::sqrt(k + 1.0);
    x(k + 1, k) = c * std::sqrt(k + 1.0);
  }
  return x;
}

Matrix fock_momentum(int n, const PhysicalParams& params) {
  const double c =
      std::sqrt(params.mass * params.hbar * params.omega / 2.0);
  Matrix p = Matrix::Zero(n, n);
  for (int k = 0; k < n - 1; ++k) {
    p(k, k + 1) = Complex(0.0, -c * std::sqrt(k + 1.0));
    p(k + 1, k) = Complex(0.0, +c * std::sqrt(k + 1.0));
  }
  return p;
}

Matrix fock_number_hamiltonian(int n, const PhysicalParams& params) {
  Matrix h = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) h(k, k) = (k + 0.5) * params.hbar * params.omega;
  return h;
}

} // namespace sicprop
