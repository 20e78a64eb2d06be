#include "sicprop/green_calculus.hpp"

#include <cmath>

namespace sicprop {

namespace {

Complex principal_sqrt(Complex z) { return std::sqrt(z); }

void require_caustic_free(double theta_s) {
  if (std::abs(std::sin(theta_s)) < tol::caustic_eps) {
    const long n = std::lround(theta_s / PI);
    throw caustic_error("harmonic kernel caustic: omega*a*T ~ n*pi with n = " +
                        std::to_string(n));
  }
}

} // namespace

PotentialPhaseKernel potential_phase_green(
    const std::function<double(double)>& V, const SicInterval& interval,
    double hbar) {
  PotentialPhaseKernel k;
  const double a = interval.sign, T = interval.T_m;
  k.phase = [V, a, T, hbar](double x) { return -a * V(x) * T / hbar; };
  return k;
}

Complex free_green(double xa, double xb, const SicInterval& interval,
                   const PhysicalParams& params) {
  const double tau = interval.effective();
  if (tau == 0.0)
    throw caustic_error("free_green: effective time 0 is the delta limit");
  const double m = params.mass, hb = params.hbar;
  const Complex pref =
      principal_sqrt(Complex(m, 0) / (I_UNIT * 2.0 * PI * hb * tau));
  const double dx = xb - xa;
  return pref * std::exp(I_UNIT * m * dx * dx / (2.0 * hb * tau));
}

MehlerValues mehler_kernel(double x, double y, Complex s, int terms) {
  if (std::abs(s) > 1.0 + 1e-12)
    throw contract_violation("mehler_kernel: |s| must be <= 1");
  if (std::abs(s - 1.0) < 1e-12 || std::abs(s + 1.0) < 1e-12)
    throw caustic_error("mehler_kernel: series may diverge at s = +-1");
  MehlerValues out;
  // h_k = H_k / sqrt(2^k k!) keeps the recurrence in range.
  double hx0 = 1.0, hy0 = 1.0;
  double hx1 = std::sqrt(2.0) * x, hy1 = std::sqrt(2.0) * y;
  Complex sk = 1.0;
  Complex acc = hx0 * hy0;
  double scale = std::abs(hx0 * hy0);
  for (int k = 1; k < terms; ++k) {
    sk *= s;
    acc += hx1 * hy1 * sk;
    scale += std::abs(hx1 * hy1 * sk);
    const double hx2 =
        (std::sqrt(2.0 / (k + 1.0)) * x * hx1 - std::sqrt(k / (k + 1.0)) * hx0);
    const double hy2 =
        (std::sqrt(2.0 / (k + 1.0)) * y * hy1 - std::sqrt(k / (k + 1.0)) * hy0);
    hx0 = hx1;
    hx1 = hx2;
    hy0 = hy1;
    hy1 = hy2;
  }
  out.series = acc;
  out.term_scale = scale;
  const Complex s2 = s * s;
  out.closed = std::exp(-(s2 * (x * x + y * y) - 2.0 * s * x * y) /
                        (1.0 - s2)) /
               principal_sqrt(1.0 - s2);
  return out;
}

Complex harmonic_green(double xa, double xb, const SicInterval& interval,
                       const PhysicalParams& params) {
  const double theta = params.omega * interval.effective();
  require_caustic_free(theta);
  const double m = params.mass, w = params.omega, hb = params.hbar;
  const double st = std::sin(theta), ct = std::cos(theta);
  const Complex pref =
      principal_sqrt(Complex(m * w, 0) / (I_UNIT * 2.0 * PI * hb * st));
  return pref * std::exp(I_UNIT * m * w / (2.0 * hb * st) *
                         ((xa * xa + xb * xb) * ct - 2.0 * xa * xb));
}

Complex harmonic_green_damped(double xa, double xb,
                              const SicInterval& interval,
                              const PhysicalParams& params, double damping) {
  const double theta = params.omega * interval.effective();
  const Complex s = (1.0 - damping) * std::exp(-I_UNIT * theta);
  const double al = params.alpha();
  const double xia = al * xa, xib = al * xb;
  const Complex s2 = s * s;
  const Complex closed = std::exp(-(s2 * (xia * xia + xib * xib) -
                                    2.0 * s * xia * xib) /
                                  (1.0 - s2)) /
                         principal_sqrt(1.0 - s2);
  return (al / std::sqrt(PI)) * std::exp(-I_UNIT * 0.5 * theta) *
         std::exp(-0.5 * (xia * xia + xib * xib)) * closed;
}

Complex driven_green(double xa, double xb, const SicInterval& interval,
                     const PhysicalParams& params, double f) {
  const double theta = params.omega * interval.effective();
  require_caustic_free(theta);
  const double m = params.mass, w = params.omega, hb = params.hbar;
  const double st = std::sin(theta), ct = std::cos(theta);
  const Complex pref =
      principal_sqrt(Complex(m * w, 0) / (I_UNIT * 2.0 * PI * hb * st));
  Complex exponent =
      I_UNIT * m * w / (2.0 * hb * st) * ((xa * xa + xb * xb) * ct -
                                          2.0 * xa * xb);
  exponent += I_UNIT * (f / (hb * w)) * ((ct - 1.0) / st) * (xb + xa);
  exponent += I_UNIT * (f * f / (2.0 * m * hb * w * w * w)) *
              ((2.0 * ct + theta * st - 2.0) / st);
  return pref * std::exp(exponent);
}

Complex eigensum_green(const EigenSystem& basis, const SicInterval& interval,
                       double xa, double xb, int L, double damping) {
  if (damping < 0.0 || damping >= 1.0)
    throw contract_violation("eigensum_green: damping must be in [0, 1)");
  const double a = interval.sign, T = interval.T_m;
  const double hb = basis.params().hbar;
  std::vector<double> ua(L), ub(L);
  basis.eigenfunctions_upto(L - 1, xa, ua.data());
  basis.eigenfunctions_upto(L - 1, xb, ub.data());
  Complex acc = 0.0;
  double damp = 1.0;
  for (int k = 0; k < L; ++k) {
    acc += std::exp(-I_UNIT * a * basis.eigenvalue(k) * T / hb) * damp *
           ua[k] * ub[k];
    damp *= (1.0 - damping);
  }
  return acc;
}

Complex square_well_green(double xa, double xb, const SicInterval& interval,
                          const PhysicalParams& params, double width,
                          int n_images) {
  if (xa < 0.0 || xa > width || xb < 0.0 || xb > width)
    throw contract_violation("square_well_green: points outside the well");
  const double tau = interval.effective();
  if (tau == 0.0)
    throw caustic_error("square_well_green: effective time 0");
  const double m = params.mass, hb = params.hbar;
  const Complex pref =
      principal_sqrt(Complex(m, 0) / (I_UNIT * 2.0 * PI * hb * tau));
  const double c = m / (2.0 * hb * tau);
  Complex acc = 0.0;
  for (int n = -n_images; n <= n_images; ++n) {
    const double dminus = xb - xa + 2.0 * n * width;
    const double dplus = xb + xa + 2.0 * n * width;
    acc += std::exp(I_UNIT * c * dminus * dminus) -
           std::exp(I_UNIT * c * dplus * dplus);
  }
  return pref * acc;
}

Complex QuadraticGreenForm::canonical_prefactor(double m, double hbar,
                                                double S_ab) {
  return principal_sqrt(Complex(m * (-S_ab), 0) /
                        (I_UNIT * 2.0 * PI * hbar));
}

Complex QuadraticGreenForm::evaluate(double xa, double xb) const {
  const Complex exponent =
      I_UNIT / hbar *
      (0.5 * m * (S_bb * xb * xb + 2.0 * S_ab * xa * xb + S_aa * xa * xa) +
       Q_a * xa + Q_b * xb + Theta_0);
  return prefactor * std::exp(exponent);
}

QuadraticGreenForm free_form(const PhysicalParams& params,
                             const SicInterval& interval) {
  const double tau = interval.effective();
  if (tau == 0.0) throw caustic_error("free_form: effective time 0");
  QuadraticGreenForm g;
  g.m = params.mass;
  g.hbar = params.hbar;
  g.S_bb = g.S_aa = 1.0 / tau;
  g.S_ab = -1.0 / tau;
  g.prefactor = QuadraticGreenForm::canonical_prefactor(g.m, g.hbar, g.S_ab);
  return g;
}

QuadraticGreenForm harmonic_form(const PhysicalParams& params,
                                 const SicInterval& interval) {
  const double theta = params.omega * interval.effective();
  require_caustic_free(theta);
  const double w = params.omega;
  QuadraticGreenForm g;
  g.m = params.mass;
  g.hbar = params.hbar;
  g.S_bb = g.S_aa = w * std::cos(theta) / std::sin(theta);
  g.S_ab = -w / std::sin(theta);
  g.prefactor = QuadraticGreenForm::canonical_prefactor(g.m, g.hbar, g.S_ab);
  return g;
}

QuadraticGreenForm driven_form(const PhysicalParams& params,
                               const SicInterval& interval, double f) {
  const double theta = params.omega * interval.effective();
  require_caustic_free(theta);
  const double w = params.omega, m = params.mass;
  const double st = std::sin(theta), ct = std::cos(theta);
  QuadraticGreenForm g = harmonic_form(params, interval);
  g.Q_a = g.Q_b = (f / w) * (ct - 1.0) / st;
  g.Theta_0 = (f * f / (2.0 * m * w * w * w)) * (2.0 * ct + theta * st - 2.0) / st;
  return g;
}

QuadraticGreenForm free_image_form(const PhysicalParams& params,
                                   const SicInterval& interval, double shift,
                                   bool reflected) {
  const double tau = interval.effective();
  if (tau == 0.0) throw caustic_error("free_image_form: effective time 0");
  const double m = params.mass;
  QuadraticGreenForm g;
  g.m = m;
  g.hbar = params.hbar;
  g.S_bb = 1.0 / tau;
  g.S_aa = 1.0 / tau;
  g.S_ab = (reflected ? +1.0 : -1.0) / tau;
  g.Q_b = m * shift / tau;
  g.Q_a = (reflected ? +1.0 : -1.0) * m * shift / tau;
  g.Theta_0 = 0.5 * m * shift * shift / tau;
  // Every image carries the plain free prefactor regardless of reflection.
  g.prefactor = QuadraticGreenForm::canonical_prefactor(m, g.hbar, -1.0 / tau);
  return g;
}

QuadraticGreenForm compose_quadratic(const QuadraticGreenForm& g1,
                                     const QuadraticGreenForm& g2) {
  if (g1.m != g2.m || g1.hbar != g2.hbar)
    throw contract_violation("compose_quadratic: mismatched m or hbar");
  const double den = g2.S_aa + g1.S_bb; // S_cc' + S_cc
  const double scale =
      std::max({std::abs(g2.S_aa), std::abs(g1.S_bb), 1.0});
  if (std::abs(den) < 1e-9 * scale)
    throw caustic_error("compose_quadratic: degenerate Gaussian denominator");
  const double Qc = g1.Q_b, Qcp = g2.Q_a;
  QuadraticGreenForm out;
  out.m = g1.m;
  out.hbar = g1.hbar;
  out.S_bb = g2.S_bb - g2.S_ab * g2.S_ab / den;
  out.S_ab = -g2.S_ab * g1.S_ab / den;
  out.S_aa = g1.S_aa - g1.S_ab * g1.S_ab / den;
  out.Q_b = g2.Q_b - g2.S_ab * (Qcp + Qc) / den;
  out.Q_a = g1.Q_a - g1.S_ab * (Qcp + Qc) / den;
  out.Theta_0 = g2.Theta_0 + g1.Theta_0 -
                (Qcp + Qc) * (Qcp + Qc) / (2.0 * out.m * den);
  out.prefactor =
      g1.prefactor * g2.prefactor *
      principal_sqrt(I_UNIT * 2.0 * PI * out.hbar / (out.m * den));
  return out;
}

GaussianPacket::GaussianPacket(double x0, double w, double p0, double hb)
    : hbar(hb) {
  if (w <= 0) throw contract_violation("GaussianPacket: width must be > 0");
  A = Complex(1.0 / (4.0 * w * w), 0.0);
  B = 2.0 * A * x0 + I_UNIT * p0 / hb;
  C = -A * x0 * x0 - I_UNIT * p0 * x0 / hb -
      0.25 * std::log(2.0 * PI * w * w);
}

double GaussianPacket::norm() const {
  const double a = 2.0 * A.real();
  if (a <= 0) throw contract_violation("GaussianPacket: not normalizable");
  const double b = 2.0 * B.real();
  const double c = 2.0 * C.real();
  return std::sqrt(std::sqrt(PI / a) * std::exp(b * b / (4.0 * a) + c));
}

double GaussianPacket::center() const { return B.real() / (2.0 * A.real()); }

double GaussianPacket::width() const {
  return 1.0 / (2.0 * std::sqrt(A.real()));
}

double GaussianPacket::momentum() const {
  return hbar * (B.imag() - 2.0 * A.imag() * center());
}

Complex GaussianPacket::overlap(const GaussianPacket& other) const {
  const Complex a = std::conj(A) + other.A;
  if (a.real() <= 0)
    throw contract_violation("GaussianPacket::overlap: not integrable");
  const Complex b = std::conj(B) + other.B;
  const Complex c = std::conj(C) + other.C;
  return principal_sqrt(PI / a) * std::exp(b * b / (4.0 * a) + c);
}

GaussianPacket GaussianPacket::normalized() const {
  GaussianPacket out = *this;
  out.C -= std::log(norm());
  return out;
}

GaussianPacket propagate_packet(const GaussianPacket& packet,
                                const QuadraticGreenForm& g) {
  const double hb = g.hbar;
  const Complex Ap = packet.A - I_UNIT * g.m * g.S_aa / (2.0 * hb);
  if (Ap.real() <= 0)
    throw contract_violation("propagate_packet: Gaussian integral diverges");
  const Complex beta0 = packet.B + I_UNIT * g.Q_a / hb;
  const Complex beta1 = I_UNIT * g.m * g.S_ab / hb;
  GaussianPacket out;
  out.hbar = hb;
  out.A = -I_UNIT * g.m * g.S_bb / (2.0 * hb) - beta1 * beta1 / (4.0 * Ap);
  out.B = I_UNIT * g.Q_b / hb + beta0 * beta1 / (2.0 * Ap);
  out.C = I_UNIT * g.Theta_0 / hb + packet.C + beta0 * beta0 / (4.0 * Ap) +
          std::log(g.prefactor * principal_sqrt(PI / Ap));
  return out;
}

QuarterPeriodCheck quarter_period_conjugation(const PhysicalParams& params,
                                              double t_m, LogicalSign sign,
                                              int N_fock, bool swap_t_and_v) {
  if (N_fock < 16)
    throw contract_violation("quarter_period_conjugation: N_fock >= 16");
  const double hb = params.hbar;
  const Matrix x = fock_position(N_fock, params);
  const Matrix p = fock_momentum(N_fock, params);
  const Matrix kin = p * p / (2.0 * params.mass);
  const Matrix pot = 0.5 * params.mass * params.omega * params.omega * (x * x);
  const Matrix h0 = kin + pot;
  const double t_c = PI / (2.0 * params.omega);
  const Matrix inner = swap_t_and_v ? kin : pot;
  const Matrix outer = swap_t_and_v ? pot : kin;
  const double a = sign;

  QuarterPeriodCheck out;
  const Matrix rot = mat_exp(h0, -I_UNIT * t_c / hb);
  out.lhs = rot.adjoint() * mat_exp(inner, -I_UNIT * a * t_m / hb) * rot;
  out.rhs = mat_exp(outer, -I_UNIT * a * t_m / hb);
  const int half = N_fock / 2;
  out.defect = (out.lhs - out.rhs).topLeftCorner(half, half).norm();
  return out;
}

} // namespace sicprop
