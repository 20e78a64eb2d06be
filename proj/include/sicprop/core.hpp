#ifndef SICPROP_CORE_HPP
#define SICPROP_CORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace sicprop {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex I_UNIT{0.0, 1.0};
inline constexpr double PI = 3.14159265358979323846;

// Tolerance policy: one-to-two orders above double accumulation at dim <= 4096.
namespace tol {
inline constexpr double unitarity_factor = 1e-10;   // scaled by dim
inline constexpr double hermiticity_factor = 1e-10; // scaled by dim
inline constexpr double normalization = 1e-12;
inline constexpr double caustic_eps = 1e-9;
inline constexpr long max_dimension = 1 << 20;
} // namespace tol

struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct contract_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct dimension_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct caustic_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct accuracy_error : std::runtime_error {
  double achieved = 0.0;
  accuracy_error(const std::string& what, double got)
      : std::runtime_error(what), achieved(got) {}
};
struct resolution_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The double-valued logical number a = +-1. Flipping it turns a propagator
// into its inverse.
struct LogicalSign {
  int value = +1;
  explicit LogicalSign(int v = +1) : value(v) {
    if (v * v != 1) throw contract_violation("LogicalSign must be +1 or -1");
  }
  LogicalSign flipped() const { return LogicalSign(-value); }
  operator double() const { return static_cast<double>(value); }
};

// Accumulated global phase, canonicalized to (-pi, pi].
struct GlobalPhase {
  double angle = 0.0;
  GlobalPhase() = default;
  explicit GlobalPhase(double a) : angle(canonical(a)) {}
  static double canonical(double a);
  GlobalPhase operator+(const GlobalPhase& o) const {
    return GlobalPhase(angle + o.angle);
  }
  Complex factor() const { return std::exp(I_UNIT * angle); }
};

// Kronecker product, A as the more significant factor: index
// j = j_A * dimB + j_B.  Matches the |m_d>...|m_1> register ordering with
// spin 1 least significant.
Matrix tensor(const Matrix& A, const Matrix& B);
Vector tensor(const Vector& a, const Vector& b);

// exp(scale * H) for Hermitian H, via eigendecomposition.  Result is unitary
// whenever scale is purely imaginary.
Matrix mat_exp(const Matrix& H, Complex scale);

double unitarity_defect(const Matrix& U);
double hermiticity_defect(const Matrix& H);

// |<a|b>| for normalized states of equal dimension.
double fidelity_up_to_phase(const Vector& a, const Vector& b);

void require_normalized(const Vector& psi, const char* who);

inline Vector basis_state(long dim, long j) {
  Vector e = Vector::Zero(dim);
  e(j) = 1.0;
  return e;
}

// Single spin-1/2 operators, I = sigma/2.
Matrix spin_half_op(char axis);
Matrix identity_op(long dim);

} // namespace sicprop

#endif
