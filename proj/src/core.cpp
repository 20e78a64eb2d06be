#include "sicprop/core.hpp"

#include <cmath>

namespace sicprop {

double GlobalPhase::canonical(double a) {
  double r = std::remainder(a, 2.0 * PI); // (-pi, pi], remainder gives [-pi, pi]
  if (r <= -PI) r += 2.0 * PI;
  return r;
}

Matrix tensor(const Matrix& A, const Matrix& B) {
  const long da = A.rows(), db = B.rows();
  if (da < 1 || db < 1 || A.cols() != da || B.cols() != db)
    throw dimension_mismatch("tensor: operands must be square, dim >= 1");
  if (da > tol::max_dimension / db)
    throw capacity_error("tensor: product dimension exceeds configured max");
  Matrix out(da * db, da * db);
  for (long i = 0; i < da; ++i)
    for (long j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = A(i, j) * B;
  return out;
}

Vector tensor(const Vector& a, const Vector& b) {
  const long da = a.size(), db = b.size();
  if (da > tol::max_dimension / db)
    throw capacity_error("tensor: product dimension exceeds configured max");
  Vector out(da * db);
  for (long i = 0; i < da; ++i) out.segment(i * db, db) = a(i) * b;
  return out;
}

Matrix mat_exp(const Matrix& H, Complex scale) {
  const long n = H.rows();
  if (H.cols() != n) throw dimension_mismatch("mat_exp: matrix must be square");
  if (hermiticity_defect(H) > tol::hermiticity_factor * static_cast<double>(n))
    throw contract_violation("mat_exp: input is not Hermitian to tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  Vector z(n);
  for (long k = 0; k < n; ++k) z(k) = std::exp(scale * es.eigenvalues()(k));
  return es.eigenvectors() * z.asDiagonal() * es.eigenvectors().adjoint();
}

double unitarity_defect(const Matrix& U) {
  const long n = U.rows();
  return (U.adjoint() * U - Matrix::Identity(n, n)).norm();
}

double hermiticity_defect(const Matrix& H) { return (H - H.adjoint()).norm(); }

double fidelity_up_to_phase(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw dimension_mismatch("fidelity_up_to_phase: dimension mismatch");
  require_normalized(a, "fidelity_up_to_phase");
  require_normalized(b, "fidelity_up_to_phase");
  return std::abs(a.dot(b));
}

void require_normalized(const Vector& psi, const char* who) {
  double n = psi.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-8)
    throw contract_violation(std::string(who) + ": state is not normalized");
}

Matrix spin_half_op(char axis) {
  Matrix s(2, 2);
  switch (axis) {
    case 'x': s << 0, 0.5, 0.5, 0; break;
    case 'y': s << 0, Complex(0, -0.5), Complex(0, 0.5), 0; break;
    case 'z': s << 0.5, 0, 0, -0.5; break;
    default: throw contract_violation("spin_half_op: axis must be x, y or z");
  }
  return s;
}

Matrix identity_op(long dim) { return Matrix::Identity(dim, dim); }

} // namespace sicprop
