#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>

namespace framekit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Thrown when an operator that must be inverted is numerically singular.
/// For frame operators this means the input is not a frame.
class not_invertible_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// <x,y> = sum_k x_k conj(y_k), conjugate-linear in the second slot. With this
/// convention the analysis operator of a vector system Phi is exactly Phi*.
inline Complex inner(const Vector& x, const Vector& y) { return y.dot(x); }

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline Matrix adjoint(const Matrix& m) { return m.adjoint(); }

/// Scale-relative Hermitian tolerance: 1e-8 * max(1, |M|_max).
inline double hermitian_tolerance(const Matrix& m) {
  return 1e-8 * std::max(1.0, max_abs(m));
}

inline bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - Matrix(m.adjoint())) <= tol;
}

/// Ascending eigenvalues of a Hermitian matrix. The input is symmetrized as
/// (M + M*)/2 before factorization; matrices failing the Hermitian tolerance
/// are rejected.
inline RealVector hermitian_eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
  if (!is_hermitian(m, hermitian_tolerance(m)))
    throw std::invalid_argument(
        "hermitian_eigenvalues: matrix is not Hermitian within tolerance");
  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigenvalues: eigensolver did not converge");
  return solver.eigenvalues();
}

struct OrthonormalBasis {
  Matrix q;    // columns form an orthonormal basis of the input's column span
  Index rank;  // numerical rank under the cut used
};

/// Orthonormal basis of the column span, with rank detection. Directions with
/// sigma_i <= rank_tol * sigma_max are cut; rank_tol <= 0 selects the default
/// 1e-10 * max(rows, cols).
inline OrthonormalBasis orthonormalize(const Matrix& vectors, double rank_tol = 0.0) {
  if (vectors.rows() < 1 || vectors.cols() < 1)
    throw std::invalid_argument("orthonormalize: empty input");
  if (!vectors.allFinite())
    throw std::invalid_argument("orthonormalize: input has non-finite entries");
  if (rank_tol <= 0.0)
    rank_tol = 1e-10 * static_cast<double>(std::max(vectors.rows(), vectors.cols()));
  Eigen::JacobiSVD<Matrix> svd(vectors, Eigen::ComputeThinU);
  const Eigen::VectorXd sigma = svd.singularValues();
  const double sigma_max = sigma(0);
  if (!(sigma_max > 0.0))
    throw std::invalid_argument("orthonormalize: input spans only the zero vector (rank 0)");
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > rank_tol * sigma_max) ++rank;
  return {svd.matrixU().leftCols(rank), rank};
}

/// Solve M X = B for Hermitian positive definite M. Definiteness is gated
/// explicitly: lambda_min must exceed 1e-10 * max(1, lambda_max), otherwise a
/// not_invertible_error is raised. The solve itself is a Cholesky factorization.
inline Matrix solve_hpd(const Matrix& m, const Matrix& rhs) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("solve_hpd: matrix must be square");
  if (rhs.rows() != m.rows())
    throw std::invalid_argument("solve_hpd: right-hand side has mismatched rows");
  if (!is_hermitian(m, hermitian_tolerance(m)))
    throw std::invalid_argument("solve_hpd: matrix is not Hermitian within tolerance");
  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("solve_hpd: eigensolver did not converge");
  const double lambda_min = solver.eigenvalues()(0);
  const double lambda_max = solver.eigenvalues()(sym.rows() - 1);
  const double pd_tol = 1e-10 * std::max(1.0, lambda_max);
  if (lambda_min <= pd_tol)
    throw not_invertible_error("solve_hpd: matrix is not invertible (lambda_min = " +
                               std::to_string(lambda_min) + ")");
  return sym.llt().solve(rhs);
}

inline Vector solve_hpd(const Matrix& m, const Vector& rhs) {
  return Vector(solve_hpd(m, Matrix(rhs)));
}

}  // namespace framekit
