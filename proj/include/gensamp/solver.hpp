#pragma once

#include <utility>

#include <Eigen/Dense>

#include "gensamp/assembly.hpp"

namespace gensamp {

struct SolveReport {
  Eigen::VectorXcd coefficients;
  int iterations = 0;
  /// ||U^H U a - U^H f|| / ||U^H f||, recomputed from the returned a.
  double relative_residual = 0.0;
  bool converged = false;
};

/// A = U^H U, symmetrized.
Eigen::MatrixXcd normal_matrix(const Eigen::MatrixXcd& U);
inline Eigen::MatrixXcd normal_matrix(const DesignMatrix& U) { return normal_matrix(U.U); }

/// Conjugate gradients on A a = U^H f from a = 0, no preconditioner. A is
/// formed explicitly only when n <= 64. Non-convergence is reported, not thrown.
SolveReport cgnr_solve(const Eigen::MatrixXcd& U, const Eigen::VectorXcd& rhs, double tol, int maxit);
SolveReport cgnr_solve(const DesignMatrix& U, const Eigen::VectorXcd& rhs, double tol, int maxit);

/// Plain CG on A x = b (A Hermitian PD), same stopping rule and report as cgnr_solve.
SolveReport cg_solve(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, double tol, int maxit);

/// Extreme eigenvalues of a Hermitian matrix (Householder tridiagonalization + implicit QR).
std::pair<double, double> hermitian_eig_extremes(const Eigen::MatrixXcd& B);

/// lambda_min(D^{-H} A D^{-1}) with Atilde = D^H D; throws DomainError if Atilde is not PD.
double generalized_lambda_min(const Eigen::MatrixXcd& Atilde, const Eigen::MatrixXcd& A);

/// lambda_max / lambda_min.
double condition_number(const Eigen::MatrixXcd& B);

}  // namespace gensamp
