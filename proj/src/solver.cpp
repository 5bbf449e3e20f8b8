#include "gensamp/solver.hpp"

#include <cmath>
#include <limits>

#include "gensamp/error.hpp"

namespace gensamp {

Eigen::MatrixXcd normal_matrix(const Eigen::MatrixXcd& U) {
  Eigen::MatrixXcd A = U.adjoint() * U;
  return 0.5 * (A + A.adjoint());
}

namespace {

template <class Apply>
SolveReport conjugate_gradient(const Apply& apply, const Eigen::VectorXcd& b, double tol, int maxit) {
  SolveReport rep;
  const Eigen::Index n = b.size();
  const double bnorm = b.norm();
  rep.coefficients = Eigen::VectorXcd::Zero(n);
  if (bnorm == 0.0) {
    rep.converged = true;
    return rep;
  }
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
  Eigen::VectorXcd r = b;
  // The recursive residual drifts from the true one; restart from the true
  // residual when they disagree about convergence.
  for (int restart = 0; restart < 4 && rep.iterations < maxit; ++restart) {
    Eigen::VectorXcd p = r;
    double rr = r.squaredNorm();
    while (rep.iterations < maxit && std::sqrt(rr) > tol * bnorm) {
      const Eigen::VectorXcd Ap = apply(p);
      const cplx pAp = p.dot(Ap);
      if (!(pAp.real() > 0.0)) break;
      const double alpha = rr / pAp.real();
      x += alpha * p;
      r -= alpha * Ap;
      const double rr_new = r.squaredNorm();
      p = r + (rr_new / rr) * p;
      rr = rr_new;
      ++rep.iterations;
    }
    r = b - apply(x);
    if (r.norm() <= tol * bnorm) break;
  }
  rep.coefficients = x;
  rep.relative_residual = r.norm() / bnorm;
  rep.converged = rep.relative_residual <= tol;
  return rep;
}

}  // namespace

SolveReport cg_solve(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, double tol, int maxit) {
  if (!(tol >= 1e-15)) throw DomainError("cg_solve: tol must be >= 1e-15");
  if (A.rows() != b.size() || A.cols() != b.size()) throw DomainError("cg_solve: size mismatch");
  return conjugate_gradient([&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd { return A * v; }, b, tol, maxit);
}

SolveReport cgnr_solve(const Eigen::MatrixXcd& U, const Eigen::VectorXcd& rhs, double tol, int maxit) {
  if (!(tol >= 1e-15)) throw DomainError("cgnr_solve: tol must be >= 1e-15");
  if (rhs.size() != U.rows()) {
    throw DomainError("cgnr_solve: rhs length " + std::to_string(rhs.size()) + " != rows " +
                      std::to_string(U.rows()));
  }
  const Eigen::VectorXcd b = U.adjoint() * rhs;
  if (U.cols() <= 64) return cg_solve(normal_matrix(U), b, tol, maxit);
  return conjugate_gradient(
      [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd { return U.adjoint() * (U * v); }, b, tol, maxit);
}

SolveReport cgnr_solve(const DesignMatrix& U, const Eigen::VectorXcd& rhs, double tol, int maxit) {
  return cgnr_solve(U.U, rhs, tol, maxit);
}

std::pair<double, double> hermitian_eig_extremes(const Eigen::MatrixXcd& B) {
  if (B.rows() != B.cols() || B.rows() == 0) throw DomainError("hermitian_eig_extremes: needs a square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(B, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NonConvergence("hermitian_eig_extremes: eigensolver failed");
  const auto& ev = es.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

double generalized_lambda_min(const Eigen::MatrixXcd& Atilde, const Eigen::MatrixXcd& A) {
  if (Atilde.rows() != A.rows() || Atilde.cols() != A.cols()) {
    throw DomainError("generalized_lambda_min: size mismatch");
  }
  Eigen::LLT<Eigen::MatrixXcd> llt(Atilde);
  if (llt.info() != Eigen::Success) throw DomainError("generalized_lambda_min: Gram matrix is not positive definite");
  // Atilde = L L^H, D = L^H: D^{-H} A D^{-1} = L^{-1} A L^{-H}.
  const auto L = llt.matrixL();
  Eigen::MatrixXcd M = L.solve(A);
  M = L.solve(M.adjoint().eval()).adjoint();
  M = 0.5 * (M + M.adjoint()).eval();
  return hermitian_eig_extremes(M).first;
}

double condition_number(const Eigen::MatrixXcd& B) {
  const auto [lo, hi] = hermitian_eig_extremes(B);
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

}  // namespace gensamp
