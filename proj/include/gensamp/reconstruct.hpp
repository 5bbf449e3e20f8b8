#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gensamp/analysis.hpp"
#include "gensamp/bases.hpp"
#include "gensamp/solver.hpp"
#include "gensamp/spaces.hpp"
#include "gensamp/testfunctions.hpp"

namespace gensamp {

/// Samples of a 2-D function against a tensor of two schemes, row-major (second index fastest).
struct TensorSamples {
  std::vector<SamplingScheme> schemes;
  std::vector<cplx> values;
};

/// Tensor Gauss quadrature of f(x, y) conj(psi_j(x) psi_k(y)); the panel count is
/// doubled until two successive estimates agree to 1e-13.
TensorSamples sample_function_2d(const RealFn2& f, std::span<const double> breakpoints,
                                 const std::vector<SamplingScheme>& schemes);

struct Reconstruction {
  ReconstructionSpace space;
  Eigen::VectorXcd coefficients;
  DiagnosticsReport diagnostics;
  SolveReport solve;
  /// Largest |imag| among the coefficients before they are dropped on evaluation.
  double max_imag = 0.0;
};

struct ReconstructOptions {
  double tol = 1e-12;
  /// 0 picks 10 n + 200.
  int maxit = 0;
  bool diagnostics = true;
};

Reconstruction reconstruct(const SampleVector& samples, const ReconstructionSpace& space,
                           const ReconstructOptions& opts = {});
Reconstruction reconstruct(const SampleVector& samples, const ReconstructionSpace& space, double tol);
/// Two-factor tensor spaces only.
Reconstruction reconstruct(const TensorSamples& samples, const ReconstructionSpace& space,
                           const ReconstructOptions& opts = {});

/// Real part of sum_k a_k phi_k at each point (1-D spaces).
std::vector<double> evaluate(const Reconstruction& r, std::span<const double> points);
/// Values on xs x ys for a two-factor tensor space; result(i, j) at (xs[i], ys[j]).
Eigen::MatrixXd evaluate_grid(const Reconstruction& r, std::span<const double> xs, std::span<const double> ys);

/// Orthogonal projection Q_n f: coefficient integrals, then a Gram solve unless lambda = 1/2.
Reconstruction best_approximation(const RealFn& f, std::span<const double> breakpoints,
                                  const ReconstructionSpace& space);
Reconstruction best_approximation_2d(const RealFn2& f, const ReconstructionSpace& space);

/// L2 norm of the difference of two reconstructions in the same space.
double l2_difference(const Reconstruction& a, const Reconstruction& b);
double l2_norm(const Reconstruction& r);

struct ErrorMetrics {
  double linf_grid = 0.0;
  double l2 = 0.0;
};

/// Max error on 2049 uniform points (breakpoints skipped) and breakpoint-aware L2 error.
ErrorMetrics error_metrics(const RealFn& f, std::span<const double> breakpoints, const Reconstruction& r);
/// 257 x 257 grid and tensor Gauss L2 error.
ErrorMetrics error_metrics_2d(const RealFn2& f, const Reconstruction& r);

std::vector<double> uniform_grid(int count, double a = -1.0, double b = 1.0);

}  // namespace gensamp
