#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gensamp/assembly.hpp"

namespace gensamp {

struct DiagnosticsReport {
  double C_nm = 0.0;
  /// sqrt(1 - C): bound on D_nm for orthonormal sampling.
  double D_nm_bound = 0.0;
  /// sqrt(1 + (1 - C) / C^2); infinite when C <= 0.
  double K_nm = 0.0;
  double kappa_A = 0.0;
  double kappa_Atilde = 0.0;
  std::optional<double> theta_target;
  std::optional<int> theta_m;
};

double K_from_C(double C);

/// C, kappa(A), kappa(Atilde) from an assembled design matrix. Tensor pairs use
/// the Kronecker identities on the factor matrices instead of forming A.
DiagnosticsReport compute_diagnostics(const DesignMatrix& U);
DiagnosticsReport compute_diagnostics(const std::vector<DesignMatrix>& tensor_factors);

/// C_nm = lambda_min(Atilde^{-1} A).
double compute_Cnm(const SamplingScheme& scheme, const ReconstructionSpace& space);

using SchemeFamily = std::function<SamplingScheme(int m)>;

struct ThetaResult {
  int m = 0;
  double C = 0.0;
};

/// Least m with C_{n,m} >= theta: doubling from m = n, then bisection on the
/// scheme's effective index. Throws BudgetExceeded past m = 1e6.
ThetaResult compute_Theta(const ReconstructionSpace& space, double theta, const SchemeFamily& family);

/// Lower bounds on C_{n,m} (may be negative, i.e. vacuous).
double bound_Cnm_fourier(int n, int m);
double bound_oversampled(int n, int m, double c);
double bound_Cnm_piecewise(const std::vector<int>& degrees, const std::vector<double>& half_lengths, int m);
inline bool is_vacuous(double lower_bound) { return !(lower_bound > 0.0); }

/// Upper bounds on Theta(n; theta).
int bound_theta_global(int n, double theta);
/// 4 n^2 / (pi^2 (1 - theta)), the leading term of the asymptotic bound.
double bound_theta_asymptotic(int n, double theta);
int bound_theta_piecewise(const std::vector<int>& degrees, const std::vector<double>& half_lengths, double theta);

struct ModifiedFourierThetaBound {
  int global;         // Markov constant k_n <= 1/sqrt2
  double asymptotic;  // Schmidt's asymptotic k_n with the worst-case remainder
};
ModifiedFourierThetaBound bound_theta_modified_fourier(int n, double theta);

/// Product of the factor constants.
double tensor_Cnm(const std::vector<double>& factor_Cs);

}  // namespace gensamp
