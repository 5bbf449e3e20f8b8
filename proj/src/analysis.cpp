#include "gensamp/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "gensamp/error.hpp"
#include "gensamp/solver.hpp"

namespace gensamp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kThetaBudget = 1000000;

}  // namespace

double K_from_C(double C) {
  if (!(C > 0.0)) return std::numeric_limits<double>::infinity();
  return std::sqrt(1.0 + std::max(0.0, 1.0 - C) / (C * C));
}

DiagnosticsReport compute_diagnostics(const DesignMatrix& U) {
  DiagnosticsReport rep;
  const Eigen::MatrixXcd A = normal_matrix(U);
  const Eigen::MatrixXd G = gram_matrix(U.space);
  const auto [lo, hi] = hermitian_eig_extremes(A);
  rep.kappa_A = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (G.isIdentity(0.0)) {
    rep.C_nm = lo;
    rep.kappa_Atilde = 1.0;
  } else {
    const Eigen::MatrixXcd Gc = G.cast<cplx>();
    rep.C_nm = generalized_lambda_min(Gc, A);
    rep.kappa_Atilde = condition_number(Gc);
  }
  rep.D_nm_bound = std::sqrt(std::max(0.0, 1.0 - rep.C_nm));
  rep.K_nm = K_from_C(rep.C_nm);
  return rep;
}

DiagnosticsReport compute_diagnostics(const std::vector<DesignMatrix>& tensor_factors) {
  if (tensor_factors.empty()) throw DomainError("compute_diagnostics: no factors");
  DiagnosticsReport rep;
  rep.C_nm = 1.0;
  rep.kappa_A = 1.0;
  rep.kappa_Atilde = 1.0;
  // Eigenvalues of a Kronecker product are the products of the factors' eigenvalues.
  for (const auto& f : tensor_factors) {
    const auto r = compute_diagnostics(f);
    rep.C_nm *= r.C_nm;
    rep.kappa_A *= r.kappa_A;
    rep.kappa_Atilde *= r.kappa_Atilde;
  }
  rep.D_nm_bound = std::sqrt(std::max(0.0, 1.0 - rep.C_nm));
  rep.K_nm = K_from_C(rep.C_nm);
  return rep;
}

double compute_Cnm(const SamplingScheme& scheme, const ReconstructionSpace& space) {
  if (space.is_tensor()) {
    std::vector<DesignMatrix> parts;
    for (const auto& f : space.factors()) parts.push_back(assemble(scheme, f));
    return compute_diagnostics(parts).C_nm;
  }
  const DesignMatrix U = assemble(scheme, space);
  const Eigen::MatrixXcd A = normal_matrix(U);
  const Eigen::MatrixXd G = gram_matrix(space);
  if (G.isIdentity(0.0)) return hermitian_eig_extremes(A).first;
  return generalized_lambda_min(G.cast<cplx>(), A);
}

ThetaResult compute_Theta(const ReconstructionSpace& space, double theta, const SchemeFamily& family) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("compute_Theta: theta must lie in (0, 1)");
  const bool fourier = family(2).fourier_kind();
  // Budget m <-> effective index e: Fourier kinds e = floor(m/2), m = 2e.
  auto budget = [&](int e) { return fourier ? 2 * e : e; };
  auto C_at = [&](int e) { return compute_Cnm(family(budget(e)), space); };

  int e_hi = std::max(1, fourier ? space.dim() / 2 : space.dim());
  int e_lo = 0;  // largest index known to fail (0 = none tested)
  double C_hi = C_at(e_hi);
  while (C_hi < theta) {
    e_lo = e_hi;
    e_hi *= 2;
    if (budget(e_hi) > kThetaBudget) {
      throw BudgetExceeded("compute_Theta: no m <= 1e6 reaches C >= " + std::to_string(theta));
    }
    C_hi = C_at(e_hi);
  }
  while (e_hi - e_lo > 1) {
    const int mid = e_lo + (e_hi - e_lo) / 2;
    const double C = C_at(mid);
    if (C >= theta) {
      e_hi = mid;
      C_hi = C;
    } else {
      e_lo = mid;
    }
  }
  return {budget(e_hi), C_hi};
}

double bound_Cnm_fourier(int n, int m) {
  if (m < 2) throw DomainError("bound_Cnm_fourier: m must be >= 2");
  return 1.0 - 4.0 * (kPi - 2.0) * n * n / (kPi * kPi * (2.0 * (m / 2) - 1.0));
}

double bound_oversampled(int n, int m, double c) {
  if (!(c >= 1.0)) throw DomainError("bound_oversampled: c must be >= 1");
  if (m < 2) throw DomainError("bound_oversampled: m must be >= 2");
  return 1.0 - 4.0 * (kPi - 2.0) * c * n * n / (kPi * kPi * (2.0 * (m / 2) - 1.0));
}

namespace {

double weighted_degree_sum(const std::vector<int>& degrees, const std::vector<double>& half_lengths) {
  if (degrees.size() != half_lengths.size() || degrees.empty()) {
    throw DomainError("piecewise bound: degrees and half-lengths must match");
  }
  double s = 0.0;
  for (std::size_t r = 0; r < degrees.size(); ++r) {
    if (!(half_lengths[r] > 0.0)) throw DomainError("piecewise bound: half-lengths must be positive");
    s += static_cast<double>(degrees[r]) * degrees[r] / half_lengths[r];
  }
  return s;
}

}  // namespace

double bound_Cnm_piecewise(const std::vector<int>& degrees, const std::vector<double>& half_lengths, int m) {
  if (m < 2) throw DomainError("bound_Cnm_piecewise: m must be >= 2");
  return 1.0 - 4.0 * (kPi - 2.0) * weighted_degree_sum(degrees, half_lengths) / (kPi * kPi * (2.0 * (m / 2) - 1.0));
}

int bound_theta_global(int n, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("bound_theta_global: theta must lie in (0, 1)");
  return 2 * static_cast<int>(std::ceil(0.5 + 2.0 * (kPi - 2.0) * n * n / (kPi * kPi * (1.0 - theta))));
}

double bound_theta_asymptotic(int n, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("bound_theta_asymptotic: theta must lie in (0, 1)");
  return 4.0 * n * n / (kPi * kPi * (1.0 - theta));
}

int bound_theta_piecewise(const std::vector<int>& degrees, const std::vector<double>& half_lengths, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("bound_theta_piecewise: theta must lie in (0, 1)");
  const double s = weighted_degree_sum(degrees, half_lengths);
  return 2 * static_cast<int>(std::ceil(0.5 + 2.0 * (kPi - 2.0) * s / (kPi * kPi * (1.0 - theta))));
}

ModifiedFourierThetaBound bound_theta_modified_fourier(int n, double theta) {
  if (n < 1) throw DomainError("bound_theta_modified_fourier: n must be >= 1");
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("bound_theta_modified_fourier: theta must lie in (0, 1)");
  const double lead = 2.0 / (kPi * std::sqrt(1.0 - theta));
  ModifiedFourierThetaBound out{};
  out.global = static_cast<int>(std::ceil(lead * n * n / std::sqrt(2.0)));
  // Remainder R in (-6, 13); R = -6 makes the bracket smallest, k_n largest.
  const double h = n + 0.5;
  const double knn2 = h * h / kPi / (1.0 - (kPi * kPi - 3.0) / (12.0 * h * h) - 6.0 / (h * h * h * h));
  out.asymptotic = lead * knn2;
  return out;
}

double tensor_Cnm(const std::vector<double>& factor_Cs) {
  double p = 1.0;
  for (double c : factor_Cs) {
    if (!(c >= 0.0 && c <= 1.0 + 1e-10)) throw DomainError("tensor_Cnm: factor constants must lie in [0, 1]");
    p *= c;
  }
  return p;
}

}  // namespace gensamp
