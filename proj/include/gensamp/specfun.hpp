#pragma once

#include <vector>

namespace gensamp {

/// Gegenbauer index lambda > -1/2.
///
/// lambda = 1/2 gives Legendre, lambda = 1 Chebyshev of the second kind.
/// lambda = 0 is the degenerate point of the endpoint normalization
/// Gamma(j + 2 lambda) / (j! Gamma(2 lambda)); there every routine switches
/// to Chebyshev polynomials of the first kind T_j.
class GegenbauerParam {
 public:
  explicit GegenbauerParam(double lambda);

  double lambda() const noexcept { return lambda_; }
  bool chebyshev_t() const noexcept { return lambda_ == 0.0; }
  bool legendre() const noexcept { return lambda_ == 0.5; }

  friend bool operator==(const GegenbauerParam&, const GegenbauerParam&) = default;

 private:
  double lambda_;
};

/// P_degree(x) by the three-term recurrence. Throws DomainError for |x| > 1 + 1e-12.
double legendre_eval(int degree, double x);

/// P_0(x) ... P_max_degree(x). No domain check: used off [-1, 1] by the
/// Legendre-coefficient assembly endpoint formulas.
std::vector<double> legendre_all(int max_degree, double x);

/// C_degree^lambda(x) with C_j(1) = gamma_ratio(j, lambda); T_degree(x) when lambda = 0.
double gegenbauer_eval(const GegenbauerParam& param, int degree, double x);

/// All values C_0 ... C_max_degree at x (T_j for lambda = 0).
std::vector<double> gegenbauer_all(const GegenbauerParam& param, int max_degree, double x);

/// Weighted norm ||C_j^lambda||_lambda, computed from log-Gamma differences.
/// Throws DegenerateParameter at lambda = 0.
double gegenbauer_weighted_norm(const GegenbauerParam& param, int degree);

/// ||T_j||_0: sqrt(pi) for j = 0, sqrt(pi/2) otherwise.
double chebyshev_t_weighted_norm(int degree);

/// Gamma(j + 2 lambda) / (j! Gamma(2 lambda)) = C_j^lambda(1).
double gamma_ratio(int degree, double lambda);

/// Spherical Bessel function of the first kind j_order(z), z >= 0.
double spherical_bessel_j(int order, double z);

/// j_0(z) ... j_max_order(z) for real z of either sign (j_k(-z) = (-1)^k j_k(z)).
///
/// Upward recurrence from the closed forms of j_0, j_1 when max_order < |z|;
/// otherwise Miller's downward recurrence started well above
/// max(max_order, |z|) and normalized against whichever of j_0, j_1 is larger.
std::vector<double> spherical_bessel_j_all(int max_order, double z);

}  // namespace gensamp
