#include "gensamp/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gensamp/error.hpp"

namespace gensamp {

GegenbauerParam::GegenbauerParam(double lambda) : lambda_(lambda) {
  if (!(lambda > -0.5) || !std::isfinite(lambda)) {
    throw DomainError("Gegenbauer parameter must satisfy lambda > -1/2, got " + std::to_string(lambda));
  }
}

double legendre_eval(int degree, double x) {
  if (degree < 0) throw DomainError("legendre_eval: negative degree");
  if (std::abs(x) > 1.0 + 1e-12) throw DomainError("legendre_eval: |x| > 1");
  if (degree == 0) return 1.0;
  double p0 = 1.0;
  double p1 = x;
  for (int j = 2; j <= degree; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

std::vector<double> legendre_all(int max_degree, double x) {
  std::vector<double> p(static_cast<std::size_t>(max_degree) + 1);
  p[0] = 1.0;
  if (max_degree >= 1) p[1] = x;
  for (int j = 2; j <= max_degree; ++j) {
    p[j] = ((2.0 * j - 1.0) * x * p[j - 1] - (j - 1.0) * p[j - 2]) / j;
  }
  return p;
}

std::vector<double> gegenbauer_all(const GegenbauerParam& param, int max_degree, double x) {
  if (max_degree < 0) throw DomainError("gegenbauer: negative degree");
  std::vector<double> c(static_cast<std::size_t>(max_degree) + 1);
  c[0] = 1.0;
  if (param.chebyshev_t()) {
    if (max_degree >= 1) c[1] = x;
    for (int j = 2; j <= max_degree; ++j) c[j] = 2.0 * x * c[j - 1] - c[j - 2];
    return c;
  }
  const double lam = param.lambda();
  if (max_degree >= 1) c[1] = 2.0 * lam * x;
  for (int j = 1; j < max_degree; ++j) {
    c[j + 1] = (2.0 * (j + lam) * x * c[j] - (j + 2.0 * lam - 1.0) * c[j - 1]) / (j + 1.0);
  }
  return c;
}

double gegenbauer_eval(const GegenbauerParam& param, int degree, double x) {
  return gegenbauer_all(param, degree, x).back();
}

double gamma_ratio(int degree, double lambda) {
  if (degree < 0) throw DomainError("gamma_ratio: negative degree");
  if (lambda == 0.0) throw DegenerateParameter("gamma_ratio: lambda = 0 (use the Chebyshev-T branch)");
  if (!(lambda > -0.5)) throw DomainError("gamma_ratio: lambda must exceed -1/2");
  if (degree == 0) return 1.0;
  // Gamma(2 lambda) < 0 for lambda in (-1/2, 0) while Gamma(j + 2 lambda) > 0.
  const double sign = lambda < 0.0 ? -1.0 : 1.0;
  const double log_ratio =
      std::lgamma(degree + 2.0 * lambda) - std::lgamma(degree + 1.0) - std::lgamma(2.0 * lambda);
  return sign * std::exp(log_ratio);
}

double gegenbauer_weighted_norm(const GegenbauerParam& param, int degree) {
  if (degree < 0) throw DomainError("gegenbauer_weighted_norm: negative degree");
  if (param.chebyshev_t()) {
    throw DegenerateParameter("gegenbauer_weighted_norm: lambda = 0 (use chebyshev_t_weighted_norm)");
  }
  const double lam = param.lambda();
  // Gamma(2 lambda) and Gamma(lambda) share their sign, so only log-magnitudes matter.
  double log_sq = 0.5 * std::log(std::numbers::pi) + std::lgamma(lam + 0.5) - std::lgamma(lam) -
                  std::log(degree + lam);
  if (degree > 0) {
    log_sq += std::lgamma(degree + 2.0 * lam) - std::lgamma(degree + 1.0) - std::lgamma(2.0 * lam);
  }
  return std::exp(0.5 * log_sq);
}

double chebyshev_t_weighted_norm(int degree) {
  if (degree < 0) throw DomainError("chebyshev_t_weighted_norm: negative degree");
  return degree == 0 ? std::sqrt(std::numbers::pi) : std::sqrt(0.5 * std::numbers::pi);
}

namespace {

double j0_closed(double z) { return z == 0.0 ? 1.0 : std::sin(z) / z; }

double j1_closed(double z) {
  if (std::abs(z) < 1e-3) {
    const double z2 = z * z;
    return z / 3.0 * (1.0 - z2 / 10.0 * (1.0 - z2 / 28.0));
  }
  return std::sin(z) / (z * z) - std::cos(z) / z;
}

}  // namespace

std::vector<double> spherical_bessel_j_all(int max_order, double z) {
  if (max_order < 0) throw DomainError("spherical_bessel_j: negative order");
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (z == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const double az = std::abs(z);

  if (max_order < az) {
    out[0] = j0_closed(az);
    if (max_order >= 1) out[1] = j1_closed(az);
    for (int k = 1; k < max_order; ++k) out[k + 1] = (2.0 * k + 1.0) / az * out[k] - out[k - 1];
  } else {
    const int start =
        max_order + static_cast<int>(std::ceil(1.5 * std::max<double>(max_order, az))) + 20;
    double upper = 0.0;       // f_{k+1}
    double current = 1e-300;  // f_k
    double f1 = 0.0;
    for (int k = start; k > 0; --k) {
      const double lower = (2.0 * k + 1.0) / az * current - upper;  // f_{k-1}
      upper = current;
      current = lower;
      if (k - 1 <= max_order) out[k - 1] = current;
      if (k == 1) f1 = upper;
      if (std::abs(current) > 1e250) {
        upper *= 1e-250;
        current *= 1e-250;
        for (int i = std::max(k - 1, 0); i <= max_order; ++i) out[i] *= 1e-250;
      }
    }
    const double t0 = j0_closed(az);
    const double t1 = j1_closed(az);
    const double scale = std::abs(t0) >= std::abs(t1) ? t0 / current : t1 / f1;
    for (double& v : out) v *= scale;
  }

  if (z < 0.0) {
    for (int k = 1; k <= max_order; k += 2) out[k] = -out[k];
  }
  return out;
}

double spherical_bessel_j(int order, double z) {
  if (order < 0) throw DomainError("spherical_bessel_j: negative order");
  if (z < 0.0) throw DomainError("spherical_bessel_j: z must be non-negative");
  return spherical_bessel_j_all(order, z).back();
}

}  // namespace gensamp
