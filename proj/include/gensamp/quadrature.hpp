#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace gensamp {

using cplx = std::complex<double>;
using RealFn = std::function<double(double)>;
using ComplexFn = std::function<cplx(double)>;

/// Gauss-Legendre rule on [-1, 1]; nodes strictly increasing.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

/// Rule with `order` points, 1 <= order <= 512. Newton iteration on P_order;
/// rules are built once per order and shared (thread-safe).
const QuadratureRule& gauss_legendre_rule(int order);

/// Fixed-order Gauss-Legendre approximation of the integral of f over [a, b].
cplx gauss_integrate(const ComplexFn& f, double a, double b, int order);
double gauss_integrate_real(const RealFn& f, double a, double b, int order);

struct AdaptiveOptions {
  double tol = 1e-13;
  /// Sorted interior points where the integrand may jump; panels never straddle them.
  std::vector<double> breakpoints;
  /// Largest oscillation frequency of the integrand, sets the initial panel count.
  double frequency = 0.0;
  int max_panels = 1 << 15;
};

/// Panel-adaptive Gauss-Legendre (24 points per panel). A panel is accepted
/// when the one-panel and two-half-panel estimates agree to its share of tol.
/// Throws NonConvergence past opts.max_panels panels.
cplx integrate_adaptive(const ComplexFn& f, double a, double b, const AdaptiveOptions& opts);

/// Convenience overload matching the (f, a, b, tol, breakpoints) call shape.
cplx integrate_adaptive(const ComplexFn& f, double a, double b, double tol,
                        std::span<const double> breakpoints = {});

/// Fills out[0..count) with the integrand components at x.
using VectorIntegrand = std::function<void(double x, cplx* out)>;

/// integrate_adaptive for `count` integrands sharing one panel partition; a
/// panel is accepted only when every component meets its share of tol.
std::vector<cplx> integrate_adaptive_vector(const VectorIntegrand& f, int count, double a, double b,
                                            const AdaptiveOptions& opts);

/// Integral over [-1, 1] of f * conj(g) to tolerance 1e-13.
cplx inner_product_oracle(const ComplexFn& f, const ComplexFn& g,
                          std::span<const double> breakpoints = {}, double frequency = 0.0);

}  // namespace gensamp
