#include "gensamp/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gensamp/error.hpp"

namespace gensamp {

namespace {

constexpr double kPi = std::numbers::pi;

// Highest oscillation frequency of the sampling functions.
double scheme_frequency(const SamplingScheme& s) {
  if (s.kind() == SchemeKind::LegendreCoeff) return s.m();
  return (s.m() / 2) * kPi / s.oversample_c();
}

// Composite Gauss nodes/weights on [-1, 1] honoring cuts; `panels` spread by length.
void composite_rule(int panels, int order, std::span<const double> breakpoints, std::vector<double>& x,
                    std::vector<double>& w) {
  std::vector<double> cuts{-1.0};
  for (double b : breakpoints) {
    if (b > -1.0 && b < 1.0) cuts.push_back(b);
  }
  cuts.push_back(1.0);
  const auto& rule = gauss_legendre_rule(order);
  x.clear();
  w.clear();
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const int p = std::max(1, static_cast<int>(std::ceil(panels * (cuts[s + 1] - cuts[s]) / 2.0)));
    const double h = (cuts[s + 1] - cuts[s]) / p;
    for (int i = 0; i < p; ++i) {
      const double mid = cuts[s] + (i + 0.5) * h;
      for (int q = 0; q < order; ++q) {
        x.push_back(mid + 0.5 * h * rule.nodes[q]);
        w.push_back(0.5 * h * rule.weights[q]);
      }
    }
  }
}

Eigen::MatrixXcd weighted_conj_modes(const SamplingScheme& s, const std::vector<double>& x,
                                     const std::vector<double>& w) {
  const auto modes = s.modes();
  Eigen::MatrixXcd E(static_cast<Eigen::Index>(modes.size()), static_cast<Eigen::Index>(x.size()));
  for (std::size_t q = 0; q < x.size(); ++q) {
    if (s.kind() == SchemeKind::LegendreCoeff) {
      const auto P = legendre_all(s.m() - 1, x[q]);
      for (std::size_t j = 0; j < modes.size(); ++j) E(j, q) = w[q] * modes[j].amplitude * P[j];
    } else {
      for (std::size_t j = 0; j < modes.size(); ++j) E(j, q) = w[q] * std::conj(modes[j].eval(x[q]));
    }
  }
  return E;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

int default_maxit(int n) { return 10 * n + 200; }

void finish(Reconstruction& r) {
  r.max_imag = r.coefficients.size() ? r.coefficients.imag().cwiseAbs().maxCoeff() : 0.0;
}

// Values of every basis function of a 1-D space at the points, row per point.
Eigen::MatrixXd basis_matrix(const ReconstructionSpace& space, std::span<const double> pts) {
  Eigen::MatrixXd V(static_cast<Eigen::Index>(pts.size()), space.dim());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto v = basis_values(space, pts[i]);
    for (int k = 0; k < space.dim(); ++k) V(i, k) = v[k];
  }
  return V;
}

}  // namespace

TensorSamples sample_function_2d(const RealFn2& f, std::span<const double> breakpoints,
                                 const std::vector<SamplingScheme>& schemes) {
  if (schemes.size() != 2) throw DomainError("sample_function_2d: needs two schemes");
  constexpr int kOrder = 32;
  int panels = std::max(4, static_cast<int>(std::ceil(std::max(scheme_frequency(schemes[0]),
                                                               scheme_frequency(schemes[1])) / 12.0)));
  auto estimate = [&](int p) {
    std::vector<double> x, w;
    composite_rule(p, kOrder, breakpoints, x, w);
    Eigen::MatrixXd F(static_cast<Eigen::Index>(x.size()), static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < x.size(); ++j) F(i, j) = f(x[i], x[j]);
    }
    const Eigen::MatrixXcd E1 = weighted_conj_modes(schemes[0], x, w);
    const Eigen::MatrixXcd E2 = weighted_conj_modes(schemes[1], x, w);
    return Eigen::MatrixXcd(E1 * F.cast<cplx>() * E2.transpose());
  };
  Eigen::MatrixXcd coarse = estimate(panels);
  for (int round = 0; round < 6; ++round) {
    panels *= 2;
    Eigen::MatrixXcd fine = estimate(panels);
    const double diff = (fine - coarse).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, fine.cwiseAbs().maxCoeff());
    coarse = std::move(fine);
    if (diff <= 1e-13 * scale) {
      TensorSamples out{schemes, {}};
      out.values.resize(static_cast<std::size_t>(coarse.size()));
      for (Eigen::Index i = 0; i < coarse.rows(); ++i) {
        for (Eigen::Index j = 0; j < coarse.cols(); ++j) out.values[i * coarse.cols() + j] = coarse(i, j);
      }
      return out;
    }
  }
  throw NonConvergence("sample_function_2d: tensor quadrature did not settle");
}

Reconstruction reconstruct(const SampleVector& samples, const ReconstructionSpace& space,
                           const ReconstructOptions& opts) {
  if (space.is_tensor()) throw IncompatiblePair("reconstruct: tensor space needs tensor samples");
  if (static_cast<int>(samples.values.size()) != samples.scheme.count()) {
    throw DomainError("reconstruct: sample vector length does not match its scheme");
  }
  const DesignMatrix U = assemble(samples.scheme, space);
  const Eigen::VectorXcd f = Eigen::Map<const Eigen::VectorXcd>(samples.values.data(),
                                                                static_cast<Eigen::Index>(samples.values.size()));
  Reconstruction r{space, {}, {}, {}, 0.0};
  r.solve = cgnr_solve(U, f, opts.tol, opts.maxit > 0 ? opts.maxit : default_maxit(space.dim()));
  r.coefficients = r.solve.coefficients;
  if (opts.diagnostics) r.diagnostics = compute_diagnostics(U);
  finish(r);
  return r;
}

Reconstruction reconstruct(const SampleVector& samples, const ReconstructionSpace& space, double tol) {
  ReconstructOptions opts;
  opts.tol = tol;
  return reconstruct(samples, space, opts);
}

Reconstruction reconstruct(const TensorSamples& samples, const ReconstructionSpace& space,
                           const ReconstructOptions& opts) {
  if (!space.is_tensor() || space.factors().size() != 2 || samples.schemes.size() != 2) {
    throw IncompatiblePair("reconstruct: tensor samples need a two-factor tensor space");
  }
  const DesignMatrix U1 = assemble(samples.schemes[0], space.factors()[0]);
  const DesignMatrix U2 = assemble(samples.schemes[1], space.factors()[1]);
  if (static_cast<Eigen::Index>(samples.values.size()) != U1.rows() * U2.rows()) {
    throw DomainError("reconstruct: tensor sample count does not match the schemes");
  }
  Eigen::MatrixXcd S(U1.rows(), U2.rows());
  for (Eigen::Index i = 0; i < S.rows(); ++i) {
    for (Eigen::Index j = 0; j < S.cols(); ++j) S(i, j) = samples.values[i * S.cols() + j];
  }
  // (U1 (x) U2)^H vec(S) = vec(U1^H S conj(U2)) for row-major vec.
  const Eigen::MatrixXcd B = U1.U.adjoint() * S * U2.U.conjugate();
  Eigen::VectorXcd b(B.size());
  for (Eigen::Index i = 0; i < B.rows(); ++i) {
    for (Eigen::Index j = 0; j < B.cols(); ++j) b(i * B.cols() + j) = B(i, j);
  }
  const Eigen::MatrixXcd A = kron(normal_matrix(U1), normal_matrix(U2));
  Reconstruction r{space, {}, {}, {}, 0.0};
  r.solve = cg_solve(A, b, opts.tol, opts.maxit > 0 ? opts.maxit : default_maxit(space.dim()));
  r.coefficients = r.solve.coefficients;
  if (opts.diagnostics) r.diagnostics = compute_diagnostics(std::vector<DesignMatrix>{U1, U2});
  finish(r);
  return r;
}

std::vector<double> evaluate(const Reconstruction& r, std::span<const double> points) {
  if (r.space.is_tensor()) throw DomainError("evaluate: use evaluate_grid for tensor spaces");
  std::vector<double> out(points.size());
  const Eigen::VectorXd a = r.coefficients.real();
  const auto& ivs = r.space.intervals();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = points[i];
    double s = 0.0;
    for (std::size_t q = 0; q < ivs.size(); ++q) {
      const bool last = q + 1 == ivs.size();
      if (x < ivs[q].lo || x > ivs[q].hi || (!last && x == ivs[q].hi)) continue;
      const double t = std::clamp((x - ivs[q].d()) / ivs[q].c(), -1.0, 1.0);
      const int n = r.space.degrees()[q];
      const auto c = gegenbauer_all(r.space.lambda(), n - 1, t);
      const int off = r.space.offset(static_cast<int>(q));
      for (int k = 0; k < n; ++k) s += a[off + k] * c[k] * r.space.normalization(k);
      s /= std::sqrt(ivs[q].c());
      break;
    }
    out[i] = s;
  }
  return out;
}

Eigen::MatrixXd evaluate_grid(const Reconstruction& r, std::span<const double> xs, std::span<const double> ys) {
  if (!r.space.is_tensor() || r.space.factors().size() != 2) {
    throw DomainError("evaluate_grid: needs a two-factor tensor space");
  }
  const auto& f1 = r.space.factors()[0];
  const auto& f2 = r.space.factors()[1];
  Eigen::MatrixXd a(f1.dim(), f2.dim());
  for (int i = 0; i < f1.dim(); ++i) {
    for (int j = 0; j < f2.dim(); ++j) a(i, j) = r.coefficients(i * f2.dim() + j).real();
  }
  return basis_matrix(f1, xs) * a * basis_matrix(f2, ys).transpose();
}

Reconstruction best_approximation(const RealFn& f, std::span<const double> breakpoints,
                                  const ReconstructionSpace& space) {
  if (space.is_tensor()) throw DomainError("best_approximation: use best_approximation_2d for tensor spaces");
  Eigen::VectorXcd b(space.dim());
  const auto& ivs = space.intervals();
  for (std::size_t r = 0; r < ivs.size(); ++r) {
    const int nr = space.degrees()[r];
    const int off = space.offset(static_cast<int>(r));
    const Interval iv = ivs[r];
    AdaptiveOptions opts;
    opts.tol = 1e-14;
    opts.frequency = 3.0 * nr;
    for (double x : breakpoints) {
      if (x > iv.lo && x < iv.hi) opts.breakpoints.push_back(x);
    }
    const double scale = 1.0 / std::sqrt(iv.c());
    auto kernel = [&](double x, cplx* out) {
      const double t = std::clamp((x - iv.d()) / iv.c(), -1.0, 1.0);
      const auto phi = reference_basis_values(space.lambda(), nr, t);
      const double fx = f(x) * scale;
      for (int k = 0; k < nr; ++k) out[k] = fx * phi[k];
    };
    const auto moments = integrate_adaptive_vector(kernel, nr, iv.lo, iv.hi, opts);
    for (int k = 0; k < nr; ++k) b(off + k) = moments[k];
  }
  Reconstruction r{space, {}, {}, {}, 0.0};
  if (space.lambda().legendre()) {
    r.coefficients = b;
  } else {
    const Eigen::MatrixXd G = gram_matrix(space);
    r.coefficients = G.llt().solve(b.real()).cast<cplx>();
  }
  r.diagnostics.C_nm = 1.0;
  r.diagnostics.K_nm = 1.0;
  r.solve.converged = true;
  finish(r);
  return r;
}

Reconstruction best_approximation_2d(const RealFn2& f, const ReconstructionSpace& space) {
  if (!space.is_tensor() || space.factors().size() != 2) {
    throw DomainError("best_approximation_2d: needs a two-factor tensor space");
  }
  const auto& s1 = space.factors()[0];
  const auto& s2 = space.factors()[1];
  std::vector<double> x1, w1, x2, w2;
  composite_rule(8, 32, s1.breakpoints(), x1, w1);
  composite_rule(8, 32, s2.breakpoints(), x2, w2);
  Eigen::MatrixXd F(static_cast<Eigen::Index>(x1.size()), static_cast<Eigen::Index>(x2.size()));
  for (std::size_t i = 0; i < x1.size(); ++i) {
    for (std::size_t j = 0; j < x2.size(); ++j) F(i, j) = w1[i] * w2[j] * f(x1[i], x2[j]);
  }
  const Eigen::MatrixXd M = basis_matrix(s1, x1).transpose() * F * basis_matrix(s2, x2);
  Eigen::VectorXd b(M.size());
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) b(i * M.cols() + j) = M(i, j);
  }
  Reconstruction r{space, {}, {}, {}, 0.0};
  if (s1.lambda().legendre() && s2.lambda().legendre()) {
    r.coefficients = b.cast<cplx>();
  } else {
    r.coefficients = gram_matrix(space).llt().solve(b).cast<cplx>();
  }
  r.diagnostics.C_nm = 1.0;
  r.diagnostics.K_nm = 1.0;
  r.solve.converged = true;
  finish(r);
  return r;
}

double l2_difference(const Reconstruction& a, const Reconstruction& b) {
  if (a.space.dim() != b.space.dim() || a.space.describe() != b.space.describe()) {
    throw DomainError("l2_difference: reconstructions live in different spaces");
  }
  const Eigen::VectorXd d = (a.coefficients - b.coefficients).real();
  const Eigen::MatrixXd G = gram_matrix(a.space);
  return std::sqrt(std::max(0.0, d.dot(G * d)));
}

double l2_norm(const Reconstruction& r) {
  const Eigen::VectorXd a = r.coefficients.real();
  return std::sqrt(std::max(0.0, a.dot(gram_matrix(r.space) * a)));
}

std::vector<double> uniform_grid(int count, double a, double b) {
  std::vector<double> x(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) x[i] = (i + 1 == count) ? b : a + (b - a) * i / (count - 1);
  return x;
}

ErrorMetrics error_metrics(const RealFn& f, std::span<const double> breakpoints, const Reconstruction& r) {
  std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
  cuts.insert(cuts.end(), r.space.breakpoints().begin(), r.space.breakpoints().end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<double> grid;
  for (double x : uniform_grid(2049)) {
    const bool at_jump = std::any_of(cuts.begin(), cuts.end(), [&](double c) { return std::abs(x - c) < 1e-14; });
    if (!at_jump) grid.push_back(x);
  }
  const auto approx = evaluate(r, grid);
  ErrorMetrics m;
  for (std::size_t i = 0; i < grid.size(); ++i) m.linf_grid = std::max(m.linf_grid, std::abs(f(grid[i]) - approx[i]));

  AdaptiveOptions opts;
  opts.tol = 1e-15;
  opts.breakpoints = cuts;
  opts.frequency = 3.0 * (r.space.max_degree() + 1);
  const double sq = integrate_adaptive(
                        [&](double x) {
                          const double xs[1] = {x};
                          const double e = f(x) - evaluate(r, xs)[0];
                          return cplx(e * e);
                        },
                        -1.0, 1.0, opts)
                        .real();
  m.l2 = std::sqrt(std::max(0.0, sq));
  return m;
}

ErrorMetrics error_metrics_2d(const RealFn2& f, const Reconstruction& r) {
  ErrorMetrics m;
  const auto grid = uniform_grid(257);
  const Eigen::MatrixXd V = evaluate_grid(r, grid, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      m.linf_grid = std::max(m.linf_grid, std::abs(f(grid[i], grid[j]) - V(i, j)));
    }
  }
  std::vector<double> x1, w1, x2, w2;
  composite_rule(16, 24, r.space.factors()[0].breakpoints(), x1, w1);
  composite_rule(16, 24, r.space.factors()[1].breakpoints(), x2, w2);
  const Eigen::MatrixXd Q = evaluate_grid(r, x1, x2);
  double sq = 0.0;
  for (std::size_t i = 0; i < x1.size(); ++i) {
    for (std::size_t j = 0; j < x2.size(); ++j) {
      const double e = f(x1[i], x2[j]) - Q(i, j);
      sq += w1[i] * w2[j] * e * e;
    }
  }
  m.l2 = std::sqrt(sq);
  return m;
}

}  // namespace gensamp
