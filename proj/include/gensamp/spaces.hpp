#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gensamp/specfun.hpp"

namespace gensamp {

enum class SpaceKind { Gegenbauer, PiecewiseGegenbauer, TensorProduct };

/// Subinterval I_r = [lo, hi] with half-length c and midpoint d.
struct Interval {
  double lo = -1.0;
  double hi = 1.0;
  double c() const noexcept { return 0.5 * (hi - lo); }
  double d() const noexcept { return 0.5 * (hi + lo); }
};

/// Polynomial reconstruction space.
///
/// Gegenbauer: degrees 0..n-1 of phi_k = C_k^lambda / ||C_k^lambda||_lambda
/// (normalized T_k when lambda = 0). Piecewise: the same family mapped onto
/// each subinterval, phi_{r,k} = c_r^{-1/2} phi_k((x - d_r)/c_r), zero elsewhere;
/// flat index is interval-major. Tensor: products of 1-D factors, flat index
/// row-major (last factor fastest).
class ReconstructionSpace {
 public:
  static ReconstructionSpace gegenbauer(double lambda, int n);
  static ReconstructionSpace piecewise(std::vector<double> breakpoints, std::vector<int> degrees,
                                       double lambda = 0.5);
  static ReconstructionSpace tensor(std::vector<ReconstructionSpace> factors);

  SpaceKind kind() const noexcept { return kind_; }
  const GegenbauerParam& lambda() const noexcept { return lambda_; }
  int dim() const noexcept { return dim_; }
  bool is_tensor() const noexcept { return kind_ == SpaceKind::TensorProduct; }

  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  /// Degrees per interval (one entry, n, for the plain Gegenbauer space).
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  const std::vector<ReconstructionSpace>& factors() const noexcept { return factors_; }
  int max_degree() const noexcept;

  /// First flat index of interval r.
  int offset(int r) const;
  struct Local {
    int interval;
    int degree;
  };
  Local locate(int flat) const;
  /// Per-factor indices of a tensor flat index.
  std::vector<int> unflatten(int flat) const;

  /// phi_k = C_k * normalization(k) on the reference interval.
  double normalization(int degree) const;

  /// Round-trippable description in the CLI's --space syntax.
  std::string describe() const;

 private:
  ReconstructionSpace(SpaceKind kind, GegenbauerParam lambda) : kind_(kind), lambda_(lambda) {}
  void finish();

  SpaceKind kind_;
  GegenbauerParam lambda_;
  int dim_ = 0;
  std::vector<double> breakpoints_;
  std::vector<int> degrees_;
  std::vector<Interval> intervals_;
  std::vector<int> offsets_;
  std::vector<double> norms_;
  std::vector<ReconstructionSpace> factors_;
};

/// gegenbauer:<lambda>:<n> | piecewise:<bp,...>:<n0,n1,...>[:<lambda>] | tensor:<spec>x<spec>
ReconstructionSpace parse_space(const std::string& text);

/// Normalized reference-interval basis values phi_0..phi_{count-1} at t in [-1, 1].
std::vector<double> reference_basis_values(const GegenbauerParam& lambda, int count, double t);

/// phi_flat(x) for a 1-D space; 0 outside the function's interval.
double basis_eval(const ReconstructionSpace& space, int flat_index, double x);
/// Tensor (or 1-D when point has one coordinate) evaluation.
double basis_eval(const ReconstructionSpace& space, int flat_index, std::span<const double> point);

/// All basis values at x (1-D spaces), length dim.
std::vector<double> basis_values(const ReconstructionSpace& space, double x);

/// Gram matrix of the basis in the unweighted L2 inner product on [-1, 1].
Eigen::MatrixXd gram_matrix(const ReconstructionSpace& space);

}  // namespace gensamp
