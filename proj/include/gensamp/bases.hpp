#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gensamp/quadrature.hpp"

namespace gensamp {

enum class SchemeKind { Fourier, OversampledFourier, ModifiedFourier, LegendreCoeff };

/// One sampling function psi_j, described well enough to evaluate it and to
/// build design-matrix rows from Fourier transforms of the reconstruction basis.
struct SampleMode {
  enum class Type { Exp, Cos, Sin, Legendre };
  Type type = Type::Exp;
  /// Exp: psi(x) = amplitude * exp(i*frequency*x); Cos/Sin: amplitude * cos/sin(frequency*x).
  double frequency = 0.0;
  double amplitude = 1.0;
  /// Legendre only: psi(x) = sqrt(degree + 1/2) P_degree(x).
  int degree = 0;
  /// Label used in index_map and coefficient files ("3", "-2", "c0", "s4").
  std::string label;

  cplx eval(double x) const;
};

/// Sampling family with total budget m. All four kinds are orthonormal on
/// their natural domain, so the frame bounds are (1, 1).
class SamplingScheme {
 public:
  static SamplingScheme fourier(int m);
  /// psi_j(x) = exp(i j pi x / c) / sqrt(2c), orthonormal on [-c, c], c >= 1.
  static SamplingScheme oversampled_fourier(int m, double c);
  static SamplingScheme modified_fourier(int m);
  static SamplingScheme legendre_coeff(int m);

  SchemeKind kind() const noexcept { return kind_; }
  int m() const noexcept { return m_; }
  double oversample_c() const noexcept { return c_; }
  double d1() const noexcept { return 1.0; }
  double d2() const noexcept { return 1.0; }

  /// floor(m/2) for the Fourier kinds, m for Legendre coefficients.
  int effective_index() const noexcept;
  /// Number of stored samples.
  int count() const noexcept;
  bool fourier_kind() const noexcept { return kind_ != SchemeKind::LegendreCoeff; }

  /// Sampling functions in storage order.
  std::vector<SampleMode> modes() const;
  /// Scheme tag used in coefficient files and the CLI: fourier, mfourier, legcoeff, ofourier:<c>.
  std::string tag() const;

  friend bool operator==(const SamplingScheme&, const SamplingScheme&) = default;

 private:
  SamplingScheme(SchemeKind kind, int m, double c);
  SchemeKind kind_;
  int m_;
  double c_;
};

/// Parses fourier | mfourier | legcoeff | ofourier:<c>.
SamplingScheme parse_scheme(const std::string& tag, int m);

/// Samples <f, psi_j> in the storage order of scheme.modes().
struct SampleVector {
  SamplingScheme scheme;
  std::vector<cplx> values;
  std::vector<std::string> index_map;
};

/// Each entry is an adaptive-quadrature integral of f * conj(psi_j) to tol 1e-13.
/// All entries share the panel partition (one f evaluation per node).
SampleVector sample_function(const RealFn& f, std::span<const double> breakpoints,
                             const SamplingScheme& scheme);

/// Modified-Fourier samples from Fourier-transform samples Ff(t) = int f(x) exp(-i pi t x) dx,
/// keyed by half-integers t.
SampleVector modified_from_transform(const std::map<double, cplx>& transform, int m);

/// P_m f(x) = sum_j fhat_j psi_j(x).
cplx truncated_expansion_eval_complex(const SampleVector& samples, double x);
double truncated_expansion_eval(const SampleVector& samples, double x);

/// CSV `kind,index,re,im`, 17 significant digits.
void write_coefficients(std::ostream& os, const SampleVector& samples);
void write_coefficients(const std::string& path, const SampleVector& samples);
/// Throws ParseError carrying the offending line number.
SampleVector read_coefficients(std::istream& is);
SampleVector read_coefficients(const std::string& path);

}  // namespace gensamp
