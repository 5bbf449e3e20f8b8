#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gensamp/bases.hpp"
#include "gensamp/spaces.hpp"

namespace gensamp {

/// U with U(j, k) = <phi_k, psi_j>, rows in scheme storage order, columns in
/// the space's flat order. Tensor rows are row-major over the factor schemes.
struct DesignMatrix {
  Eigen::MatrixXcd U;
  std::vector<SamplingScheme> schemes;
  ReconstructionSpace space;
  std::string method;

  Eigen::Index rows() const { return U.rows(); }
  Eigen::Index cols() const { return U.cols(); }
};

/// I_k(z) = int_{-1}^{1} C_k^lambda(x) exp(izx) dx for k = 0..kmax (T_k when lambda = 0).
/// Upward recurrence for k <= |z|, Gauss quadrature beyond that and for |z| < 1.
std::vector<cplx> gegenbauer_fourier_integrals(const GegenbauerParam& param, double z, int kmax);

/// F_k(omega) = int phi_k(x) exp(-i omega x) dx for every basis function of a 1-D space.
std::vector<cplx> space_fourier_transform(const ReconstructionSpace& space, double omega);

DesignMatrix assemble_fourier_legendre(int m, int n);
DesignMatrix assemble_fourier_gegenbauer(int m, const ReconstructionSpace& space);
DesignMatrix assemble_piecewise_fourier(int m, const ReconstructionSpace& space);
DesignMatrix assemble_modified_fourier(int m, const ReconstructionSpace& space);
DesignMatrix assemble_legendre_legendre(int m, const ReconstructionSpace& space);
/// Rows of any Fourier-type scheme (plain, oversampled, modified) from space_fourier_transform.
DesignMatrix assemble_fourier_type(const SamplingScheme& scheme, const ReconstructionSpace& space);
/// Legendre-coefficient rows against any 1-D space by exact per-interval Gauss quadrature.
DesignMatrix assemble_legendre_gauss(int m, const ReconstructionSpace& space);
/// Explicit Kronecker product; throws DomainError past 1e8 entries.
DesignMatrix assemble_tensor(const std::vector<DesignMatrix>& factors);

/// Chooses the closed form / recurrence for the pair. Tensor spaces need one scheme per factor.
DesignMatrix assemble(const SamplingScheme& scheme, const ReconstructionSpace& space);
DesignMatrix assemble(const std::vector<SamplingScheme>& schemes, const ReconstructionSpace& space);

/// Debug dump, CSV `j,k,re,im`.
void write_design_matrix(std::ostream& os, const DesignMatrix& U);

}  // namespace gensamp
