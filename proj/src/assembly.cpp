#include "gensamp/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "gensamp/error.hpp"
#include "gensamp/quadrature.hpp"

namespace gensamp {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

// Direct Gauss evaluation of I_k(z), k0 <= k <= kmax, written into out[k].
void fourier_integrals_by_quadrature(const GegenbauerParam& param, double z, int k0, int kmax,
                                     std::vector<cplx>& out) {
  const int poly = (kmax + 2) / 2;
  int panels = 1;
  int order = 0;
  for (;; panels *= 2) {
    order = poly + static_cast<int>(std::ceil(std::abs(z) / panels)) + 20;
    if (order <= 512) break;
    if (poly + 21 > 512) throw DomainError("gegenbauer_fourier_integrals: degree too large for quadrature tail");
  }
  const auto& rule = gauss_legendre_rule(order);
  std::vector<cplx> acc(static_cast<std::size_t>(kmax) + 1, cplx(0.0));
  const double h = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = -1.0 + (2 * p + 1) * h;
    for (int q = 0; q < order; ++q) {
      const double x = mid + h * rule.nodes[q];
      const auto c = gegenbauer_all(param, kmax, x);
      const cplx e = rule.weights[q] * h * std::polar(1.0, z * x);
      for (int k = k0; k <= kmax; ++k) acc[k] += c[k] * e;
    }
  }
  for (int k = k0; k <= kmax; ++k) out[k] = acc[k];
}

}  // namespace

std::vector<cplx> gegenbauer_fourier_integrals(const GegenbauerParam& param, double z, int kmax) {
  if (kmax < 0) throw DomainError("gegenbauer_fourier_integrals: kmax must be >= 0");
  std::vector<cplx> I(static_cast<std::size_t>(kmax) + 1);
  const bool cheb = param.chebyshev_t();
  const double lam = param.lambda();

  if (z == 0.0) {
    for (int k = 0; k <= kmax; ++k) {
      if (k % 2 == 1) {
        I[k] = 0.0;
      } else if (cheb) {
        I[k] = 2.0 / (1.0 - static_cast<double>(k) * k);
      } else if (k == 0) {
        I[k] = 2.0;
      } else {
        I[k] = (gamma_ratio(k + 1, lam) - gamma_ratio(k - 1, lam)) / (k + lam);
      }
    }
    return I;
  }
  const double az = std::abs(z);
  if (az < 1.0) {
    fourier_integrals_by_quadrature(param, z, 0, kmax, I);
    return I;
  }

  // upward recurrence only while k <= |z|; errors grow geometrically past that
  const int kcut = std::min(kmax, static_cast<int>(std::floor(az)));
  const double s = std::sin(z);
  const double c = std::cos(z);
  const cplx ep = std::polar(1.0, z);
  const cplx em = std::conj(ep);
  I[0] = 2.0 * s / z;
  if (kcut >= 1) {
    const double c1 = cheb ? 1.0 : 2.0 * lam;
    I[1] = 2.0 * kI * c1 * (s - z * c) / (z * z);
  }
  if (cheb) {
    if (kcut >= 2) {
      const double x2 = 2.0 * s / z + 4.0 * c / (z * z) - 4.0 * s / (z * z * z);
      I[2] = 2.0 * x2 - I[0];
    }
    for (int k = 2; k < kcut; ++k) {
      const cplx ek = ep + ((k % 2 == 0) ? 1.0 : -1.0) * em;
      const double kp = k + 1.0;
      const double km = k - 1.0;
      I[k + 1] = -kI * kp / z * (1.0 / kp - 1.0 / km) * ek + 2.0 * kI * kp / z * I[k] + kp / km * I[k - 1];
    }
  } else {
    for (int k = 1; k < kcut; ++k) {
      const cplx ek = ep + ((k % 2 == 0) ? 1.0 : -1.0) * em;
      const double jump = gamma_ratio(k + 1, lam) - gamma_ratio(k - 1, lam);
      I[k + 1] = 2.0 * kI * (k + lam) / z * I[k] + I[k - 1] - kI * ek / z * jump;
    }
  }
  if (kmax > kcut) fourier_integrals_by_quadrature(param, z, kcut + 1, kmax, I);
  return I;
}

namespace {

// F_k(omega) on the reference interval for k < count.
std::vector<cplx> reference_transform(const ReconstructionSpace& space, int count, double omega) {
  std::vector<cplx> out(static_cast<std::size_t>(count));
  if (space.lambda().legendre()) {
    const auto j = spherical_bessel_j_all(count - 1, omega);
    cplx phase = 1.0;  // (-i)^k
    for (int k = 0; k < count; ++k) {
      out[k] = 2.0 * std::sqrt(k + 0.5) * phase * j[k];
      phase *= -kI;
    }
    return out;
  }
  const auto I = gegenbauer_fourier_integrals(space.lambda(), -omega, count - 1);
  for (int k = 0; k < count; ++k) out[k] = I[k] * space.normalization(k);
  return out;
}

void require_1d(const ReconstructionSpace& space, const char* who) {
  if (space.is_tensor()) throw IncompatiblePair(std::string(who) + ": tensor space needs per-factor schemes");
}

}  // namespace

std::vector<cplx> space_fourier_transform(const ReconstructionSpace& space, double omega) {
  require_1d(space, "space_fourier_transform");
  std::vector<cplx> out(static_cast<std::size_t>(space.dim()));
  const auto& ivs = space.intervals();
  for (std::size_t r = 0; r < ivs.size(); ++r) {
    const double cr = ivs[r].c();
    const double dr = ivs[r].d();
    const int nr = space.degrees()[r];
    const auto base = reference_transform(space, nr, omega * cr);
    const cplx shift = std::sqrt(cr) * std::polar(1.0, -omega * dr);
    const int off = space.offset(static_cast<int>(r));
    for (int k = 0; k < nr; ++k) out[off + k] = shift * base[k];
  }
  return out;
}

DesignMatrix assemble_fourier_type(const SamplingScheme& scheme, const ReconstructionSpace& space) {
  require_1d(space, "assemble");
  if (!scheme.fourier_kind()) throw IncompatiblePair("assemble_fourier_type: scheme is not Fourier-type");
  const auto modes = scheme.modes();
  const Eigen::Index rows = static_cast<Eigen::Index>(modes.size());
  const Eigen::Index n = space.dim();
  Eigen::MatrixXcd U(rows, n);
  // Rows are computed in blocks and written column by column so the stores stay contiguous.
  constexpr Eigen::Index block = 64;
  Eigen::MatrixXcd buf(block, n);
  for (Eigen::Index j0 = 0; j0 < rows; j0 += block) {
    const Eigen::Index len = std::min(block, rows - j0);
    for (Eigen::Index b = 0; b < len; ++b) {
      const auto& mode = modes[j0 + b];
      const auto F = space_fourier_transform(space, mode.frequency);
      for (Eigen::Index k = 0; k < n; ++k) {
        switch (mode.type) {
          case SampleMode::Type::Exp:
            buf(b, k) = mode.amplitude * F[k];
            break;
          case SampleMode::Type::Cos:
            buf(b, k) = mode.amplitude * F[k].real();
            break;
          case SampleMode::Type::Sin:
            buf(b, k) = -mode.amplitude * F[k].imag();
            break;
          case SampleMode::Type::Legendre:
            throw IncompatiblePair("assemble_fourier_type: Legendre mode");
        }
      }
    }
    U.middleRows(j0, len) = buf.topRows(len);
  }
  std::string method = space.lambda().legendre() ? "bessel" : "gegenbauer-recurrence";
  if (space.kind() == SpaceKind::PiecewiseGegenbauer) method = "piecewise-" + method;
  if (scheme.kind() == SchemeKind::ModifiedFourier) method = "modified-" + method;
  return {std::move(U), {scheme}, space, method};
}

DesignMatrix assemble_fourier_legendre(int m, int n) {
  return assemble_fourier_type(SamplingScheme::fourier(m), ReconstructionSpace::gegenbauer(0.5, n));
}

DesignMatrix assemble_fourier_gegenbauer(int m, const ReconstructionSpace& space) {
  if (space.kind() != SpaceKind::Gegenbauer) throw IncompatiblePair("assemble_fourier_gegenbauer: needs a Gegenbauer space");
  return assemble_fourier_type(SamplingScheme::fourier(m), space);
}

DesignMatrix assemble_piecewise_fourier(int m, const ReconstructionSpace& space) {
  if (space.kind() != SpaceKind::PiecewiseGegenbauer) {
    throw IncompatiblePair("assemble_piecewise_fourier: needs a piecewise space");
  }
  return assemble_fourier_type(SamplingScheme::fourier(m), space);
}

DesignMatrix assemble_modified_fourier(int m, const ReconstructionSpace& space) {
  return assemble_fourier_type(SamplingScheme::modified_fourier(m), space);
}

DesignMatrix assemble_legendre_legendre(int m, const ReconstructionSpace& space) {
  require_1d(space, "assemble_legendre_legendre");
  if (!space.lambda().legendre()) throw IncompatiblePair("assemble_legendre_legendre: needs lambda = 1/2");
  const SamplingScheme scheme = SamplingScheme::legendre_coeff(m);
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(m, space.dim());
  const auto& ivs = space.intervals();
  for (std::size_t r = 0; r < ivs.size(); ++r) {
    const int nr = space.degrees()[r];
    const double cr = ivs[r].c();
    const double c = 1.0 / cr;
    const double d = -ivs[r].d() / cr;
    // u_{j,k} = int_{I_r} P_j(x) P_k(c x + d) dx vanishes for k > j. Row j reads
    // column k + 1 of row j - 1, so columns up to n_r + m are carried.
    const int width = nr + m;
    std::vector<double> prev2(width, 0.0);
    std::vector<double> prev1(width, 0.0);
    std::vector<double> cur(width, 0.0);
    prev1[0] = 2.0 / c;
    const int off = space.offset(static_cast<int>(r));
    const double scale_r = 1.0 / std::sqrt(cr);
    for (int j = 0; j < m; ++j) {
      if (j > 0) {
        const int kend = std::min(width - 1, j);
        for (int k = 0; k <= kend; ++k) {
          const double up = (k + 1 < width) ? prev1[k + 1] : 0.0;
          const double down = (k > 0) ? prev1[k - 1] : 0.0;
          const double a = (2.0 * j - 1.0) / (c * j);
          cur[k] = a * ((k + 1.0) / (2.0 * k + 1.0) * up + k / (2.0 * k + 1.0) * down - d * prev1[k]) -
                   (j - 1.0) / j * prev2[k];
        }
        std::swap(prev2, prev1);
        std::swap(prev1, cur);
      }
      // prev1 now holds row j.
      for (int k = 0; k < nr && k <= j; ++k) {
        U(j, off + k) = std::sqrt(j + 0.5) * std::sqrt(k + 0.5) * scale_r * prev1[k];
      }
    }
  }
  return {std::move(U), {scheme}, space, "legendre-recurrence"};
}

DesignMatrix assemble_legendre_gauss(int m, const ReconstructionSpace& space) {
  require_1d(space, "assemble_legendre_gauss");
  const SamplingScheme scheme = SamplingScheme::legendre_coeff(m);
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(m, space.dim());
  const auto& ivs = space.intervals();
  for (std::size_t r = 0; r < ivs.size(); ++r) {
    const int nr = space.degrees()[r];
    const int order = (m + nr) / 2 + 1;
    if (order > 512) throw DomainError("assemble_legendre_gauss: m + n_r too large for exact Gauss rule");
    const auto& rule = gauss_legendre_rule(order);
    const double cr = ivs[r].c();
    const double dr = ivs[r].d();
    const int off = space.offset(static_cast<int>(r));
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(m, nr);
    for (int q = 0; q < order; ++q) {
      const double t = rule.nodes[q];
      const double x = dr + cr * t;
      const auto P = legendre_all(m - 1, x);
      const auto phi = reference_basis_values(space.lambda(), nr, t);
      const double w = rule.weights[q] * cr / std::sqrt(cr);
      for (int j = 0; j < m; ++j) {
        const double pj = w * std::sqrt(j + 0.5) * P[j];
        for (int k = 0; k < nr; ++k) block(j, k) += pj * phi[k];
      }
    }
    U.block(0, off, m, nr) = block.cast<cplx>();
  }
  return {std::move(U), {scheme}, space, "legendre-gauss"};
}

DesignMatrix assemble_tensor(const std::vector<DesignMatrix>& factors) {
  if (factors.size() < 2) throw DomainError("assemble_tensor: needs at least two factors");
  double entries = 1.0;
  for (const auto& f : factors) entries *= static_cast<double>(f.rows()) * static_cast<double>(f.cols());
  if (entries > 1e8) throw DomainError("assemble_tensor: Kronecker product exceeds 1e8 entries");
  Eigen::MatrixXcd U = factors[0].U;
  std::vector<SamplingScheme> schemes = factors[0].schemes;
  std::vector<ReconstructionSpace> spaces{factors[0].space};
  std::string method = factors[0].method;
  for (std::size_t i = 1; i < factors.size(); ++i) {
    const auto& B = factors[i].U;
    Eigen::MatrixXcd K(U.rows() * B.rows(), U.cols() * B.cols());
    for (Eigen::Index a = 0; a < U.rows(); ++a) {
      for (Eigen::Index b = 0; b < U.cols(); ++b) {
        K.block(a * B.rows(), b * B.cols(), B.rows(), B.cols()) = U(a, b) * B;
      }
    }
    U = std::move(K);
    schemes.insert(schemes.end(), factors[i].schemes.begin(), factors[i].schemes.end());
    spaces.push_back(factors[i].space);
    method += "(x)" + factors[i].method;
  }
  return {std::move(U), std::move(schemes), ReconstructionSpace::tensor(std::move(spaces)), method};
}

DesignMatrix assemble(const SamplingScheme& scheme, const ReconstructionSpace& space) {
  if (space.is_tensor()) {
    return assemble(std::vector<SamplingScheme>(space.factors().size(), scheme), space);
  }
  if (scheme.fourier_kind()) return assemble_fourier_type(scheme, space);
  if (space.lambda().legendre()) return assemble_legendre_legendre(scheme.m(), space);
  return assemble_legendre_gauss(scheme.m(), space);
}

DesignMatrix assemble(const std::vector<SamplingScheme>& schemes, const ReconstructionSpace& space) {
  if (!space.is_tensor()) {
    if (schemes.size() != 1) throw IncompatiblePair("assemble: 1-D space needs exactly one scheme");
    return assemble(schemes[0], space);
  }
  if (schemes.size() != space.factors().size()) {
    throw IncompatiblePair("assemble: need one scheme per tensor factor");
  }
  std::vector<DesignMatrix> parts;
  for (std::size_t i = 0; i < schemes.size(); ++i) parts.push_back(assemble(schemes[i], space.factors()[i]));
  return assemble_tensor(parts);
}

void write_design_matrix(std::ostream& os, const DesignMatrix& U) {
  os << "j,k,re,im\n";
  char buf[96];
  for (Eigen::Index j = 0; j < U.rows(); ++j) {
    for (Eigen::Index k = 0; k < U.cols(); ++k) {
      std::snprintf(buf, sizeof buf, "%ld,%ld,%.17g,%.17g\n", static_cast<long>(j), static_cast<long>(k),
                    U.U(j, k).real(), U.U(j, k).imag());
      os << buf;
    }
  }
}

}  // namespace gensamp
