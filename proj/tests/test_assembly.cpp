#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "gensamp/assembly.hpp"
#include "gensamp/error.hpp"
#include "gensamp/quadrature.hpp"
#include "gensamp/specfun.hpp"

using namespace gensamp;
using doctest::Approx;

namespace {

// <phi_k, psi_j> by adaptive quadrature, split at the space's breakpoints.
cplx oracle_entry(const DesignMatrix& D, int j, int k) {
  const auto mode = D.schemes[0].modes()[j];
  return inner_product_oracle([&](double x) { return cplx(basis_eval(D.space, k, x)); },
                              [&](double x) { return mode.eval(x); }, D.space.breakpoints(),
                              std::abs(mode.frequency));
}

// Worst deviation over a seeded random 5% of entries (at least 25).
double sampled_oracle_error(const DesignMatrix& D, unsigned seed) {
  std::mt19937 rng(seed);
  const Eigen::Index total = D.rows() * D.cols();
  const Eigen::Index picks = std::min<Eigen::Index>(total, std::max<Eigen::Index>(25, total / 20));
  std::uniform_int_distribution<Eigen::Index> pick(0, total - 1);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < picks; ++i) {
    const Eigen::Index e = pick(rng);
    const int j = static_cast<int>(e / D.cols()), k = static_cast<int>(e % D.cols());
    worst = std::max(worst, std::abs(D.U(j, k) - oracle_entry(D, j, k)));
  }
  return worst;
}

int row_of(const SamplingScheme& s, const std::string& label) {
  const auto modes = s.modes();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i].label == label) return static_cast<int>(i);
  }
  FAIL("missing label " << label);
  return -1;
}

double max_column_norm(const DesignMatrix& D) { return D.U.colwise().norm().maxCoeff(); }

double seconds_once(const std::function<void()>& work) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 3; ++i) work();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TEST_CASE("Fourier-Legendre closed form") {
  const auto D = assemble_fourier_legendre(40, 12);
  const auto& s = D.schemes[0];
  CHECK(D.rows() == s.count());
  CHECK(D.cols() == 12);
  CHECK(std::abs(D.U(row_of(s, "1"), 0)) <= 1e-15);
  for (int k = 1; k < 12; ++k) CHECK(std::abs(D.U(row_of(s, "0"), k)) <= 1e-15);
  CHECK(std::abs(D.U(row_of(s, "0"), 0) - 1.0) <= 1e-15);

  const double z = 2 * std::numbers::pi;
  const double bessel = std::sqrt(2 * z / std::numbers::pi) * spherical_bessel_j(3, z);
  const cplx expected = std::pow(cplx(0, -1), 3) * std::sqrt(3.5 / 2.0) * bessel;
  const int r2 = row_of(s, "2");
  CHECK(std::abs(D.U(r2, 3) - expected) <= 1e-14);
  CHECK(std::abs(D.U(r2, 3) - oracle_entry(D, r2, 3)) <= 1e-10);

  CHECK(sampled_oracle_error(D, 1) <= 1e-10);
  CHECK(sampled_oracle_error(assemble_fourier_legendre(128, 32), 2) <= 1e-10);
  CHECK(max_column_norm(assemble_fourier_legendre(128, 32)) <= 1.0 + 1e-8);
}

TEST_CASE("Gegenbauer integrals") {
  for (double lam : {0.0, 0.5, 1.0, 2.5}) {
    const auto z0 = gegenbauer_fourier_integrals(GegenbauerParam(lam), 0.0, 7);
    for (int k = 1; k < 8; k += 2) CHECK(std::abs(z0[k]) <= 1e-15);
  }
  CHECK(std::abs(gegenbauer_fourier_integrals(GegenbauerParam(0.5), 0.0, 0)[0] - 2.0) <= 1e-15);

  auto check_against_oracle = [](double lam, double z, int kmax) {
    const GegenbauerParam p(lam);
    const auto I = gegenbauer_fourier_integrals(p, z, kmax);
    REQUIRE(static_cast<int>(I.size()) == kmax + 1);
    for (int k = 0; k <= kmax; ++k) {
      const cplx q = inner_product_oracle([&](double x) { return cplx(gegenbauer_eval(p, k, x)); },
                                          [&](double x) { return std::exp(cplx(0, -z * x)); }, {}, std::abs(z));
      CHECK(std::abs(I[k] - q) <= 1e-9 * std::max(1.0, std::abs(q)));
    }
  };
  check_against_oracle(1.0, 3 * std::numbers::pi, 8);
  check_against_oracle(0.0, -7.5, 30);
  check_against_oracle(2.0, 40.0, 60);
  check_against_oracle(0.25, 0.3, 12);
  check_against_oracle(1.0, 2.0, 45);
}

TEST_CASE("Fourier-Gegenbauer assembly") {
  const auto leg = assemble_fourier_legendre(64, 20);
  const auto geg = assemble_fourier_gegenbauer(64, ReconstructionSpace::gegenbauer(0.5, 20));
  CHECK((leg.U - geg.U).cwiseAbs().maxCoeff() <= 1e-10);

  const auto cheb = assemble_fourier_gegenbauer(30, ReconstructionSpace::gegenbauer(0.0, 9));
  const int r0 = row_of(cheb.schemes[0], "0");
  CHECK(std::abs(cheb.U(r0, 0) - std::sqrt(2.0 / std::numbers::pi)) <= 1e-14);
  for (int k = 1; k < 9; ++k) {
    CHECK(std::abs(cheb.U(r0, k) - oracle_entry(cheb, r0, k)) <= 1e-12);
  }

  const auto u = assemble_fourier_gegenbauer(20, ReconstructionSpace::gegenbauer(1.0, 6));
  for (int j = 0; j < u.rows(); ++j) {
    for (int k = 0; k < 6; ++k) CHECK(std::abs(u.U(j, k) - oracle_entry(u, j, k)) <= 1e-9);
  }
  CHECK(sampled_oracle_error(assemble_fourier_gegenbauer(200, ReconstructionSpace::gegenbauer(2.0, 24)), 3) <= 1e-9);
  CHECK(max_column_norm(cheb) <= 1.0 + 1e-8);
}

TEST_CASE("piecewise Fourier assembly") {
  const auto whole = ReconstructionSpace::piecewise({}, {10});
  CHECK((assemble_piecewise_fourier(50, whole).U - assemble_fourier_legendre(50, 10).U).cwiseAbs().maxCoeff() <=
        1e-14);

  const auto two = ReconstructionSpace::piecewise({-0.5}, {4, 4});
  const auto D = assemble_piecewise_fourier(30, two);
  const int r0 = row_of(D.schemes[0], "0");
  for (int r = 0; r < 2; ++r) {
    const double c = two.intervals()[r].c();
    CHECK(std::abs(D.U(r0, two.offset(r)) - std::sqrt(c)) <= 1e-14);
    CHECK(std::abs(D.U(r0, two.offset(r)) - oracle_entry(D, r0, two.offset(r))) <= 1e-12);
    for (int k = 1; k < 4; ++k) CHECK(std::abs(D.U(r0, two.offset(r) + k)) <= 1e-15);
  }

  const auto big = assemble_piecewise_fourier(256, ReconstructionSpace::piecewise({-0.5}, {16, 16}));
  CHECK(sampled_oracle_error(big, 4) <= 1e-9);
  CHECK(max_column_norm(big) <= 1.0 + 1e-8);

  const auto cheb = assemble_piecewise_fourier(120, ReconstructionSpace::piecewise({-0.3, 0.45}, {5, 7, 6}, 0.0));
  CHECK(cheb.method == "piecewise-gegenbauer-recurrence");
  CHECK(sampled_oracle_error(cheb, 5) <= 1e-9);
}

TEST_CASE("modified Fourier assembly") {
  const auto D = assemble_modified_fourier(41, ReconstructionSpace::gegenbauer(0.5, 14));
  const auto modes = D.schemes[0].modes();
  const int c0 = row_of(D.schemes[0], "c0");
  CHECK(std::abs(D.U(c0, 0) - 1.0) <= 1e-15);
  CHECK(std::abs(D.U(c0, 0) - oracle_entry(D, c0, 0)) <= 1e-13);
  for (std::size_t j = 0; j < modes.size(); ++j) {
    for (int k = 0; k < 14; ++k) {
      if (modes[j].type == SampleMode::Type::Cos && k % 2) CHECK(std::abs(D.U(j, k)) <= 1e-15);
      if (modes[j].type == SampleMode::Type::Sin && k % 2 == 0) CHECK(std::abs(D.U(j, k)) <= 1e-15);
    }
  }
  CHECK(sampled_oracle_error(D, 6) <= 1e-10);
  CHECK(max_column_norm(D) <= 1.0 + 1e-8);
  const auto pw = assemble_modified_fourier(80, ReconstructionSpace::piecewise({0.1}, {6, 9}, 1.0));
  CHECK(sampled_oracle_error(pw, 7) <= 1e-9);
}

TEST_CASE("oversampled Fourier assembly") {
  const auto s = SamplingScheme::oversampled_fourier(60, 1.5);
  const auto D = assemble(s, ReconstructionSpace::gegenbauer(0.5, 12));
  CHECK(sampled_oracle_error(D, 8) <= 1e-10);
  CHECK(max_column_norm(D) <= 1.0 + 1e-8);
}

TEST_CASE("Legendre-Legendre recurrence") {
  const auto mid = ReconstructionSpace::piecewise({-0.5, 0.5}, {3, 4, 3});
  const auto D = assemble_legendre_legendre(12, mid);
  // u_00 = b - a = 1 on [-1/2, 1/2]; entry = sqrt(1/2) sqrt(1/2) / sqrt(c) * u_00 with c = 1/2
  CHECK(std::abs(D.U(0, mid.offset(1)) - 0.5 / std::sqrt(0.5)) <= 1e-14);

  const auto one = ReconstructionSpace::piecewise({-0.5}, {2, 6});
  const auto E = assemble_legendre_legendre(9, one);
  const Interval I = one.intervals()[1];
  const double u53 = gauss_integrate_real(
      [&](double x) { return legendre_eval(5, x) * legendre_eval(3, (x - I.d()) / I.c()); }, I.lo, I.hi, 12);
  const double expected = std::sqrt(5.5) * std::sqrt(3.5) / std::sqrt(I.c()) * u53;
  CHECK(std::abs(E.U(5, one.offset(1) + 3) - expected) <= 1e-12);

  for (int j = 0; j < E.rows(); ++j) {
    for (int k = 0; k < E.cols(); ++k) CHECK(std::abs(E.U(j, k) - oracle_entry(E, j, k)) <= 1e-8);
  }
  const auto big = assemble_legendre_legendre(120, ReconstructionSpace::piecewise({-0.5, 0.25}, {10, 12, 10}));
  const auto gauss = assemble_legendre_gauss(120, big.space);
  CHECK((big.U - gauss.U).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK(sampled_oracle_error(big, 9) <= 1e-8);
  CHECK(max_column_norm(big) <= 1.0 + 1e-8);
}

TEST_CASE("Legendre coefficients against other spaces use Gauss rules") {
  const auto space = ReconstructionSpace::gegenbauer(0.0, 8);
  const auto D = assemble(SamplingScheme::legendre_coeff(20), space);
  CHECK(D.method.find("gauss") != std::string::npos);
  CHECK(sampled_oracle_error(D, 10) <= 1e-12);
}

TEST_CASE("tensor assembly") {
  Eigen::MatrixXcd I2 = Eigen::MatrixXcd::Identity(2, 2);
  const auto a = assemble_fourier_legendre(10, 3);
  const auto b = assemble_fourier_legendre(12, 4);
  const auto T = assemble_tensor({a, b});
  CHECK(T.rows() == a.rows() * b.rows());
  CHECK(T.cols() == 12);
  for (int r = 0; r < T.rows(); ++r) {
    for (int c = 0; c < T.cols(); ++c) {
      CHECK(std::abs(T.U(r, c) - a.U(r / b.rows(), c / 4) * b.U(r % b.rows(), c % 4)) <= 1e-15);
    }
  }
  const auto viaspace =
      assemble({SamplingScheme::fourier(10), SamplingScheme::fourier(12)},
               ReconstructionSpace::tensor({ReconstructionSpace::gegenbauer(0.5, 3), ReconstructionSpace::gegenbauer(0.5, 4)}));
  CHECK((viaspace.U - T.U).cwiseAbs().maxCoeff() <= 1e-15);

  // a few entries against 2-D quadrature: nested 1-D integrals of a separable integrand
  const auto f1 = assemble_fourier_legendre(32, 8);
  const auto T8 = assemble_tensor({f1, f1});
  const auto modes = f1.schemes[0].modes();
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> row(0, static_cast<int>(T8.rows()) - 1), col(0, 63);
  for (int t = 0; t < 6; ++t) {
    const int r = row(rng), c = col(rng);
    const int jr = r / static_cast<int>(f1.rows()), js = r % static_cast<int>(f1.rows());
    const int kr = c / 8, ks = c % 8;
    const cplx q = integrate_adaptive(
        [&](double x) {
          const cplx inner = integrate_adaptive(
              [&](double y) {
                return basis_eval(f1.space, kr, x) * basis_eval(f1.space, ks, y) *
                       std::conj(modes[jr].eval(x) * modes[js].eval(y));
              },
              -1.0, 1.0, 1e-13);
          return inner;
        },
        -1.0, 1.0, 1e-12);
    CHECK(std::abs(T8.U(r, c) - q) <= 1e-10);
  }
  CHECK_THROWS_AS(assemble_tensor({a}), DomainError);
}

TEST_CASE("matrix dump") {
  std::ostringstream os;
  write_design_matrix(os, assemble_fourier_legendre(4, 2));
  const std::string text = os.str();
  CHECK(text.rfind("j,k,re,im\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 3 * 2);
}

TEST_CASE("assembly cost scales like m n") {
  // interleaved so that machine noise hits both sizes alike
  auto small = [] { assemble_fourier_legendre(1024, 64); };
  auto large = [] { assemble_fourier_legendre(2048, 128); };
  small();
  large();
  double ts = 1e300, tl = 1e300;
  for (int rep = 0; rep < 9; ++rep) {
    ts = std::min(ts, seconds_once(small));
    tl = std::min(tl, seconds_once(large));
  }
  CHECK(tl <= 4.6 * ts);
}
