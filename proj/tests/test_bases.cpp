#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "gensamp/bases.hpp"
#include "gensamp/error.hpp"
#include "gensamp/specfun.hpp"
#include "gensamp/testfunctions.hpp"

using namespace gensamp;
using doctest::Approx;

namespace {

int position(const SampleVector& s, const std::string& label) {
  for (std::size_t j = 0; j < s.index_map.size(); ++j) {
    if (s.index_map[j] == label) return static_cast<int>(j);
  }
  return -1;
}

// Composite Gauss with deliberately irregular panels, split at the breakpoints.
cplx shifted_panel_integral(const ComplexFn& f, const std::vector<double>& cuts, int panels) {
  cplx total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s], b = cuts[s + 1];
    for (int p = 0; p < panels; ++p) {
      const double t0 = (p + 0.37 * (p > 0)) / panels;
      const double t1 = (p + 1 == panels) ? 1.0 : (p + 1.37) / panels;
      total += gauss_integrate(f, a + (b - a) * t0, a + (b - a) * t1, 30);
    }
  }
  return total;
}

double norm_sq_vector(const SampleVector& s) {
  double t = 0.0;
  for (const auto& v : s.values) t += std::norm(v);
  return t;
}

}  // namespace

TEST_CASE("scheme counts and tags") {
  CHECK(SamplingScheme::fourier(10).count() == 9);
  CHECK(SamplingScheme::fourier(11).count() == 9);
  CHECK(SamplingScheme::fourier(10).effective_index() == 5);
  CHECK(SamplingScheme::modified_fourier(10).count() == 11);
  CHECK(SamplingScheme::legendre_coeff(10).count() == 10);
  CHECK(SamplingScheme::legendre_coeff(10).effective_index() == 10);
  CHECK(SamplingScheme::fourier(6).d1() == 1.0);
  CHECK(SamplingScheme::fourier(6).d2() == 1.0);
  CHECK_THROWS_AS(SamplingScheme::fourier(1), DomainError);
  CHECK_THROWS_AS(SamplingScheme::modified_fourier(1), DomainError);
  CHECK_THROWS_AS(SamplingScheme::oversampled_fourier(8, 0.5), DomainError);
  CHECK_THROWS_AS(SamplingScheme::legendre_coeff(0), DomainError);
  for (const auto& s : {SamplingScheme::fourier(8), SamplingScheme::modified_fourier(8),
                        SamplingScheme::legendre_coeff(8), SamplingScheme::oversampled_fourier(8, 2.5)}) {
    CHECK(parse_scheme(s.tag(), 8) == s);
  }
  CHECK_THROWS(parse_scheme("chebyshev", 8));
  CHECK_THROWS(parse_scheme("ofourier:x", 8));
  const auto mf = SamplingScheme::modified_fourier(6).modes();
  REQUIRE(mf.size() == 7);
  CHECK(mf[0].label == "c0");
  CHECK(mf[1].label == "c1");
  CHECK(mf[2].label == "s1");
  CHECK(mf[6].label == "s3");
}

TEST_CASE("samples of a Fourier mode and a constant") {
  const auto scheme = SamplingScheme::fourier(10);
  const auto psi3 = scheme.modes()[position(sample_function([](double) { return 0.0; }, {}, scheme), "3")];
  // Real and imaginary parts sampled separately, then combined.
  const auto re = sample_function([&](double x) { return psi3.eval(x).real(); }, {}, scheme);
  const auto im = sample_function([&](double x) { return psi3.eval(x).imag(); }, {}, scheme);
  for (std::size_t j = 0; j < re.values.size(); ++j) {
    const cplx v = re.values[j] + cplx(0.0, 1.0) * im.values[j];
    const double expect = re.index_map[j] == "3" ? 1.0 : 0.0;
    CHECK(std::abs(v - expect) <= 1e-13);
  }

  const auto one = sample_function([](double) { return 1.0; }, {}, SamplingScheme::fourier(6));
  for (std::size_t j = 0; j < one.values.size(); ++j) {
    const double expect = one.index_map[j] == "0" ? std::sqrt(2.0) : 0.0;
    CHECK(std::abs(one.values[j] - expect) <= 1e-14);
  }
}

TEST_CASE("tanner samples against shifted-panel quadrature") {
  const auto& t = test_function("tanner");
  const auto scheme = SamplingScheme::fourier(64);
  const auto s = sample_function(t.f, t.breakpoints, scheme);
  const auto modes = scheme.modes();
  REQUIRE(s.values.size() == modes.size());
  for (std::size_t j = 0; j < modes.size(); ++j) {
    const cplx oracle = shifted_panel_integral(
        [&](double x) { return t.f(x) * std::conj(modes[j].eval(x)); }, {-1.0, -0.5, 1.0}, 16);
    CHECK(std::abs(s.values[j] - oracle) <= 1e-11);
  }
}

TEST_CASE("modified Fourier from transform samples") {
  std::map<double, cplx> zero;
  for (int k = -4; k <= 4; ++k) zero[k] = 0.0;
  for (int k = 1; k <= 4; ++k) {
    zero[k - 0.5] = 0.0;
    zero[0.5 - k] = 0.0;
  }
  for (const auto& v : modified_from_transform(zero, 8).values) CHECK(v == cplx(0.0));

  // f = 1: Ff(t) = 2 sin(pi t) / (pi t).
  auto sinc2 = [](double t) { return t == 0.0 ? 2.0 : 2.0 * std::sin(std::numbers::pi * t) / (std::numbers::pi * t); };
  std::map<double, cplx> one;
  for (int k = -2; k <= 2; ++k) one[k] = sinc2(k);
  for (int k = 1; k <= 2; ++k) {
    one[k - 0.5] = sinc2(k - 0.5);
    one[0.5 - k] = sinc2(0.5 - k);
  }
  const auto s = modified_from_transform(one, 4);
  REQUIRE(s.values.size() == 5);
  // The stored constant mode is cos(0)/sqrt(2), so the coefficient 2 appears as sqrt(2).
  CHECK(std::abs(s.values[0] - std::sqrt(2.0)) <= 1e-15);
  for (std::size_t j = 1; j < s.values.size(); ++j) CHECK(std::abs(s.values[j]) <= 1e-15);

  std::map<double, cplx> partial = one;
  partial.erase(-1.5);
  CHECK_THROWS_WITH_AS(modified_from_transform(partial, 4), doctest::Contains("Ff("), DomainError);
}

TEST_CASE("modified Fourier transform route matches direct sampling") {
  const auto& f = test_function("exp-cos8");
  const int m = 20;
  std::map<double, cplx> ff;
  auto transform = [&](double t) {
    AdaptiveOptions opts;
    opts.tol = 1e-14;
    opts.frequency = std::abs(t) * std::numbers::pi + 8.0;
    return integrate_adaptive([&](double x) { return f.f(x) * std::exp(cplx(0.0, -std::numbers::pi * t * x)); },
                              -1.0, 1.0, opts);
  };
  for (int k = -m / 2; k <= m / 2; ++k) ff[k] = transform(k);
  for (int k = 1; k <= m / 2; ++k) {
    ff[k - 0.5] = transform(k - 0.5);
    ff[0.5 - k] = transform(0.5 - k);
  }
  const auto via = modified_from_transform(ff, m);
  const auto direct = sample_function(f.f, f.breakpoints, SamplingScheme::modified_fourier(m));
  REQUIRE(via.values.size() == direct.values.size());
  CHECK(via.index_map == direct.index_map);
  for (std::size_t j = 0; j < via.values.size(); ++j) CHECK(std::abs(via.values[j] - direct.values[j]) <= 1e-12);
}

TEST_CASE("truncated expansion") {
  const auto scheme = SamplingScheme::legendre_coeff(6);
  const auto phi2 = [](double x) { return std::sqrt(2.5) * legendre_eval(2, x); };
  const auto s = sample_function(phi2, {}, scheme);
  for (double x : {-0.9, -0.2, 0.0, 0.55, 1.0}) CHECK(truncated_expansion_eval(s, x) == Approx(phi2(x)).epsilon(1e-12));

  const auto mf = SamplingScheme::modified_fourier(8);
  const auto mode = mf.modes()[4];
  const auto sm = sample_function([&](double x) { return mode.eval(x).real(); }, {}, mf);
  for (double x : {-0.7, 0.1, 0.9}) CHECK(truncated_expansion_eval(sm, x) == Approx(mode.eval(x).real()).epsilon(1e-12));

  // f(x) = x: the Fourier series is sum_k 2 (-1)^(k+1) sin(k pi x) / (k pi).
  const auto lin = sample_function([](double x) { return x; }, {}, SamplingScheme::fourier(128));
  double series = 0.0;
  for (int k = 1; k <= 63; ++k) series += 2.0 * (k % 2 ? 1.0 : -1.0) * std::sin(k * std::numbers::pi * 0.5) / (k * std::numbers::pi);
  const cplx value = truncated_expansion_eval_complex(lin, 0.5);
  CHECK(std::abs(value.imag()) <= 1e-10);
  CHECK(value.real() == Approx(series).epsilon(1e-12));
  CHECK(std::abs(value.real() - 0.5) <= 2e-2);
}

TEST_CASE("Gibbs overshoot persists") {
  auto step = [](double x) { return x < 0.0 ? -1.0 : 1.0; };
  const std::vector<double> bps{0.0};
  for (int m : {32, 128, 512}) {
    const auto s = sample_function(step, bps, SamplingScheme::fourier(m));
    double worst = 0.0;
    for (int i = 1; i < 400; ++i) {
      const double x = 0.25 * i / 400.0;
      worst = std::max(worst, std::abs(truncated_expansion_eval(s, x) - 1.0));
    }
    CHECK(worst > 0.15);
  }
}

TEST_CASE("Parseval gap for a polynomial") {
  auto f = [](double x) { return x * x * x - x; };
  const double exact = 16.0 / 105.0;
  for (const auto& scheme : {SamplingScheme::fourier(16), SamplingScheme::modified_fourier(12),
                             SamplingScheme::legendre_coeff(3), SamplingScheme::legendre_coeff(5)}) {
    const auto s = sample_function(f, {}, scheme);
    const double captured = norm_sq_vector(s);
    CHECK(captured <= exact + 1e-14);
    const cplx gap = integrate_adaptive(
        [&](double x) { return cplx(std::norm(f(x) - truncated_expansion_eval_complex(s, x))); }, -1.0, 1.0, 1e-15);
    CHECK(std::abs(exact - captured - gap.real()) <= 1e-10);
  }
}

TEST_CASE("sampling functions are orthonormal") {
  for (const auto& scheme : {SamplingScheme::fourier(12), SamplingScheme::modified_fourier(10),
                             SamplingScheme::legendre_coeff(10)}) {
    const auto modes = scheme.modes();
    for (std::size_t a = 0; a < modes.size(); ++a) {
      for (std::size_t b = a; b < modes.size(); ++b) {
        const cplx ip = inner_product_oracle([&](double x) { return modes[a].eval(x); },
                                             [&](double x) { return modes[b].eval(x); }, {}, 40.0);
        CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) <= 1e-12);
      }
    }
  }
  // The oversampled family is orthonormal on [-c, c].
  const double c = 2.0;
  const auto modes = SamplingScheme::oversampled_fourier(10, c).modes();
  for (std::size_t a = 0; a < modes.size(); ++a) {
    for (std::size_t b = a; b < modes.size(); ++b) {
      const cplx ip = integrate_adaptive(
          [&](double x) { return modes[a].eval(x) * std::conj(modes[b].eval(x)); }, -c, c, 1e-14);
      CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) <= 1e-12);
    }
  }
}

TEST_CASE("coefficient file round trip") {
  const auto& t = test_function("tanner");
  for (const auto& scheme : {SamplingScheme::fourier(16), SamplingScheme::modified_fourier(8),
                             SamplingScheme::legendre_coeff(7), SamplingScheme::oversampled_fourier(10, 1.5)}) {
    const auto s = sample_function(t.f, t.breakpoints, scheme);
    std::stringstream ss;
    write_coefficients(ss, s);
    const auto back = read_coefficients(ss);
    CHECK(back.scheme == s.scheme);
    CHECK(back.index_map == s.index_map);
    REQUIRE(back.values.size() == s.values.size());
    for (std::size_t j = 0; j < s.values.size(); ++j) {
      CHECK(back.values[j].real() == s.values[j].real());
      CHECK(back.values[j].imag() == s.values[j].imag());
    }
  }
}

TEST_CASE("odd Fourier budgets read back as the equivalent even budget") {
  const auto s = sample_function([](double x) { return x; }, {}, SamplingScheme::fourier(9));
  std::stringstream ss;
  write_coefficients(ss, s);
  const auto back = read_coefficients(ss);
  CHECK(back.scheme.m() == 8);
  CHECK(back.scheme.count() == s.scheme.count());
}

TEST_CASE("coefficient file errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    std::istringstream is(text);
    try {
      read_coefficients(is);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("kind,idx,re,im\n") == 1);
  CHECK(line_of("") == 1);
  CHECK(line_of("kind,index,re,im\nfourier,-1,0,0\nfourier,0,abc,0\nfourier,1,0,0\n") == 3);
  CHECK(line_of("kind,index,re,im\nfourier,-1,0,0\nfourier,0,1,0\nfourier,2,0,0\n") == 4);
  CHECK(line_of("kind,index,re,im\nfourier,-1,0,0\nfourier,0,1\n") == 3);
  CHECK(line_of("kind,index,re,im\nlegcoeff,0,1,0\nmfourier,1,1,0\n") == 3);
  CHECK(line_of("kind,index,re,im\nwavelet,0,1,0\n") == 2);
  CHECK(line_of("kind,index,re,im\r\nlegcoeff,0,1,0\r\nlegcoeff,1,2,0\r\n") == -1);
}
