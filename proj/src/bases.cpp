#include "gensamp/bases.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "gensamp/error.hpp"
#include "gensamp/specfun.hpp"

namespace gensamp {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// exp(-i*step*j*x) for j = first, first+1, ..., advanced by multiplication
// and re-anchored with an exact polar every 64 steps.
void fill_exponentials(double x, double step, int first, int count, cplx* out) {
  const cplx rot = std::polar(1.0, -step * x);
  cplx cur;
  for (int i = 0; i < count; ++i) {
    if (i % 64 == 0) {
      cur = std::polar(1.0, -step * (first + i) * x);
    } else {
      cur *= rot;
    }
    out[i] = cur;
  }
}

}  // namespace

cplx SampleMode::eval(double x) const {
  switch (type) {
    case Type::Exp:
      return amplitude * std::polar(1.0, frequency * x);
    case Type::Cos:
      return amplitude * std::cos(frequency * x);
    case Type::Sin:
      return amplitude * std::sin(frequency * x);
    case Type::Legendre:
      if (std::abs(x) > 1.0) return 0.0;
      return amplitude * legendre_eval(degree, x);
  }
  return 0.0;
}

SamplingScheme::SamplingScheme(SchemeKind kind, int m, double c) : kind_(kind), m_(m), c_(c) {
  if (kind != SchemeKind::LegendreCoeff && m < 2) {
    throw DomainError("Fourier-type sampling needs m >= 2, got " + std::to_string(m));
  }
  if (m < 1) throw DomainError("sampling budget must be positive");
  if (kind == SchemeKind::OversampledFourier && !(c >= 1.0 && std::isfinite(c))) {
    throw DomainError("oversampling factor must be >= 1");
  }
}

SamplingScheme SamplingScheme::fourier(int m) { return {SchemeKind::Fourier, m, 1.0}; }
SamplingScheme SamplingScheme::oversampled_fourier(int m, double c) {
  return {SchemeKind::OversampledFourier, m, c};
}
SamplingScheme SamplingScheme::modified_fourier(int m) { return {SchemeKind::ModifiedFourier, m, 1.0}; }
SamplingScheme SamplingScheme::legendre_coeff(int m) { return {SchemeKind::LegendreCoeff, m, 1.0}; }

int SamplingScheme::effective_index() const noexcept {
  return kind_ == SchemeKind::LegendreCoeff ? m_ : m_ / 2;
}

int SamplingScheme::count() const noexcept {
  switch (kind_) {
    case SchemeKind::Fourier:
    case SchemeKind::OversampledFourier:
      return 2 * (m_ / 2) - 1;
    case SchemeKind::ModifiedFourier:
      return 1 + 2 * (m_ / 2);
    case SchemeKind::LegendreCoeff:
      return m_;
  }
  return 0;
}

std::vector<SampleMode> SamplingScheme::modes() const {
  std::vector<SampleMode> out;
  out.reserve(count());
  const int half = m_ / 2;
  switch (kind_) {
    case SchemeKind::Fourier:
    case SchemeKind::OversampledFourier:
      for (int j = -half + 1; j <= half - 1; ++j) {
        SampleMode mode;
        mode.type = SampleMode::Type::Exp;
        mode.frequency = j * kPi / c_;
        mode.amplitude = 1.0 / std::sqrt(2.0 * c_);
        mode.degree = j;
        mode.label = std::to_string(j);
        out.push_back(mode);
      }
      break;
    case SchemeKind::ModifiedFourier: {
      SampleMode c0;
      c0.type = SampleMode::Type::Cos;
      c0.amplitude = std::sqrt(0.5);
      c0.label = "c0";
      out.push_back(c0);
      for (int k = 1; k <= half; ++k) {
        SampleMode c;
        c.type = SampleMode::Type::Cos;
        c.frequency = k * kPi;
        c.degree = k;
        c.label = "c" + std::to_string(k);
        out.push_back(c);
        SampleMode s;
        s.type = SampleMode::Type::Sin;
        s.frequency = (k - 0.5) * kPi;
        s.degree = k;
        s.label = "s" + std::to_string(k);
        out.push_back(s);
      }
      break;
    }
    case SchemeKind::LegendreCoeff:
      for (int j = 0; j < m_; ++j) {
        SampleMode mode;
        mode.type = SampleMode::Type::Legendre;
        mode.degree = j;
        mode.amplitude = std::sqrt(j + 0.5);
        mode.label = std::to_string(j);
        out.push_back(mode);
      }
      break;
  }
  return out;
}

std::string SamplingScheme::tag() const {
  switch (kind_) {
    case SchemeKind::Fourier:
      return "fourier";
    case SchemeKind::OversampledFourier:
      return "ofourier:" + format_double(c_);
    case SchemeKind::ModifiedFourier:
      return "mfourier";
    case SchemeKind::LegendreCoeff:
      return "legcoeff";
  }
  return {};
}

SamplingScheme parse_scheme(const std::string& tag, int m) {
  if (tag == "fourier") return SamplingScheme::fourier(m);
  if (tag == "mfourier") return SamplingScheme::modified_fourier(m);
  if (tag == "legcoeff") return SamplingScheme::legendre_coeff(m);
  if (tag.rfind("ofourier:", 0) == 0) {
    const std::string num = tag.substr(9);
    char* end = nullptr;
    const double c = std::strtod(num.c_str(), &end);
    if (num.empty() || *end != '\0') throw DomainError("bad oversampling factor in '" + tag + "'");
    return SamplingScheme::oversampled_fourier(m, c);
  }
  throw DomainError("unknown sampling scheme '" + tag + "'");
}

namespace {

std::vector<std::string> labels_of(const std::vector<SampleMode>& modes) {
  std::vector<std::string> out;
  out.reserve(modes.size());
  for (const auto& mode : modes) out.push_back(mode.label);
  return out;
}

}  // namespace

SampleVector sample_function(const RealFn& f, std::span<const double> breakpoints,
                             const SamplingScheme& scheme) {
  const auto modes = scheme.modes();
  const int count = static_cast<int>(modes.size());
  const int half = scheme.m() / 2;

  AdaptiveOptions opts;
  opts.tol = 1e-13;
  opts.breakpoints.assign(breakpoints.begin(), breakpoints.end());

  VectorIntegrand kernel;
  std::vector<cplx> scratch(static_cast<std::size_t>(half) + 2);
  switch (scheme.kind()) {
    case SchemeKind::Fourier:
    case SchemeKind::OversampledFourier: {
      const double step = kPi / scheme.oversample_c();
      const double amp = 1.0 / std::sqrt(2.0 * scheme.oversample_c());
      opts.frequency = (half - 1) * step;
      kernel = [=](double x, cplx* out) {
        const double fx = f(x) * amp;
        fill_exponentials(x, step, -half + 1, count, out);
        for (int i = 0; i < count; ++i) out[i] *= fx;
      };
      break;
    }
    case SchemeKind::ModifiedFourier: {
      opts.frequency = half * kPi;
      kernel = [=, &scratch](double x, cplx* out) {
        const double fx = f(x);
        // scratch[k] = exp(-i k pi x); exp(-i (k - 1/2) pi x) = scratch[k] * exp(i pi x / 2).
        fill_exponentials(x, kPi, 0, half + 1, scratch.data());
        const cplx shift = std::polar(1.0, 0.5 * kPi * x);
        out[0] = fx * std::sqrt(0.5);
        for (int k = 1; k <= half; ++k) {
          out[2 * k - 1] = fx * scratch[k].real();
          out[2 * k] = -fx * (scratch[k] * shift).imag();
        }
      };
      break;
    }
    case SchemeKind::LegendreCoeff: {
      opts.frequency = scheme.m();
      kernel = [=](double x, cplx* out) {
        const double fx = f(x);
        double p0 = 1.0;
        double p1 = x;
        for (int j = 0; j < count; ++j) {
          double pj;
          if (j == 0) {
            pj = 1.0;
          } else if (j == 1) {
            pj = x;
          } else {
            pj = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = pj;
          }
          out[j] = fx * std::sqrt(j + 0.5) * pj;
        }
      };
      break;
    }
  }

  SampleVector out{scheme, {}, labels_of(modes)};
  try {
    out.values = integrate_adaptive_vector(kernel, count, -1.0, 1.0, opts);
  } catch (const NonConvergence& e) {
    throw NonConvergence(std::string("sample_function (") + scheme.tag() + "): " + e.what());
  }
  return out;
}

SampleVector modified_from_transform(const std::map<double, cplx>& transform, int m) {
  const SamplingScheme scheme = SamplingScheme::modified_fourier(m);
  auto at = [&](double t) {
    auto it = transform.find(t);
    if (it == transform.end()) {
      throw DomainError("modified_from_transform: missing transform sample Ff(" + format_double(t) + ")");
    }
    return it->second;
  };
  const int half = m / 2;
  std::vector<cplx> values;
  values.reserve(scheme.count());
  values.push_back(at(0.0) * std::sqrt(0.5));
  const cplx i(0.0, 1.0);
  for (int k = 1; k <= half; ++k) {
    values.push_back(0.5 * (at(k) + at(-k)));
    values.push_back(0.5 * i * (at(k - 0.5) - at(0.5 - k)));
  }
  return {scheme, std::move(values), labels_of(scheme.modes())};
}

cplx truncated_expansion_eval_complex(const SampleVector& samples, double x) {
  const auto modes = samples.scheme.modes();
  cplx sum = 0.0;
  for (std::size_t j = 0; j < modes.size(); ++j) sum += samples.values[j] * modes[j].eval(x);
  return sum;
}

double truncated_expansion_eval(const SampleVector& samples, double x) {
  return truncated_expansion_eval_complex(samples, x).real();
}

void write_coefficients(std::ostream& os, const SampleVector& samples) {
  const std::string tag = samples.scheme.tag();
  os << "kind,index,re,im\n";
  for (std::size_t j = 0; j < samples.values.size(); ++j) {
    os << tag << ',' << samples.index_map[j] << ',' << format_double(samples.values[j].real()) << ','
       << format_double(samples.values[j].imag()) << '\n';
  }
}

void write_coefficients(const std::string& path, const SampleVector& samples) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  write_coefficients(os, samples);
  if (!os) throw Error("write failed for '" + path + "'");
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& text, int line) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0') throw ParseError("not a number: '" + text + "'", line);
  return v;
}

}  // namespace

SampleVector read_coefficients(std::istream& is) {
  std::string line;
  int line_no = 0;
  auto next = [&]() {
    if (!std::getline(is, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };
  if (!next()) throw ParseError("empty coefficient file", 1);
  if (line != "kind,index,re,im") throw ParseError("expected header 'kind,index,re,im'", line_no);

  std::string tag;
  std::vector<std::string> labels;
  std::vector<cplx> values;
  std::vector<int> lines;
  while (next()) {
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 4) throw ParseError("expected 4 fields, got " + std::to_string(fields.size()), line_no);
    if (tag.empty()) {
      tag = fields[0];
    } else if (fields[0] != tag) {
      throw ParseError("mixed kinds '" + tag + "' and '" + fields[0] + "'", line_no);
    }
    labels.push_back(fields[1]);
    values.emplace_back(parse_number(fields[2], line_no), parse_number(fields[3], line_no));
    lines.push_back(line_no);
  }
  if (values.empty()) throw ParseError("no coefficients", line_no);

  const int count = static_cast<int>(values.size());
  int m = 0;
  if (tag == "fourier" || tag.rfind("ofourier:", 0) == 0) {
    if (count % 2 == 0) throw ParseError("Fourier samples need an odd count", lines.back());
    m = count + 1;
  } else if (tag == "mfourier") {
    if (count % 2 == 0 || count < 3) throw ParseError("modified-Fourier samples need 1 + 2k entries", lines.back());
    m = count - 1;
  } else if (tag == "legcoeff") {
    m = count;
  } else {
    throw ParseError("unknown kind '" + tag + "'", lines.front());
  }
  SamplingScheme scheme = SamplingScheme::fourier(2);
  try {
    scheme = parse_scheme(tag, m);
  } catch (const Error& e) {
    throw ParseError(e.what(), lines.front());
  }
  const auto expected = labels_of(scheme.modes());
  for (int j = 0; j < count; ++j) {
    if (labels[j] != expected[j]) {
      throw ParseError("index '" + labels[j] + "' where '" + expected[j] + "' was expected", lines[j]);
    }
  }
  return {scheme, std::move(values), expected};
}

SampleVector read_coefficients(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path + "'");
  return read_coefficients(is);
}

}  // namespace gensamp
