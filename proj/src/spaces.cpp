#include "gensamp/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "gensamp/error.hpp"
#include "gensamp/quadrature.hpp"

namespace gensamp {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

ReconstructionSpace ReconstructionSpace::gegenbauer(double lambda, int n) {
  if (n < 1) throw DomainError("Gegenbauer space needs n >= 1");
  ReconstructionSpace s(SpaceKind::Gegenbauer, GegenbauerParam(lambda));
  s.degrees_ = {n};
  s.intervals_ = {Interval{-1.0, 1.0}};
  s.finish();
  return s;
}

ReconstructionSpace ReconstructionSpace::piecewise(std::vector<double> breakpoints, std::vector<int> degrees,
                                                   double lambda) {
  ReconstructionSpace s(SpaceKind::PiecewiseGegenbauer, GegenbauerParam(lambda));
  if (degrees.size() != breakpoints.size() + 1) {
    throw DomainError("piecewise space: need one degree per interval (" + std::to_string(breakpoints.size() + 1) +
                      "), got " + std::to_string(degrees.size()));
  }
  double prev = -1.0;
  for (double b : breakpoints) {
    if (!(b > prev) || !(b < 1.0)) throw DomainError("piecewise space: breakpoints must increase inside (-1, 1)");
    s.intervals_.push_back({prev, b});
    prev = b;
  }
  s.intervals_.push_back({prev, 1.0});
  for (int d : degrees) {
    if (d < 1) throw DomainError("piecewise space: every interval needs at least one degree");
  }
  s.breakpoints_ = std::move(breakpoints);
  s.degrees_ = std::move(degrees);
  s.finish();
  return s;
}

ReconstructionSpace ReconstructionSpace::tensor(std::vector<ReconstructionSpace> factors) {
  if (factors.size() < 2) throw DomainError("tensor space needs at least two factors");
  for (const auto& f : factors) {
    if (f.is_tensor()) throw DomainError("tensor factors must be one-dimensional");
  }
  ReconstructionSpace s(SpaceKind::TensorProduct, factors.front().lambda());
  s.dim_ = 1;
  for (const auto& f : factors) s.dim_ *= f.dim();
  s.factors_ = std::move(factors);
  return s;
}

void ReconstructionSpace::finish() {
  dim_ = 0;
  offsets_.clear();
  for (int d : degrees_) {
    offsets_.push_back(dim_);
    dim_ += d;
  }
  const int top = max_degree();
  norms_.resize(static_cast<std::size_t>(top) + 1);
  for (int k = 0; k <= top; ++k) {
    norms_[k] = lambda_.chebyshev_t() ? 1.0 / chebyshev_t_weighted_norm(k)
                                      : 1.0 / gegenbauer_weighted_norm(lambda_, k);
  }
}

int ReconstructionSpace::max_degree() const noexcept {
  int top = 0;
  for (int d : degrees_) top = std::max(top, d - 1);
  return top;
}

int ReconstructionSpace::offset(int r) const {
  if (r < 0 || r >= static_cast<int>(offsets_.size())) throw DomainError("interval index out of range");
  return offsets_[r];
}

ReconstructionSpace::Local ReconstructionSpace::locate(int flat) const {
  if (is_tensor()) throw DomainError("locate: tensor space has no interval structure");
  if (flat < 0 || flat >= dim_) {
    throw DomainError("basis index " + std::to_string(flat) + " out of range [0, " + std::to_string(dim_) + ")");
  }
  int r = static_cast<int>(std::upper_bound(offsets_.begin(), offsets_.end(), flat) - offsets_.begin()) - 1;
  return {r, flat - offsets_[r]};
}

std::vector<int> ReconstructionSpace::unflatten(int flat) const {
  if (!is_tensor()) return {flat};
  if (flat < 0 || flat >= dim_) {
    throw DomainError("basis index " + std::to_string(flat) + " out of range [0, " + std::to_string(dim_) + ")");
  }
  std::vector<int> idx(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    idx[i] = flat % factors_[i].dim();
    flat /= factors_[i].dim();
  }
  return idx;
}

double ReconstructionSpace::normalization(int degree) const {
  if (degree < 0 || degree >= static_cast<int>(norms_.size())) throw DomainError("degree out of range");
  return norms_[degree];
}

std::string ReconstructionSpace::describe() const {
  switch (kind_) {
    case SpaceKind::Gegenbauer:
      return "gegenbauer:" + fmt(lambda_.lambda()) + ":" + std::to_string(degrees_[0]);
    case SpaceKind::PiecewiseGegenbauer: {
      std::string s = "piecewise:";
      for (std::size_t i = 0; i < breakpoints_.size(); ++i) s += (i ? "," : "") + fmt(breakpoints_[i]);
      s += ":";
      for (std::size_t i = 0; i < degrees_.size(); ++i) s += (i ? "," : "") + std::to_string(degrees_[i]);
      return s + ":" + fmt(lambda_.lambda());
    }
    case SpaceKind::TensorProduct: {
      std::string s = "tensor:";
      for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? "x" : "") + factors_[i].describe();
      return s;
    }
  }
  return {};
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double to_double(const std::string& s, const std::string& ctx) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw DomainError("bad number '" + s + "' in space spec '" + ctx + "'");
  return v;
}

int to_int(const std::string& s, const std::string& ctx) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0') throw DomainError("bad integer '" + s + "' in space spec '" + ctx + "'");
  return static_cast<int>(v);
}

}  // namespace

ReconstructionSpace parse_space(const std::string& text) {
  if (text.rfind("tensor:", 0) == 0) {
    std::vector<ReconstructionSpace> factors;
    for (const auto& part : split(text.substr(7), 'x')) factors.push_back(parse_space(part));
    return ReconstructionSpace::tensor(std::move(factors));
  }
  const auto parts = split(text, ':');
  if (parts[0] == "gegenbauer") {
    if (parts.size() != 3) throw DomainError("expected gegenbauer:<lambda>:<n>, got '" + text + "'");
    return ReconstructionSpace::gegenbauer(to_double(parts[1], text), to_int(parts[2], text));
  }
  if (parts[0] == "piecewise") {
    if (parts.size() != 3 && parts.size() != 4) {
      throw DomainError("expected piecewise:<bp,...>:<n0,n1,...>[:<lambda>], got '" + text + "'");
    }
    std::vector<double> bps;
    if (!parts[1].empty()) {
      for (const auto& b : split(parts[1], ',')) bps.push_back(to_double(b, text));
    }
    std::vector<int> degs;
    for (const auto& d : split(parts[2], ',')) degs.push_back(to_int(d, text));
    const double lambda = parts.size() == 4 ? to_double(parts[3], text) : 0.5;
    return ReconstructionSpace::piecewise(std::move(bps), std::move(degs), lambda);
  }
  throw DomainError("unknown space spec '" + text + "'");
}

std::vector<double> reference_basis_values(const GegenbauerParam& lambda, int count, double t) {
  if (count <= 0) return {};
  std::vector<double> v = gegenbauer_all(lambda, count - 1, t);
  for (int k = 0; k < count; ++k) {
    v[k] *= lambda.chebyshev_t() ? 1.0 / chebyshev_t_weighted_norm(k) : 1.0 / gegenbauer_weighted_norm(lambda, k);
  }
  return v;
}

double basis_eval(const ReconstructionSpace& space, int flat_index, double x) {
  if (space.is_tensor()) throw DomainError("basis_eval: tensor space needs a point");
  const auto [r, k] = space.locate(flat_index);
  const Interval& iv = space.intervals()[r];
  const bool last = r + 1 == static_cast<int>(space.intervals().size());
  // Half-open intervals [lo, hi), the last one closed, so each x belongs to one piece.
  if (x < iv.lo || x > iv.hi || (!last && x == iv.hi)) return 0.0;
  const double t = std::clamp((x - iv.d()) / iv.c(), -1.0, 1.0);
  return gegenbauer_eval(space.lambda(), k, t) * space.normalization(k) / std::sqrt(iv.c());
}

double basis_eval(const ReconstructionSpace& space, int flat_index, std::span<const double> point) {
  if (!space.is_tensor()) {
    if (point.size() != 1) throw DomainError("basis_eval: 1-D space needs a 1-D point");
    return basis_eval(space, flat_index, point[0]);
  }
  if (point.size() != space.factors().size()) throw DomainError("basis_eval: point dimension mismatch");
  const auto idx = space.unflatten(flat_index);
  double v = 1.0;
  for (std::size_t i = 0; i < idx.size(); ++i) v *= basis_eval(space.factors()[i], idx[i], point[i]);
  return v;
}

std::vector<double> basis_values(const ReconstructionSpace& space, double x) {
  if (space.is_tensor()) throw DomainError("basis_values: tensor space needs a point");
  std::vector<double> out(space.dim(), 0.0);
  const auto& ivs = space.intervals();
  for (std::size_t r = 0; r < ivs.size(); ++r) {
    const bool last = r + 1 == ivs.size();
    if (x < ivs[r].lo || x > ivs[r].hi || (!last && x == ivs[r].hi)) continue;
    const double t = std::clamp((x - ivs[r].d()) / ivs[r].c(), -1.0, 1.0);
    const int n = space.degrees()[r];
    const auto c = gegenbauer_all(space.lambda(), n - 1, t);
    const double s = 1.0 / std::sqrt(ivs[r].c());
    for (int k = 0; k < n; ++k) out[space.offset(static_cast<int>(r)) + k] = c[k] * space.normalization(k) * s;
    break;
  }
  return out;
}

Eigen::MatrixXd gram_matrix(const ReconstructionSpace& space) {
  if (space.is_tensor()) {
    Eigen::MatrixXd g = gram_matrix(space.factors()[0]);
    for (std::size_t i = 1; i < space.factors().size(); ++i) g = kron(g, gram_matrix(space.factors()[i]));
    return g;
  }
  const int n = space.dim();
  if (space.lambda().legendre()) return Eigen::MatrixXd::Identity(n, n);

  // Each block is the reference-interval Gram: the 1/sqrt(c_r) scaling cancels the Jacobian.
  const int top = space.max_degree() + 1;
  const auto& rule = gauss_legendre_rule(std::min(512, top + 2));
  Eigen::MatrixXd ref = Eigen::MatrixXd::Zero(top, top);
  for (int q = 0; q < rule.order; ++q) {
    const auto v = reference_basis_values(space.lambda(), top, rule.nodes[q]);
    for (int j = 0; j < top; ++j) {
      for (int k = 0; k <= j; ++k) ref(j, k) += rule.weights[q] * v[j] * v[k];
    }
  }
  ref = ref.selfadjointView<Eigen::Lower>();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t r = 0; r < space.degrees().size(); ++r) {
    const int nr = space.degrees()[r];
    const int off = space.offset(static_cast<int>(r));
    g.block(off, off, nr, nr) = ref.topLeftCorner(nr, nr);
  }
  return g;
}

}  // namespace gensamp
