#include "gensamp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "gensamp/error.hpp"

namespace gensamp {

namespace {

constexpr int kMaxOrder = 512;
constexpr int kPanelOrder = 24;

QuadratureRule build_rule(int n) {
  QuadratureRule rule;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // i-th root counted from the right end, refined by Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Re-evaluate the derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;

  if (n <= 20) {
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], k);
      const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1.0);
      if (std::abs(s - exact) > 1e-13) {
        throw Error("gauss_legendre_rule: exactness check failed for order " + std::to_string(n));
      }
    }
  }
  return rule;
}

struct RuleTable {
  std::array<std::once_flag, kMaxOrder + 1> once;
  std::array<std::unique_ptr<QuadratureRule>, kMaxOrder + 1> rules;
};

RuleTable& rule_table() {
  static RuleTable table;
  return table;
}

struct PanelEstimate {
  cplx value;
  double abs_value;
};

PanelEstimate panel(const ComplexFn& f, double a, double b, const QuadratureRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double re = 0.0;
  double im = 0.0;
  double mag = 0.0;
  for (int i = 0; i < rule.order; ++i) {
    const cplx v = f(mid + half * rule.nodes[i]);
    re += rule.weights[i] * v.real();
    im += rule.weights[i] * v.imag();
    mag += rule.weights[i] * (std::abs(v.real()) + std::abs(v.imag()));
  }
  return {cplx(re * half, im * half), mag * half};
}

// Relative roundoff level of a panel estimate. An oscillatory factor
// exp(i w x) carries a phase error of about eps * |w x|, which the
// whole-versus-halves comparison cannot beat.
double roundoff_scale(const AdaptiveOptions& opts, double a, double b) {
  const double reach = std::max(std::abs(a), std::abs(b));
  return 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(opts.frequency) * reach);
}

// Compensated sum of complex panel contributions.
class KahanSum {
 public:
  void add(cplx v) {
    const double yr = v.real() - comp_re_;
    const double yi = v.imag() - comp_im_;
    const double tr = re_ + yr;
    const double ti = im_ + yi;
    comp_re_ = (tr - re_) - yr;
    comp_im_ = (ti - im_) - yi;
    re_ = tr;
    im_ = ti;
  }
  cplx value() const { return {re_, im_}; }

 private:
  double re_ = 0.0, im_ = 0.0, comp_re_ = 0.0, comp_im_ = 0.0;
};

}  // namespace

const QuadratureRule& gauss_legendre_rule(int order) {
  if (order < 1 || order > kMaxOrder) {
    throw DomainError("gauss_legendre_rule: order must be in [1, 512], got " + std::to_string(order));
  }
  auto& table = rule_table();
  std::call_once(table.once[order],
                 [&] { table.rules[order] = std::make_unique<QuadratureRule>(build_rule(order)); });
  return *table.rules[order];
}

cplx gauss_integrate(const ComplexFn& f, double a, double b, int order) {
  return panel(f, a, b, gauss_legendre_rule(order)).value;
}

double gauss_integrate_real(const RealFn& f, double a, double b, int order) {
  const auto& rule = gauss_legendre_rule(order);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (int i = 0; i < order; ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

cplx integrate_adaptive(const ComplexFn& f, double a, double b, const AdaptiveOptions& opts) {
  if (!(a < b)) throw DomainError("integrate_adaptive: requires a < b");
  if (!(opts.tol >= 1e-15)) throw DomainError("integrate_adaptive: tol must be >= 1e-15");

  std::vector<double> cuts{a};
  for (double x : opts.breakpoints) {
    if (x > a && x < b) {
      if (x <= cuts.back()) throw DomainError("integrate_adaptive: breakpoints must be sorted");
      cuts.push_back(x);
    }
  }
  cuts.push_back(b);

  const auto& rule = gauss_legendre_rule(kPanelOrder);
  const double length = b - a;
  const int initial = std::max(8, static_cast<int>(std::ceil(std::abs(opts.frequency) / 3.0)));
  const double floor_scale = roundoff_scale(opts, a, b);

  struct Pending {
    double lo, hi;
    PanelEstimate whole;
  };
  std::vector<std::pair<double, double>> seeds;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double lo = cuts[s];
    const double hi = cuts[s + 1];
    const int count = std::max(1, static_cast<int>(std::ceil(initial * (hi - lo) / length)));
    for (int p = 0; p < count; ++p) {
      const double x0 = lo + (hi - lo) * p / count;
      const double x1 = (p + 1 == count) ? hi : lo + (hi - lo) * (p + 1) / count;
      seeds.emplace_back(x0, x1);
    }
  }

  int panels = static_cast<int>(seeds.size());
  KahanSum total;
  std::vector<Pending> stack;
  for (const auto& [x0, x1] : seeds) {
    stack.push_back({x0, x1, panel(f, x0, x1, rule)});
    while (!stack.empty()) {
      Pending cur = stack.back();
      stack.pop_back();
      const double mid = 0.5 * (cur.lo + cur.hi);
      const PanelEstimate left = panel(f, cur.lo, mid, rule);
      const PanelEstimate right = panel(f, mid, cur.hi, rule);
      const cplx fine = left.value + right.value;
      const double err = std::abs(fine - cur.whole.value);
      const double local_tol = opts.tol * (cur.hi - cur.lo) / length;
      const double floor = floor_scale * (left.abs_value + right.abs_value);
      if (err <= std::max(local_tol, floor)) {
        total.add(fine);
        continue;
      }
      panels += 1;
      if (panels > opts.max_panels) {
        throw NonConvergence("integrate_adaptive: no convergence within " + std::to_string(opts.max_panels) +
                             " panels");
      }
      stack.push_back({cur.lo, mid, left});
      stack.push_back({mid, cur.hi, right});
    }
  }
  return total.value();
}

std::vector<cplx> integrate_adaptive_vector(const VectorIntegrand& f, int count, double a, double b,
                                            const AdaptiveOptions& opts) {
  if (!(a < b)) throw DomainError("integrate_adaptive_vector: requires a < b");
  if (!(opts.tol >= 1e-15)) throw DomainError("integrate_adaptive_vector: tol must be >= 1e-15");
  if (count < 0) throw DomainError("integrate_adaptive_vector: negative count");

  std::vector<double> cuts{a};
  for (double x : opts.breakpoints) {
    if (x > a && x < b) {
      if (x <= cuts.back()) throw DomainError("integrate_adaptive_vector: breakpoints must be sorted");
      cuts.push_back(x);
    }
  }
  cuts.push_back(b);

  const auto& rule = gauss_legendre_rule(kPanelOrder);
  const double length = b - a;
  const int initial = std::max(8, static_cast<int>(std::ceil(std::abs(opts.frequency) / 3.0)));
  const double floor_scale = roundoff_scale(opts, a, b);
  const std::size_t n = static_cast<std::size_t>(count);

  std::vector<cplx> buffer(n);
  // value[0..n) then |value| sums[n..2n) (stored as real parts).
  auto vpanel = [&](double lo, double hi) {
    std::vector<cplx> out(2 * n, cplx(0.0));
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (lo + hi);
    for (int i = 0; i < rule.order; ++i) {
      f(mid + half * rule.nodes[i], buffer.data());
      const double w = rule.weights[i] * half;
      for (std::size_t k = 0; k < n; ++k) {
        out[k] += w * buffer[k];
        out[n + k] += w * (std::abs(buffer[k].real()) + std::abs(buffer[k].imag()));
      }
    }
    return out;
  };

  struct Pending {
    double lo, hi;
    std::vector<cplx> whole;
  };
  std::vector<KahanSum> total(n);
  int panels = 0;
  std::vector<Pending> stack;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double lo = cuts[s];
    const double hi = cuts[s + 1];
    const int seeds = std::max(1, static_cast<int>(std::ceil(initial * (hi - lo) / length)));
    panels += seeds;
    for (int p = 0; p < seeds; ++p) {
      const double x0 = lo + (hi - lo) * p / seeds;
      const double x1 = (p + 1 == seeds) ? hi : lo + (hi - lo) * (p + 1) / seeds;
      stack.push_back({x0, x1, vpanel(x0, x1)});
      while (!stack.empty()) {
        Pending cur = std::move(stack.back());
        stack.pop_back();
        const double mid = 0.5 * (cur.lo + cur.hi);
        std::vector<cplx> left = vpanel(cur.lo, mid);
        std::vector<cplx> right = vpanel(mid, cur.hi);
        const double local_tol = opts.tol * (cur.hi - cur.lo) / length;
        std::size_t failing = n;
        for (std::size_t k = 0; k < n && failing == n; ++k) {
          const double err = std::abs(left[k] + right[k] - cur.whole[k]);
          const double floor = floor_scale * (left[n + k].real() + right[n + k].real());
          if (err > std::max(local_tol, floor)) failing = k;
        }
        if (failing == n) {
          for (std::size_t k = 0; k < n; ++k) total[k].add(left[k] + right[k]);
          continue;
        }
        panels += 1;
        if (panels > opts.max_panels) {
          throw NonConvergence("integrate_adaptive_vector: component " + std::to_string(failing) +
                               " did not converge within " + std::to_string(opts.max_panels) + " panels");
        }
        stack.push_back({cur.lo, mid, std::move(left)});
        stack.push_back({mid, cur.hi, std::move(right)});
      }
    }
  }
  std::vector<cplx> result(n);
  for (std::size_t k = 0; k < n; ++k) result[k] = total[k].value();
  return result;
}

cplx integrate_adaptive(const ComplexFn& f, double a, double b, double tol,
                        std::span<const double> breakpoints) {
  AdaptiveOptions opts;
  opts.tol = tol;
  opts.breakpoints.assign(breakpoints.begin(), breakpoints.end());
  return integrate_adaptive(f, a, b, opts);
}

cplx inner_product_oracle(const ComplexFn& f, const ComplexFn& g, std::span<const double> breakpoints,
                          double frequency) {
  AdaptiveOptions opts;
  opts.tol = 1e-13;
  opts.breakpoints.assign(breakpoints.begin(), breakpoints.end());
  opts.frequency = frequency;
  return integrate_adaptive([&](double x) { return f(x) * std::conj(g(x)); }, -1.0, 1.0, opts);
}

}  // namespace gensamp
