#include "presets.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "csv.hpp"
#include "gensamp/analysis.hpp"
#include "gensamp/reconstruct.hpp"
#include "svg.hpp"

namespace gensamp::cli {

namespace fs = std::filesystem;

int m_from_rule(double rule) { return std::max(1, static_cast<int>(std::ceil(rule - 1e-9))); }

namespace {

class Context {
 public:
  Context(fs::path dir, const PresetSettings& s) : dir_(std::move(dir)), s_(s) {}

  double tol() const { return s_.tol.value_or(1e-14); }
  const PresetSettings& settings() const { return s_; }

  void save(const std::string& file, const CsvTable& table) {
    table.save(dir_ / file);
    written_.push_back(dir_ / file);
  }
  void plot(const std::string& file, const Chart& chart) {
    if (!s_.plot) return;
    save_svg(dir_ / file, chart);
    written_.push_back(dir_ / file);
  }
  void note(const std::string& text) {
    if (s_.log) *s_.log << text << '\n';
  }
  std::vector<fs::path> written() const { return written_; }

 private:
  fs::path dir_;
  const PresetSettings& s_;
  std::vector<fs::path> written_;
};

double lg(double v) { return std::log10(v); }

// Fourier kinds need at least one sample.
// Fourier budgets hold 2 floor(m/2) - 1 samples, so an odd m buys nothing over m - 1: round up to even.
int fourier_m(double rule) {
  const int m = std::max(2, m_from_rule(rule));
  return m + (m % 2);
}

struct Outcome {
  Reconstruction r;
  ErrorMetrics e;
};

Outcome run_1d(const TestFunction& fn, const SamplingScheme& scheme, const ReconstructionSpace& space,
               double tol) {
  const SampleVector samples = sample_function(fn.f, fn.breakpoints, scheme);
  Reconstruction r = reconstruct(samples, space, tol);
  ErrorMetrics e = error_metrics(fn.f, fn.breakpoints, r);
  return {std::move(r), e};
}

ReconstructionSpace two_piece(int m) {
  const int n = static_cast<int>(std::ceil(std::sqrt(15.0 * m / 16.0) - 1e-9));
  return ReconstructionSpace::piecewise({-0.5}, {n, n});
}

ReconstructionSpace three_piece(int m) {
  const double n = std::sqrt(8.0 * m);
  const int outer = std::max(1, m_from_rule(n / 4.0));
  const int inner = std::max(1, m_from_rule(n / 2.0));
  return ReconstructionSpace::piecewise({-0.5, 0.5}, {outer, inner, outer});
}

// Error against n or m for a smooth target with a single Legendre expansion.
void smooth_sweep(Context& ctx, const std::string& fn_id, int n_max) {
  const auto& fn = test_function(fn_id);
  CsvTable t({"n", "m", "linf", "l2", "C_nm", "kappa_A"});
  t.comment(fn.description + "; Legendre reconstruction from Fourier samples; m = ceil(0.2 n^2) rounded up to even");
  Series linf{"Linf", {}, {}}, l2{"L2", {}, {}};
  for (int n = 1; n <= n_max; ++n) {
    const int m = fourier_m(0.2 * n * n);
    const auto o = run_1d(fn, SamplingScheme::fourier(m), ReconstructionSpace::gegenbauer(0.5, n), ctx.tol());
    t.add_row({num(n), num(m), num(o.e.linf_grid), num(o.e.l2), num(o.r.diagnostics.C_nm),
               num(o.r.diagnostics.kappa_A)});
    linf.x.push_back(n);
    linf.y.push_back(lg(o.e.linf_grid));
    l2.x.push_back(n);
    l2.y.push_back(lg(o.e.l2));
  }
  ctx.save("errors.csv", t);
  ctx.plot("errors.svg", {fn.description, "n", "log10 error", {linf, l2}});
}

void fig_convergence(Context& ctx) { smooth_sweep(ctx, "exp-cos4", 40); }

void fig_runge(Context& ctx) { smooth_sweep(ctx, "runge", 80); }

void fig_quasiopt(Context& ctx) {
  const auto& fn = test_function("exp-cos4");
  CsvTable t({"n", "m", "linf_fnm", "l2_fnm", "linf_Qn", "l2_Qn", "K_nm"});
  t.comment(fn.description + "; f_nm against the orthogonal projection Q_n f; m = ceil(0.2 n^2) rounded up to even");
  Series a{"f_nm (Linf)", {}, {}}, b{"Q_n f (Linf)", {}, {}}, c{"f_nm (L2)", {}, {}}, d{"Q_n f (L2)", {}, {}};
  for (int n = 1; n <= 40; ++n) {
    const int m = fourier_m(0.2 * n * n);
    const auto space = ReconstructionSpace::gegenbauer(0.5, n);
    const auto o = run_1d(fn, SamplingScheme::fourier(m), space, ctx.tol());
    const auto q = error_metrics(fn.f, fn.breakpoints, best_approximation(fn.f, fn.breakpoints, space));
    t.add_row({num(n), num(m), num(o.e.linf_grid), num(o.e.l2), num(q.linf_grid), num(q.l2),
               num(o.r.diagnostics.K_nm)});
    for (auto* s : {&a, &b, &c, &d}) s->x.push_back(n);
    a.y.push_back(lg(o.e.linf_grid));
    b.y.push_back(lg(q.linf_grid));
    c.y.push_back(lg(o.e.l2));
    d.y.push_back(lg(q.l2));
  }
  ctx.save("quasiopt.csv", t);
  ctx.plot("quasiopt.svg", {fn.description, "n", "log10 error", {a, b, c, d}});
}

struct ChebRow {
  std::string row, name;
  double lambda;
};
const ChebRow kChebRows[] = {{"a", "legendre", 0.5}, {"b", "chebyshev-t", 0.0}, {"c", "chebyshev-u", 1.0}};

void cheb_table(Context& ctx, bool errors) {
  const auto& fn = test_function("exp-cos4");
  std::vector<std::string> header{"row", "basis"};
  for (int n = 5; n <= 40; n += 5) header.push_back("n" + std::to_string(n));
  CsvTable t(header);
  t.comment(fn.description + (errors ? "; grid Linf error" : "; condition number of A") +
            "; m = ceil(0.2 n^2) rounded up to even");
  Chart chart{errors ? "Linf error" : "kappa(A)", "n", errors ? "log10 Linf error" : "kappa(A)", {}};
  for (const auto& cr : kChebRows) {
    std::vector<std::string> cells{cr.row, cr.name};
    Series s{cr.name, {}, {}};
    for (int n = 5; n <= 40; n += 5) {
      const int m = fourier_m(0.2 * n * n);
      const auto space = ReconstructionSpace::gegenbauer(cr.lambda, n);
      double v;
      if (errors) {
        v = run_1d(fn, SamplingScheme::fourier(m), space, ctx.tol()).e.linf_grid;
      } else {
        v = compute_diagnostics(assemble(SamplingScheme::fourier(m), space)).kappa_A;
      }
      cells.push_back(num(v));
      s.x.push_back(n);
      s.y.push_back(errors ? lg(v) : v);
    }
    t.add_row(cells);
    chart.series.push_back(s);
  }
  ctx.save(errors ? "errors.csv" : "condition.csv", t);
  ctx.plot(errors ? "errors.svg" : "condition.svg", chart);
}

void tab_cheb_errors(Context& ctx) { cheb_table(ctx, true); }
void tab_cheb_cond(Context& ctx) { cheb_table(ctx, false); }

// Pointwise log error profiles on the evaluation grid for several m.
void pointwise_profiles(Context& ctx, const TestFunction& fn, const std::vector<int>& ms,
                        const std::function<SamplingScheme(int)>& scheme,
                        const std::function<ReconstructionSpace(int)>& space, const std::string& title) {
  const auto xs = uniform_grid(2049);
  std::vector<std::string> header{"x"};
  std::vector<std::vector<double>> errs;
  Chart chart{title, "x", "log10 |f - f_nm|", {}};
  for (int m : ms) {
    header.push_back("err_m" + std::to_string(m));
    const SampleVector samples = sample_function(fn.f, fn.breakpoints, scheme(m));
    const Reconstruction r = reconstruct(samples, space(m), ctx.tol());
    const auto vals = evaluate(r, xs);
    std::vector<double> e(xs.size());
    Series s{"m=" + std::to_string(m), {}, {}};
    for (std::size_t i = 0; i < xs.size(); ++i) {
      e[i] = std::abs(fn.f(xs[i]) - vals[i]);
      s.x.push_back(xs[i]);
      s.y.push_back(lg(e[i]));
    }
    errs.push_back(std::move(e));
    chart.series.push_back(std::move(s));
  }
  CsvTable t(header);
  t.comment(title);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<std::string> cells{num(xs[i], 17)};
    for (const auto& e : errs) cells.push_back(num(e[i]));
    t.add_row(cells);
  }
  ctx.save("pointwise.csv", t);
  ctx.plot("pointwise.svg", chart);
}

void fig_pcwse(Context& ctx) {
  const auto& fn = test_function("tanner");
  {
    CsvTable t({"n", "m", "linf", "l2"});
    t.comment(fn.description + "; single Legendre expansion on [-1,1]; m = ceil(0.2 n^2) rounded up to even");
    Series a{"Linf", {}, {}}, b{"L2", {}, {}};
    for (int n = 1; n <= 80; ++n) {
      const int m = fourier_m(0.2 * n * n);
      const auto o = run_1d(fn, SamplingScheme::fourier(m), ReconstructionSpace::gegenbauer(0.5, n), ctx.tol());
      t.add_row({num(n), num(m), num(o.e.linf_grid), num(o.e.l2)});
      a.x.push_back(m);
      a.y.push_back(lg(o.e.linf_grid));
      b.x.push_back(m);
      b.y.push_back(lg(o.e.l2));
    }
    ctx.save("global.csv", t);
    ctx.plot("global.svg", {"single interval", "m", "log10 error", {a, b}});
  }
  {
    CsvTable t({"m", "n0", "n1", "linf", "l2"});
    t.comment(fn.description + "; piecewise Legendre on {-1/2}; n0 = n1 = ceil(sqrt(15 m / 16))");
    Series a{"Linf", {}, {}}, b{"L2", {}, {}};
    for (int m = 5; m <= 500; m += 5) {
      const auto space = two_piece(m);
      const auto o = run_1d(fn, SamplingScheme::fourier(m), space, ctx.tol());
      t.add_row({num(m), num(space.degrees()[0]), num(space.degrees()[1]), num(o.e.linf_grid), num(o.e.l2)});
      a.x.push_back(m);
      a.y.push_back(lg(o.e.linf_grid));
      b.x.push_back(m);
      b.y.push_back(lg(o.e.l2));
    }
    ctx.save("sweep.csv", t);
    ctx.plot("sweep.svg", {"piecewise", "m", "log10 error", {a, b}});
  }
  pointwise_profiles(
      ctx, fn, {20, 40, 80, 160}, [](int m) { return SamplingScheme::fourier(m); }, two_piece,
      fn.description + "; piecewise pointwise error");
}

void tab_pcwse_cond(Context& ctx) {
  CsvTable t({"m", "n0", "n1", "C_nm", "kappa_A"});
  t.comment("piecewise Legendre on {-1/2} from Fourier samples; n0 = n1 = ceil(sqrt(15 m / 16))");
  Series a{"C_nm", {}, {}}, b{"kappa(A)", {}, {}};
  for (int m = 10; m <= 1280; m *= 2) {
    const auto space = two_piece(m);
    const auto d = compute_diagnostics(assemble(SamplingScheme::fourier(m), space));
    t.add_row({num(m), num(space.degrees()[0]), num(space.degrees()[1]), num(d.C_nm), num(d.kappa_A)});
    a.x.push_back(std::log2(m));
    a.y.push_back(d.C_nm);
    b.x.push_back(std::log2(m));
    b.y.push_back(d.kappa_A);
  }
  ctx.save("condition.csv", t);
  ctx.plot("condition.svg", {"piecewise diagnostics", "log2 m", "value", {a, b}});
}

void tab_freud_compare(Context& ctx) {
  const auto& fn = test_function("tanner");
  CsvTable t({"m", "n0", "n1", "linf"});
  t.comment(fn.description + "; generalized reconstruction column only; n0 = n1 = ceil(sqrt(15 m / 16))");
  Series a{"Linf", {}, {}};
  for (int m = 64; m <= 4096; m *= 2) {
    const auto space = two_piece(m);
    const auto o = run_1d(fn, SamplingScheme::fourier(m), space, ctx.tol());
    t.add_row({num(m), num(space.degrees()[0]), num(space.degrees()[1]), num(o.e.linf_grid)});
    a.x.push_back(std::log2(m));
    a.y.push_back(lg(o.e.linf_grid));
    ctx.note("  m=" + std::to_string(m) + " linf=" + num(o.e.linf_grid, 3));
  }
  ctx.save("compare.csv", t);
  ctx.plot("compare.svg", {"piecewise reconstruction", "log2 m", "log10 Linf error", {a}});
}

void fig_2d(Context& ctx) {
  CsvTable t({"fn", "n", "m", "linf", "l2"});
  t.comment("tensor Legendre from tensor Fourier samples; n1 = n2 = n; m1 = m2 = ceil(0.5 n^2) rounded up to even");
  Chart chart{"tensor reconstruction", "n", "log10 error", {}};
  for (const std::string id : {"exp-x2y", "sin3xy"}) {
    const auto& fn = test_function(id);
    Series a{id + " Linf", {}, {}}, b{id + " L2", {}, {}};
    for (int n = 1; n <= 25; ++n) {
      const int m = fourier_m(0.5 * n * n);
      const auto scheme = SamplingScheme::fourier(m);
      const auto one = ReconstructionSpace::gegenbauer(0.5, n);
      const auto space = ReconstructionSpace::tensor({one, one});
      const auto samples = sample_function_2d(fn.f2, fn.breakpoints, {scheme, scheme});
      ReconstructOptions opts;
      opts.tol = ctx.tol();
      const auto r = reconstruct(samples, space, opts);
      const auto e = error_metrics_2d(fn.f2, r);
      t.add_row({id, num(n), num(m), num(e.linf_grid), num(e.l2)});
      a.x.push_back(n);
      a.y.push_back(lg(e.linf_grid));
      b.x.push_back(n);
      b.y.push_back(lg(e.l2));
    }
    chart.series.push_back(a);
    chart.series.push_back(b);
  }
  ctx.save("errors.csv", t);
  ctx.plot("errors.svg", chart);
}

std::vector<double> thresholds(const Context& ctx, std::vector<double> defaults) {
  if (ctx.settings().theta) return {*ctx.settings().theta};
  return defaults;
}

void fig_theta(Context& ctx) {
  CsvTable t({"theta", "n", "Theta", "global_bound", "asymptotic_bound", "Theta_over_n2", "global_over_n2",
              "asymptotic_over_n2"});
  t.comment("Theta(n; theta) for Legendre reconstruction from Fourier samples");
  Chart chart{"stable sampling rate", "n", "Theta / n^2", {}};
  for (double theta : thresholds(ctx, {0.5, 0.25})) {
    Series a{"theta=" + num(theta, 3), {}, {}}, g{"global", {}, {}}, as{"asymptotic", {}, {}};
    for (int n = 2; n <= 80; ++n) {
      const auto res = compute_Theta(ReconstructionSpace::gegenbauer(0.5, n), theta,
                                     [](int m) { return SamplingScheme::fourier(m); });
      const double n2 = static_cast<double>(n) * n;
      const int global = bound_theta_global(n, theta);
      const double asym = bound_theta_asymptotic(n, theta);
      t.add_row({num(theta), num(n), num(res.m), num(global), num(asym), num(res.m / n2), num(global / n2),
                 num(asym / n2)});
      a.x.push_back(n);
      a.y.push_back(res.m / n2);
      g.x.push_back(n);
      g.y.push_back(global / n2);
      as.x.push_back(n);
      as.y.push_back(asym / n2);
    }
    chart.series.push_back(a);
    chart.series.push_back(g);
    chart.series.push_back(as);
  }
  ctx.save("theta.csv", t);
  ctx.plot("theta.svg", chart);
}

void fig_theta_mf(Context& ctx) {
  CsvTable t({"theta", "n", "Theta", "global_bound", "asymptotic_bound", "Theta_over_n2", "global_over_n2",
              "asymptotic_over_n2"});
  t.comment("Theta(n; theta) for Legendre reconstruction from modified Fourier samples");
  Chart chart{"stable sampling rate, modified Fourier", "n", "Theta / n^2", {}};
  for (double theta : thresholds(ctx, {0.5, 0.75})) {
    Series a{"theta=" + num(theta, 3), {}, {}}, g{"global", {}, {}}, as{"asymptotic", {}, {}};
    for (int n = 1; n <= 80; ++n) {
      const auto res = compute_Theta(ReconstructionSpace::gegenbauer(0.5, n), theta,
                                     [](int m) { return SamplingScheme::modified_fourier(m); });
      const double n2 = static_cast<double>(n) * n;
      const auto b = bound_theta_modified_fourier(n, theta);
      t.add_row({num(theta), num(n), num(res.m), num(b.global), num(b.asymptotic), num(res.m / n2),
                 num(b.global / n2), num(b.asymptotic / n2)});
      a.x.push_back(n);
      a.y.push_back(res.m / n2);
      g.x.push_back(n);
      g.y.push_back(b.global / n2);
      as.x.push_back(n);
      as.y.push_back(b.asymptotic / n2);
    }
    chart.series.push_back(a);
    chart.series.push_back(g);
    chart.series.push_back(as);
  }
  ctx.save("theta.csv", t);
  ctx.plot("theta.svg", chart);
}

// Largest n with C_{n,m} >= threshold; C is non-increasing in n.
int largest_stable_n(const SamplingScheme& scheme, double threshold) {
  int n = 1;
  while (n < scheme.count() &&
         compute_Cnm(scheme, ReconstructionSpace::gegenbauer(0.5, n + 1)) >= threshold) {
    ++n;
  }
  return n;
}

void fig_mf_vs_f(Context& ctx) {
  const auto& fn = test_function("exp-cos8");
  CsvTable t({"scheme", "m", "n", "C_nm", "linf", "l2"});
  t.comment(fn.description + "; n is the largest value with C_nm >= 1/2");
  Chart chart{fn.description, "m", "log10 Linf error", {}};
  for (const std::string tag : {"mfourier", "fourier"}) {
    Series s{tag, {}, {}};
    for (int m = 5; m <= 200; m += 5) {
      const auto scheme = parse_scheme(tag, m);
      const int n = largest_stable_n(scheme, 0.5);
      const auto o = run_1d(fn, scheme, ReconstructionSpace::gegenbauer(0.5, n), ctx.tol());
      t.add_row({tag, num(m), num(n), num(o.r.diagnostics.C_nm), num(o.e.linf_grid), num(o.e.l2)});
      s.x.push_back(m);
      s.y.push_back(lg(o.e.linf_grid));
    }
    chart.series.push_back(s);
  }
  ctx.save("errors.csv", t);
  ctx.plot("errors.svg", chart);
}

void fig_legsamp(Context& ctx) {
  const auto& fn = test_function("sincos-window");
  CsvTable t({"m", "n0", "n1", "n2", "linf", "l2"});
  t.comment(fn.description + "; piecewise Legendre on {-1/2, 1/2} from Legendre coefficients; n = sqrt(8 m), "
                             "n0 = n2 = ceil(n/4), n1 = ceil(n/2)");
  Series a{"Linf", {}, {}}, b{"L2", {}, {}};
  for (int m = 8; m <= 200; m += 4) {
    const auto space = three_piece(m);
    const auto o = run_1d(fn, SamplingScheme::legendre_coeff(m), space, ctx.tol());
    const auto& d = space.degrees();
    t.add_row({num(m), num(d[0]), num(d[1]), num(d[2]), num(o.e.linf_grid), num(o.e.l2)});
    a.x.push_back(m);
    a.y.push_back(lg(o.e.linf_grid));
    b.x.push_back(m);
    b.y.push_back(lg(o.e.l2));
  }
  ctx.save("sweep.csv", t);
  ctx.plot("sweep.svg", {fn.description, "m", "log10 error", {a, b}});
  pointwise_profiles(
      ctx, fn, {20, 40, 80, 160}, [](int m) { return SamplingScheme::legendre_coeff(m); }, three_piece,
      fn.description + "; pointwise error");
}

void tab_legsamp(Context& ctx) {
  CsvTable t({"n", "m", "n0", "n1", "n2", "C_nm", "kappa_A"});
  t.comment("piecewise Legendre on {-1/2, 1/2} from Legendre coefficients; m = n^2/8, n0 = n2 = n/4, n1 = n/2");
  Series a{"C_nm", {}, {}}, b{"kappa", {}, {}};
  for (int n = 8; n <= 80; n += 8) {
    const int m = n * n / 8;
    const auto space = ReconstructionSpace::piecewise({-0.5, 0.5}, {n / 4, n / 2, n / 4});
    const auto d = compute_diagnostics(assemble(SamplingScheme::legendre_coeff(m), space));
    t.add_row({num(n), num(m), num(n / 4), num(n / 2), num(n / 4), num(d.C_nm), num(d.kappa_A)});
    a.x.push_back(n);
    a.y.push_back(d.C_nm);
    b.x.push_back(n);
    b.y.push_back(d.kappa_A);
  }
  ctx.save("condition.csv", t);
  ctx.plot("condition.svg", {"Legendre-coefficient sampling", "n", "value", {a, b}});
}

struct Entry {
  PresetInfo info;
  void (*run)(Context&);
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list{
      {{"fig-convergence", "exp-cos4 errors against n, Legendre, m = 0.2 n^2"}, fig_convergence},
      {{"fig-quasiopt", "exp-cos4: f_nm against the best approximation Q_n f"}, fig_quasiopt},
      {{"fig-runge", "1/(1+x^2) errors against n, m = 0.2 n^2"}, fig_runge},
      {{"tab-cheb-errors", "Linf errors for Legendre, Chebyshev-T and -U bases"}, tab_cheb_errors},
      {{"tab-cheb-cond", "kappa(A) for Legendre, Chebyshev-T and -U bases"}, tab_cheb_cond},
      {{"fig-pcwse", "tanner: single interval vs piecewise sweep and pointwise errors"}, fig_pcwse},
      {{"tab-pcwse-cond", "piecewise C_nm and kappa(A) against m"}, tab_pcwse_cond},
      {{"tab-freud-compare", "tanner piecewise errors for m = 64..4096"}, tab_freud_compare},
      {{"fig-2d", "tensor reconstruction of exp(x^2 y) and sin(3xy)"}, fig_2d},
      {{"fig-theta", "Theta(n; theta) with global and asymptotic bounds, Fourier"}, fig_theta},
      {{"fig-theta-mf", "Theta(n; theta) with bounds, modified Fourier"}, fig_theta_mf},
      {{"fig-mf-vs-f", "exp-cos8 from modified Fourier vs Fourier samples"}, fig_mf_vs_f},
      {{"fig-legsamp", "windowed sin(cos x) from Legendre coefficients"}, fig_legsamp},
      {{"tab-legsamp", "C_nm and kappa for Legendre-coefficient sampling, m = n^2/8"}, tab_legsamp},
  };
  return list;
}

}  // namespace

const std::vector<PresetInfo>& preset_catalog() {
  static const std::vector<PresetInfo> list = [] {
    std::vector<PresetInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return list;
}

std::vector<fs::path> run_preset(const std::string& name, const PresetSettings& settings) {
  const auto& list = entries();
  const auto it = std::find_if(list.begin(), list.end(), [&](const Entry& e) { return e.info.name == name; });
  if (it == list.end()) {
    std::string known;
    for (const auto& e : list) known += (known.empty() ? "" : ", ") + e.info.name;
    throw UsageError("unknown preset '" + name + "' (known: " + known + ")");
  }
  const fs::path dir = settings.out_root / name;
  std::error_code ec;
  if (fs::exists(dir, ec) && !fs::is_empty(dir, ec) && !settings.force) {
    throw UsageError(dir.string() + " already exists; pass --force to overwrite");
  }
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
  Context ctx(dir, settings);
  ctx.note("preset " + name + " -> " + dir.string());
  it->run(ctx);
  return ctx.written();
}

}  // namespace gensamp::cli
