#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csv.hpp"
#include "gensamp/analysis.hpp"
#include "gensamp/reconstruct.hpp"
#include "presets.hpp"
#include "svg.hpp"

namespace gensamp::cli {

namespace fs = std::filesystem;

namespace {

struct ReconstructArgs {
  std::string fn;
  std::string input;
  std::string scheme = "fourier";
  int m = 0;
  std::string space;
  double tol = 1e-12;
  int maxit = 0;
  std::string out = "out/reconstruct";
  bool force = false;
  bool plot = false;
};

struct AnalyzeArgs {
  std::string space;
  std::string scheme = "fourier";
  double theta = 0.5;
  std::string n_range;
  int m = 0;
  std::string out;
  bool force = false;
};

struct PresetArgs {
  std::string name;
  std::string out = "out";
  bool force = false;
  bool plot = false;
  std::optional<double> theta;
  std::optional<double> tol;
};

struct SampleArgs {
  std::string fn;
  std::string scheme = "fourier";
  int m = 0;
  std::string out;
  bool force = false;
};

void claim_file(const fs::path& path, bool force) {
  if (fs::exists(path) && !force) throw UsageError(path.string() + " already exists; pass --force to overwrite");
}

fs::path prepare_dir(const std::string& dir, const std::vector<std::string>& files, bool force) {
  const fs::path root(dir);
  for (const auto& f : files) claim_file(root / f, force);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw Error("cannot create " + root.string() + ": " + ec.message());
  return root;
}

std::string diagnostics_line(const Reconstruction& r, std::optional<double> linf) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "C_nm=%.6g kappa_A=%.6g K_nm=%.6g iters=%d linf=%s", r.diagnostics.C_nm,
                r.diagnostics.kappa_A, r.diagnostics.K_nm, r.solve.iterations,
                linf ? num(*linf, 4).c_str() : "n/a");
  return buf;
}

CsvTable coefficient_table(const Reconstruction& r) {
  const auto& space = r.space;
  if (space.is_tensor()) {
    CsvTable t({"flat_index", "i", "j", "re"});
    for (int k = 0; k < space.dim(); ++k) {
      const auto idx = space.unflatten(k);
      t.add_row({num(k), num(idx[0]), num(idx[1]), num(r.coefficients[k].real(), 17)});
    }
    return t;
  }
  CsvTable t({"flat_index", "interval", "degree", "re"});
  for (int k = 0; k < space.dim(); ++k) {
    const auto loc = space.locate(k);
    t.add_row({num(k), num(loc.interval), num(loc.degree), num(r.coefficients[k].real(), 17)});
  }
  return t;
}

int reconstruct_cmd(const ReconstructArgs& a, std::ostream& out, std::ostream& err) {
  if (a.fn.empty() == a.input.empty()) throw UsageError("reconstruct: give exactly one of --fn or --input");
  const ReconstructionSpace space = parse_space(a.space);
  ReconstructOptions opts;
  opts.tol = a.tol;
  if (a.maxit < 0) throw UsageError("reconstruct: --maxit must be >= 0");
  opts.maxit = a.maxit;

  const TestFunction* fn = a.fn.empty() ? nullptr : &test_function(a.fn);
  if (fn && a.m <= 0) throw UsageError("reconstruct: --fn needs --m > 0");
  if (fn && (fn->dims == 2) != space.is_tensor()) {
    throw UsageError("reconstruct: " + fn->id + " is " + std::to_string(fn->dims) +
                     "-D but the space is " + (space.is_tensor() ? "a tensor space" : "one-dimensional"));
  }

  const std::vector<std::string> files{"reconstruction.csv", "evaluation.csv", "evaluation.svg"};
  std::optional<Reconstruction> result;
  std::optional<double> linf;
  CsvTable eval({"x"});
  if (fn && fn->dims == 2) {
    const auto scheme = parse_scheme(a.scheme, a.m);
    const auto samples = sample_function_2d(fn->f2, fn->breakpoints, {scheme, scheme});
    result = reconstruct(samples, space, opts);
    const auto e = error_metrics_2d(fn->f2, *result);
    linf = e.linf_grid;
    const auto g = uniform_grid(257);
    const Eigen::MatrixXd vals = evaluate_grid(*result, g, g);
    eval = CsvTable({"x", "y", "f", "f_nm", "error"});
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        const double fv = fn->f2(g[i], g[j]);
        eval.add_row({num(g[i], 17), num(g[j], 17), num(fv, 17), num(vals(i, j), 17),
                      num(std::abs(fv - vals(i, j)))});
      }
    }
  } else {
    if (space.is_tensor()) throw UsageError("reconstruct: coefficient files hold 1-D samples only");
    const SampleVector samples =
        fn ? sample_function(fn->f, fn->breakpoints, parse_scheme(a.scheme, a.m)) : read_coefficients(a.input);
    result = reconstruct(samples, space, opts);
    const auto xs = uniform_grid(2049);
    const auto vals = evaluate(*result, xs);
    if (fn) {
      linf = error_metrics(fn->f, fn->breakpoints, *result).linf_grid;
      eval = CsvTable({"x", "f", "f_nm", "error"});
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double fv = fn->f(xs[i]);
        eval.add_row({num(xs[i], 17), num(fv, 17), num(vals[i], 17), num(std::abs(fv - vals[i]))});
      }
    } else {
      eval = CsvTable({"x", "f_nm"});
      for (std::size_t i = 0; i < xs.size(); ++i) eval.add_row({num(xs[i], 17), num(vals[i], 17)});
    }
  }

  const Reconstruction& r = *result;

  const fs::path dir = prepare_dir(a.out, files, a.force);
  coefficient_table(r).save(dir / "reconstruction.csv");
  eval.save(dir / "evaluation.csv");
  if (a.plot && !space.is_tensor()) {
    Series s{fn ? "log10 |f - f_nm|" : "f_nm", eval.column("x"), {}};
    for (double v : eval.column(fn ? "error" : "f_nm")) s.y.push_back(fn ? std::log10(v) : v);
    save_svg(dir / "evaluation.svg", {space.describe(), "x", fn ? "log10 error" : "value", {s}});
  }

  out << diagnostics_line(r, linf) << '\n';
  if (r.max_imag > 1e-9) err << "warning: coefficients carry imaginary parts up to " << num(r.max_imag, 3) << '\n';
  if (!r.solve.converged) {
    err << "error: CG did not reach the tolerance (relative residual " << num(r.solve.relative_residual, 3)
        << ")\n";
    return 3;
  }
  return 0;
}

struct NRange {
  int lo, hi, step;
};

NRange parse_n_range(const std::string& text, int fallback) {
  if (text.empty()) return {fallback, fallback, 1};
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--n-range: expected lo:hi[:step], got '" + text + "'");
    }
  }
  if (parts.size() < 2 || parts.size() > 3) throw UsageError("--n-range: expected lo:hi[:step], got '" + text + "'");
  NRange r{parts[0], parts[1], parts.size() == 3 ? parts[2] : 1};
  if (r.lo < 1 || r.hi < r.lo || r.step < 1) throw UsageError("--n-range: need 1 <= lo <= hi and step >= 1");
  return r;
}

ReconstructionSpace with_n(const ReconstructionSpace& s, int n) {
  switch (s.kind()) {
    case SpaceKind::Gegenbauer:
      return ReconstructionSpace::gegenbauer(s.lambda().lambda(), n);
    case SpaceKind::PiecewiseGegenbauer:
      return ReconstructionSpace::piecewise(s.breakpoints(), std::vector<int>(s.degrees().size(), n),
                                            s.lambda().lambda());
    case SpaceKind::TensorProduct:
      break;
  }
  throw UsageError("analyze: tensor spaces are analyzed through their factors");
}

std::vector<double> half_lengths(const ReconstructionSpace& s) {
  std::vector<double> out;
  for (const auto& iv : s.intervals()) out.push_back(iv.c());
  return out;
}

int analyze_cmd(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  if (!(a.theta > 0.0 && a.theta < 1.0)) throw UsageError("analyze: --theta must lie in (0, 1)");
  const ReconstructionSpace base = parse_space(a.space);
  if (base.is_tensor()) throw UsageError("analyze: tensor spaces are analyzed through their factors");
  const NRange range = parse_n_range(a.n_range, base.degrees().front());
  const SamplingScheme probe = parse_scheme(a.scheme, 2);
  const bool piecewise = base.kind() == SpaceKind::PiecewiseGegenbauer;

  CsvTable t({"n", "m", "C_nm", "C_bound", "bound_vacuous", "Theta", "Theta_over_n2", "Theta_global_bound",
              "Theta_asymptotic_bound", "status"});
  t.comment("space " + base.describe() + "; scheme " + a.scheme + "; theta " + num(a.theta) +
            (a.m > 0 ? "; C at m = " + std::to_string(a.m) : "; C at m = n^2"));
  bool budget_hit = false;
  for (int n = range.lo; n <= range.hi; n += range.step) {
    const ReconstructionSpace space = with_n(base, n);
    const int m = a.m > 0 ? a.m : n * n;
    const SamplingScheme scheme = parse_scheme(a.scheme, m);
    const double C = compute_Cnm(scheme, space);

    double C_bound = std::nan("");
    double global = std::nan("");
    double asym = std::nan("");
    switch (probe.kind()) {
      case SchemeKind::Fourier:
        if (piecewise) {
          C_bound = bound_Cnm_piecewise(space.degrees(), half_lengths(space), m);
          global = bound_theta_piecewise(space.degrees(), half_lengths(space), a.theta);
        } else {
          C_bound = bound_Cnm_fourier(n, m);
          global = bound_theta_global(n, a.theta);
          asym = bound_theta_asymptotic(n, a.theta);
        }
        break;
      case SchemeKind::OversampledFourier:
        if (!piecewise) C_bound = bound_oversampled(n, m, probe.oversample_c());
        break;
      case SchemeKind::ModifiedFourier:
        if (!piecewise) {
          const auto b = bound_theta_modified_fourier(n, a.theta);
          global = b.global;
          asym = b.asymptotic;
        }
        break;
      case SchemeKind::LegendreCoeff:
        break;
    }
    const std::string vacuous = std::isnan(C_bound) ? "n/a" : (is_vacuous(C_bound) ? "yes" : "no");

    std::string theta_cell = "nan", scaled_cell = "nan", status = "ok";
    try {
      const auto res = compute_Theta(space, a.theta, [&](int mm) { return parse_scheme(a.scheme, mm); });
      theta_cell = num(res.m);
      scaled_cell = num(res.m / (static_cast<double>(n) * n));
    } catch (const BudgetExceeded& e) {
      status = "budget exceeded";
      budget_hit = true;
      err << "n=" << n << ": " << e.what() << '\n';
    }
    t.add_row({num(n), num(m), num(C), num(C_bound), vacuous, theta_cell, scaled_cell, num(global), num(asym),
               status});
  }

  if (a.out.empty()) {
    t.write(out);
  } else {
    const fs::path dir = prepare_dir(a.out, {"analyze.csv"}, a.force);
    t.save(dir / "analyze.csv");
    out << "wrote " << (dir / "analyze.csv").string() << '\n';
  }
  return budget_hit ? 3 : 0;
}

int preset_cmd(const PresetArgs& a, std::ostream& out, std::ostream& err) {
  PresetSettings s;
  s.out_root = a.out;
  s.force = a.force;
  s.plot = a.plot;
  s.theta = a.theta;
  s.tol = a.tol;
  s.log = &err;
  for (const auto& p : run_preset(a.name, s)) out << "wrote " << p.string() << '\n';
  return 0;
}

int sample_cmd(const SampleArgs& a, std::ostream& out) {
  const auto& fn = test_function(a.fn);
  if (fn.dims != 1) throw UsageError("sample: coefficient files hold 1-D samples only");
  if (a.m <= 0) throw UsageError("sample: --m must be positive");
  claim_file(a.out, a.force);
  const auto samples = sample_function(fn.f, fn.breakpoints, parse_scheme(a.scheme, a.m));
  const fs::path parent = fs::path(a.out).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  write_coefficients(a.out, samples);
  out << "wrote " << a.out << " (" << samples.values.size() << " samples)\n";
  return 0;
}

int list_cmd(std::ostream& out) {
  out << "functions:\n";
  for (const auto& f : test_function_registry()) out << "  " << f.id << "  " << f.description << '\n';
  out << "presets:\n";
  for (const auto& p : preset_catalog()) out << "  " << p.name << "  " << p.summary << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reconstruct functions from Fourier, modified Fourier or Legendre coefficients"};
  app.name("gensamp");
  app.require_subcommand(1);

  ReconstructArgs ra;
  auto* rec = app.add_subcommand("reconstruct", "Reconstruct from a test function or a coefficient file");
  rec->add_option("--fn", ra.fn, "Registered test function id");
  rec->add_option("--input", ra.input, "Coefficient CSV (kind,index,re,im)");
  rec->add_option("--scheme", ra.scheme, "fourier | mfourier | legcoeff | ofourier:<c>");
  rec->add_option("--m", ra.m, "Number of samples");
  rec->add_option("--space", ra.space, "Reconstruction space")->required();
  rec->add_option("--tol", ra.tol, "CG relative residual tolerance")->capture_default_str();
  rec->add_option("--maxit", ra.maxit, "CG iteration cap (0: 10 n + 200)");
  rec->add_option("--out", ra.out, "Output directory")->capture_default_str();
  rec->add_flag("--force", ra.force, "Overwrite existing files");
  rec->add_flag("--plot", ra.plot, "Also write an SVG");

  AnalyzeArgs aa;
  auto* ana = app.add_subcommand("analyze", "C_nm, Theta(n; theta) and bounds over a range of n");
  ana->add_option("--space", aa.space, "Space template; n is replaced by each value of --n-range")->required();
  ana->add_option("--scheme", aa.scheme, "Sampling scheme")->capture_default_str();
  ana->add_option("--theta", aa.theta, "Threshold for Theta")->capture_default_str();
  ana->add_option("--n-range", aa.n_range, "lo:hi[:step]");
  ana->add_option("--m", aa.m, "Sample count for the C_nm column (default n^2)");
  ana->add_option("--out", aa.out, "Output directory (default: CSV on stdout)");
  ana->add_flag("--force", aa.force, "Overwrite existing files");

  PresetArgs pa;
  auto* pre = app.add_subcommand("preset", "Run an experiment preset");
  pre->add_option("--preset", pa.name, "Preset name (see 'list')")->required();
  pre->add_option("--out", pa.out, "Output root")->capture_default_str();
  pre->add_flag("--force", pa.force, "Overwrite an existing preset directory");
  pre->add_flag("--plot", pa.plot, "Also write SVG charts");
  pre->add_option("--theta", pa.theta, "Single threshold for the Theta presets");
  pre->add_option("--tol", pa.tol, "CG tolerance (default 1e-14 for presets)");

  SampleArgs sa;
  auto* smp = app.add_subcommand("sample", "Export the samples of a test function");
  smp->add_option("--fn", sa.fn, "Registered test function id")->required();
  smp->add_option("--scheme", sa.scheme, "Sampling scheme")->capture_default_str();
  smp->add_option("--m", sa.m, "Number of samples")->required();
  smp->add_option("--out", sa.out, "Coefficient CSV path")->required();
  smp->add_flag("--force", sa.force, "Overwrite an existing file");

  auto* lst = app.add_subcommand("list", "List test functions and presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*rec) return reconstruct_cmd(ra, out, err);
    if (*ana) return analyze_cmd(aa, out, err);
    if (*pre) return preset_cmd(pa, out, err);
    if (*smp) return sample_cmd(sa, out);
    if (*lst) return list_cmd(out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const IncompatiblePair& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DegenerateParameter& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace gensamp::cli
