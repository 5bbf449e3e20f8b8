#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "csv.hpp"
#include "doctest.h"
#include "presets.hpp"

namespace fs = std::filesystem;
using gensamp::cli::run_cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "gensamp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Fresh directory under the system temp dir, removed on destruction.
struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("gensamp_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Columns of a CSV file, skipping '#' comment lines.
std::vector<std::vector<std::string>> read_rows(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

int spawn(const std::string& args) {
  const std::string cmd = std::string(GENSAMP_BIN) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("list shows functions and presets") {
  const auto r = run({"list"});
  CHECK(r.code == 0);
  for (const char* id : {"exp-cos4", "runge", "tanner", "exp-cos8", "exp-x2y", "sin3xy", "sincos-window"}) {
    CHECK(r.out.find(id) != std::string::npos);
  }
  CHECK(gensamp::cli::preset_catalog().size() == 14);
  for (const auto& p : gensamp::cli::preset_catalog()) CHECK(r.out.find(p.name) != std::string::npos);
}

TEST_CASE("reconstruct from a test function") {
  TempDir dir;
  const std::string out = dir / "rec";
  const auto r = run({"reconstruct", "--fn", "tanner", "--scheme", "fourier", "--m", "256", "--space",
                      "piecewise:-0.5:16,16", "--out", out});
  REQUIRE(r.code == 0);
  std::smatch mt;
  const std::regex line(R"(C_nm=(\S+) kappa_A=(\S+) K_nm=(\S+) iters=(\d+) linf=(\S+)\n)");
  REQUIRE(std::regex_search(r.out, mt, line));
  CHECK(std::stod(mt[5]) <= 1e-12);
  CHECK(std::stod(mt[1]) > 0.4);

  const auto coeffs = read_rows(out + "/reconstruction.csv");
  REQUIRE(coeffs.size() == 33);
  CHECK(coeffs[0] == std::vector<std::string>{"flat_index", "interval", "degree", "re"});
  CHECK(coeffs[17][1] == "1");
  CHECK(coeffs[17][2] == "0");
  const auto eval = read_rows(out + "/evaluation.csv");
  CHECK(eval.size() == 2050);
  CHECK(eval[0] == std::vector<std::string>{"x", "f", "f_nm", "error"});
  CHECK_FALSE(fs::exists(out + "/evaluation.svg"));

  CHECK(run({"reconstruct", "--fn", "tanner", "--m", "256", "--space", "piecewise:-0.5:16,16", "--out", out}).code ==
        2);
  CHECK(run({"reconstruct", "--fn", "tanner", "--m", "256", "--space", "piecewise:-0.5:16,16", "--out", out,
             "--force", "--plot"})
            .code == 0);
  CHECK(slurp(out + "/evaluation.svg").find("<svg") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  TempDir dir;
  const std::string out = dir / "x";
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"reconstruct", "--fn", "exp-cos4", "--m", "40"}).code == 2);
  CHECK(run({"reconstruct", "--fn", "nope", "--m", "40", "--space", "gegenbauer:0.5:8", "--out", out}).code == 2);
  CHECK(run({"reconstruct", "--fn", "exp-cos4", "--m", "40", "--space", "spline:3", "--out", out}).code == 2);
  CHECK(run({"reconstruct", "--fn", "exp-cos4", "--space", "gegenbauer:0.5:8", "--out", out}).code == 2);
  CHECK(run({"reconstruct", "--fn", "exp-x2y", "--m", "40", "--space", "gegenbauer:0.5:8", "--out", out}).code == 2);
  CHECK(run({"reconstruct", "--fn", "exp-cos4", "--m", "40", "--space", "gegenbauer:0.5:8", "--scheme", "wavelet",
             "--out", out})
            .code == 2);
  CHECK(run({"preset", "--preset", "fig-nothing", "--out", out}).code == 2);
  CHECK(run({"analyze", "--space", "gegenbauer:0.5:4", "--theta", "1.5"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("numerical failure exits with 3") {
  TempDir dir;
  const auto r = run({"reconstruct", "--fn", "exp-cos4", "--m", "300", "--space", "gegenbauer:0:40", "--tol", "1e-14",
                      "--maxit", "3", "--out", dir / "cg"});
  CHECK(r.code == 3);
  CHECK(r.err.find("did not reach") != std::string::npos);
}

TEST_CASE("malformed coefficient file reports its line") {
  TempDir dir;
  std::ofstream(dir / "bad.csv") << "kind,index,re,im\nfourier,0,1,0\nfourier,1,abc,0\n";
  const auto r = run({"reconstruct", "--input", dir / "bad.csv", "--space", "gegenbauer:0.5:3", "--out", dir / "o"});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("coefficient file round trip") {
  TempDir dir;
  for (const char* scheme : {"fourier", "mfourier", "legcoeff"}) {
    CAPTURE(scheme);
    const std::string file = dir / (std::string(scheme) + ".csv");
    REQUIRE(run({"sample", "--fn", "exp-cos8", "--scheme", scheme, "--m", "120", "--out", file}).code == 0);
    const std::string a = dir / (std::string(scheme) + "_fn");
    const std::string b = dir / (std::string(scheme) + "_file");
    REQUIRE(run({"reconstruct", "--fn", "exp-cos8", "--scheme", scheme, "--m", "120", "--space", "gegenbauer:0.5:24",
                 "--out", a})
                .code == 0);
    REQUIRE(run({"reconstruct", "--input", file, "--space", "gegenbauer:0.5:24", "--out", b}).code == 0);
    const auto ra = read_rows(a + "/reconstruction.csv");
    const auto rb = read_rows(b + "/reconstruction.csv");
    REQUIRE(ra.size() == rb.size());
    for (std::size_t i = 1; i < ra.size(); ++i) CHECK(std::abs(std::stod(ra[i][3]) - std::stod(rb[i][3])) <= 1e-13);
    const auto eval = read_rows(b + "/evaluation.csv");
    CHECK(eval[0] == std::vector<std::string>{"x", "f_nm"});
  }
}

TEST_CASE("analyze sweeps") {
  const auto mf = run({"analyze", "--space", "gegenbauer:0.5:1", "--scheme", "mfourier", "--n-range", "40:40"});
  REQUIRE(mf.code == 0);
  const std::regex row(R"(\n40,\d+,[^,]*,[^,]*,[^,]*,(\d+),([^,]*),)");
  std::smatch mt;
  REQUIRE(std::regex_search(mf.out, mt, row));
  CHECK(std::stod(mt[2]) >= 0.10);
  CHECK(std::stod(mt[2]) <= 0.20);

  auto theta_at = [&](const char* theta) {
    const auto r = run({"analyze", "--space", "gegenbauer:0.5:1", "--theta", theta, "--n-range", "12:12"});
    REQUIRE(r.code == 0);
    std::smatch m;
    REQUIRE(std::regex_search(r.out, m, std::regex(R"(\n12,\d+,[^,]*,[^,]*,[^,]*,(\d+),)")));
    return std::stoi(m[1]);
  };
  CHECK(theta_at("0.99") > theta_at("0.5"));

  TempDir dir;
  const std::string sweep = dir / "sweep";
  REQUIRE(run({"analyze", "--space", "gegenbauer:0.5:1", "--theta", "0.25", "--n-range", "2:20:6", "--out", sweep})
              .code == 0);
  const auto rows = read_rows(sweep + "/analyze.csv");
  REQUIRE(rows.size() == 5);
  CHECK(rows[0][0] == "n");
  CHECK(rows[1][0] == "2");
  CHECK(rows[4][0] == "20");
  CHECK(run({"analyze", "--space", "gegenbauer:0.5:1", "--n-range", "2:20:6", "--out", sweep}).code == 2);
}

TEST_CASE("presets are deterministic") {
  TempDir dir;
  REQUIRE(run({"preset", "--preset", "tab-legsamp", "--out", dir / "a"}).code == 0);
  REQUIRE(run({"preset", "--preset", "tab-legsamp", "--out", dir / "b"}).code == 0);
  const std::string first = slurp(dir / "a/tab-legsamp/condition.csv");
  CHECK_FALSE(first.empty());
  CHECK(first == slurp(dir / "b/tab-legsamp/condition.csv"));
  CHECK(run({"preset", "--preset", "tab-legsamp", "--out", dir / "a"}).code == 2);
  CHECK(run({"preset", "--preset", "tab-legsamp", "--out", dir / "a", "--force", "--plot"}).code == 0);
  bool svg = false;
  for (const auto& e : fs::directory_iterator(dir / "a/tab-legsamp")) svg |= e.path().extension() == ".svg";
  CHECK(svg);
}

TEST_CASE("csv helpers") {
  using gensamp::cli::CsvTable;
  using gensamp::cli::num;
  CHECK(num(0.5) == "0.5");
  CHECK(num(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(num(std::nan("")) == "nan");
  CsvTable t({"a", "b"});
  t.comment("note");
  t.add_row({"1", "2"});
  CHECK_THROWS(t.add_row({"1"}));
  std::ostringstream os;
  t.write(os);
  CHECK(os.str() == "# note\na,b\n1,2\n");
  CHECK(t.column("b") == std::vector<double>{2.0});
}

TEST_CASE("the installed binary maps exit codes") {
  CHECK(spawn("list") == 0);
  CHECK(spawn("reconstruct") == 2);
  CHECK(spawn("preset --preset unknown-thing") == 2);
}
