#include "gensamp/testfunctions.hpp"

#include <cmath>
#include <numbers>

#include "gensamp/error.hpp"

namespace gensamp {

namespace {

constexpr double kPi = std::numbers::pi;

double tanner(double x) {
  if (x < -0.5) {
    const double ep = std::exp(kPi);
    return (2.0 * std::exp(2.0 * kPi * (x + 1.0)) - 1.0 - ep) / (ep - 1.0);
  }
  return -std::sin(2.0 * kPi * x / 3.0 + kPi / 3.0);
}

std::vector<TestFunction> build() {
  std::vector<TestFunction> r;
  r.push_back({"exp-cos4", "exp(-x) cos(4x)", 1, [](double x) { return std::exp(-x) * std::cos(4.0 * x); }, {}, {}});
  r.push_back({"runge", "1 / (1 + x^2)", 1, [](double x) { return 1.0 / (1.0 + x * x); }, {}, {}});
  r.push_back({"tanner", "exponential ramp on [-1,-1/2), -sin(2 pi x/3 + pi/3) on [-1/2,1]", 1, tanner, {},
               {-0.5}});
  r.push_back({"exp-cos8", "exp(-x) cos(8x)", 1, [](double x) { return std::exp(-x) * std::cos(8.0 * x); }, {}, {}});
  r.push_back({"exp-x2y", "exp(x^2 y)", 2, {}, [](double x, double y) { return std::exp(x * x * y); }, {}});
  r.push_back({"sin3xy", "sin(3xy)", 2, {}, [](double x, double y) { return std::sin(3.0 * x * y); }, {}});
  r.push_back({"sincos-window", "sin(cos x) on [-1/2,1/2), 0 elsewhere", 1,
               [](double x) { return (x >= -0.5 && x < 0.5) ? std::sin(std::cos(x)) : 0.0; }, {}, {-0.5, 0.5}});
  return r;
}

}  // namespace

const std::vector<TestFunction>& test_function_registry() {
  static const std::vector<TestFunction> registry = build();
  return registry;
}

const TestFunction& test_function(const std::string& id) {
  for (const auto& t : test_function_registry()) {
    if (t.id == id) return t;
  }
  std::string known;
  for (const auto& t : test_function_registry()) known += (known.empty() ? "" : ", ") + t.id;
  throw DomainError("unknown test function '" + id + "' (known: " + known + ")");
}

}  // namespace gensamp
