#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gensamp/quadrature.hpp"

namespace gensamp {

using RealFn2 = std::function<double(double, double)>;

struct TestFunction {
  std::string id;
  std::string description;
  int dims = 1;
  RealFn f;    // dims == 1
  RealFn2 f2;  // dims == 2
  /// Jump locations (1-D) or per-axis jumps (2-D, shared by both axes).
  std::vector<double> breakpoints;
};

/// exp-cos4, runge, tanner, exp-cos8, exp-x2y, sin3xy, sincos-window.
const std::vector<TestFunction>& test_function_registry();
/// Throws DomainError for unknown ids.
const TestFunction& test_function(const std::string& id);

}  // namespace gensamp
