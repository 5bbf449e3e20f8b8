#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gensamp/error.hpp"

namespace gensamp::cli {

/// Bad command-line input (exit code 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

struct PresetInfo {
  std::string name;
  std::string summary;
};

/// The fourteen experiment presets, in catalogue order.
const std::vector<PresetInfo>& preset_catalog();

struct PresetSettings {
  std::filesystem::path out_root = "out";
  bool force = false;
  bool plot = false;
  /// Restricts the Theta presets to one threshold.
  std::optional<double> theta;
  /// CG tolerance; presets use 1e-14 when unset.
  std::optional<double> tol;
  std::ostream* log = nullptr;
};

/// Runs a preset into out_root/<name>/ and returns the files written.
/// Throws UsageError for unknown names or an existing directory without force.
std::vector<std::filesystem::path> run_preset(const std::string& name, const PresetSettings& settings);

/// m = ceil(rule), guarded against rounding noise in the rule itself.
int m_from_rule(double rule);

}  // namespace gensamp::cli
