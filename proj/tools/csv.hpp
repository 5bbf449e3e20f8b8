#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace gensamp::cli {

/// Shortest round-trip text for v; "nan", "inf", "-inf" for non-finite values.
std::string num(double v, int digits = 10);
std::string num(int v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  /// Lines written above the header, each prefixed by "# ".
  void comment(const std::string& text);
  void add_row(std::vector<std::string> cells);

  std::size_t rows() const noexcept { return rows_.size(); }
  const std::vector<std::string>& header() const noexcept { return header_; }
  /// Column values converted back to numbers (nan where unparsable).
  std::vector<double> column(const std::string& name) const;

  void write(std::ostream& os) const;
  /// Throws gensamp::Error naming the path on I/O failure.
  void save(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> comments_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace gensamp::cli
