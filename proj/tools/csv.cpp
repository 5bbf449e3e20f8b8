#include "csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>

#include "gensamp/error.hpp"

namespace gensamp::cli {

std::string num(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string num(int v) { return std::to_string(v); }

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::comment(const std::string& text) { comments_.push_back(text); }

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw Error("csv: row has " + std::to_string(cells.size()) + " cells, header has " +
                std::to_string(header_.size()));
  }
  rows_.push_back(std::move(cells));
}

std::vector<double> CsvTable::column(const std::string& name) const {
  std::size_t idx = header_.size();
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) idx = i;
  }
  if (idx == header_.size()) throw Error("csv: no column '" + name + "'");
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) {
    const char* text = row[idx].c_str();
    char* end = nullptr;
    const double v = std::strtod(text, &end);
    out.push_back(end == text ? std::nan("") : v);
  }
  return out;
}

namespace {

void write_line(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

}  // namespace

void CsvTable::write(std::ostream& os) const {
  for (const auto& c : comments_) os << "# " << c << '\n';
  write_line(os, header_);
  for (const auto& row : rows_) write_line(os, row);
}

void CsvTable::save(const std::filesystem::path& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  write(os);
  os.flush();
  if (!os) throw Error("write failed: " + path.string());
}

}  // namespace gensamp::cli
