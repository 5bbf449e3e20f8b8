#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace gensamp::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Plain line chart; non-finite points break the polyline.
struct Chart {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<Series> series;
};

std::string render_svg(const Chart& chart);
void save_svg(const std::filesystem::path& path, const Chart& chart);

}  // namespace gensamp::cli
