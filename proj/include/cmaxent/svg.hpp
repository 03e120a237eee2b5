#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cmaxent::svg {

struct Line {
  std::string label;
  std::vector<double> values;  ///< NaN entries break the polyline
};

/// Standalone SVG line chart of several series over shared x values.
std::string line_chart(const std::string& title, const std::vector<double>& x,
                       const std::vector<Line>& lines);

void write_line_chart(const std::filesystem::path& path, const std::string& title,
                      const std::vector<double>& x, const std::vector<Line>& lines);

}  // namespace cmaxent::svg
