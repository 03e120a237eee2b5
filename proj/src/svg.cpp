#include "cmaxent/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "cmaxent/errors.hpp"

namespace cmaxent::svg {

namespace {

constexpr double kWidth = 640, kHeight = 400, kMargin = 50;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

std::string line_chart(const std::string& title, const std::vector<double>& x,
                       const std::vector<Line>& lines) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (double v : x) {
    xmin = std::min(xmin, v);
    xmax = std::max(xmax, v);
  }
  for (const auto& line : lines) {
    if (line.values.size() != x.size()) throw InputShapeError("series length differs from x");
    for (double v : line.values) {
      if (!std::isfinite(v)) continue;
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!std::isfinite(ymin)) ymin = 0.0, ymax = 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;

  const auto px = [&](double v) { return kMargin + (v - xmin) / (xmax - xmin) * (kWidth - 2 * kMargin); };
  const auto py = [&](double v) { return kHeight - kMargin - (v - ymin) / (ymax - ymin) * (kHeight - 2 * kMargin); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title << "</text>\n";
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin
      << "\" height=\"" << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 16 << "\">" << label_num(xmin) << "</text>\n";
  out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 16
      << "\" text-anchor=\"end\">" << label_num(xmax) << "</text>\n";
  out << "<text x=\"" << kMargin - 4 << "\" y=\"" << kHeight - kMargin << "\" text-anchor=\"end\">"
      << label_num(ymin) << "</text>\n";
  out << "<text x=\"" << kMargin - 4 << "\" y=\"" << kMargin + 10 << "\" text-anchor=\"end\">"
      << label_num(ymax) << "</text>\n";
  if (ymin < 0.0 && ymax > 0.0)
    out << "<line x1=\"" << kMargin << "\" x2=\"" << kWidth - kMargin << "\" y1=\"" << num(py(0.0))
        << "\" y2=\"" << num(py(0.0)) << "\" stroke=\"#bbbbbb\"/>\n";

  for (std::size_t s = 0; s < lines.size(); ++s) {
    const char* color = kColors[s % std::size(kColors)];
    std::string points;
    const auto flush = [&] {
      if (!points.empty())
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"" << points << "\"/>\n";
      points.clear();
    };
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double v = lines[s].values[i];
      if (!std::isfinite(v)) {
        flush();
        continue;
      }
      points += num(px(x[i])) + "," + num(py(v)) + " ";
    }
    flush();
    out << "<text x=\"" << kWidth - kMargin - 4 << "\" y=\"" << kMargin + 16 + 14 * s
        << "\" text-anchor=\"end\" fill=\"" << color << "\">" << lines[s].label << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_line_chart(const std::filesystem::path& path, const std::string& title,
                      const std::vector<double>& x, const std::vector<Line>& lines) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << line_chart(title, x, lines);
}

}  // namespace cmaxent::svg
