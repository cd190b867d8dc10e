#include "lrr/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>

namespace lrr::svg {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void update(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

}  // namespace

void render_line_plot(const csv::Table& data, const LinePlotSpec& spec,
                      const std::filesystem::path& path) {
  const int xc = data.column(spec.x_column);
  if (xc < 0) throw std::invalid_argument("svg: missing x column " + spec.x_column);
  std::vector<std::string> ys = spec.y_columns;
  if (ys.empty())
    for (const auto& h : data.header)
      if (h != spec.x_column) ys.push_back(h);
  if (ys.empty()) throw std::invalid_argument("svg: no y columns to plot");

  Range xr, yr;
  for (const auto& row : data.rows) xr.update(row[static_cast<std::size_t>(xc)]);
  for (const auto& name : ys) {
    const int c = data.column(name);
    if (c < 0) throw std::invalid_argument("svg: missing y column " + name);
    for (const auto& row : data.rows) {
      const double v = row[static_cast<std::size_t>(c)];
      if (std::isnan(v)) continue;
      if (spec.log_y) {
        if (v <= 0.0)
          throw std::invalid_argument("svg: log scale requires positive values, got " +
                                      label(v) + " in column " + name);
        yr.update(std::log10(v));
      } else {
        yr.update(v);
      }
    }
  }
  if (xr.hi <= xr.lo) xr.hi = xr.lo + 1.0;
  if (yr.hi <= yr.lo) yr.hi = yr.lo + 1.0;

  const double ml = 70, mr = 20, mt = 40, mb = 50;
  const double pw = spec.width - ml - mr, ph = spec.height - mt - mb;
  const auto sx = [&](double x) { return ml + pw * (x - xr.lo) / (xr.hi - xr.lo); };
  const auto sy = [&](double y) {
    const double t = spec.log_y ? std::log10(y) : y;
    return mt + ph * (1.0 - (t - yr.lo) / (yr.hi - yr.lo));
  };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("svg: cannot open " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
      << "\" height=\"" << spec.height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << num(ml) << "\" y=\"24\" font-size=\"15\" font-family=\"sans-serif\">"
      << spec.title << "</text>\n";

  // frame and ticks
  out << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  const int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / ticks;
    out << "<text x=\"" << num(sx(fx)) << "\" y=\"" << num(mt + ph + 18)
        << "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">"
        << label(fx) << "</text>\n";
    const double fy = yr.lo + (yr.hi - yr.lo) * i / ticks;
    out << "<text x=\"" << num(ml - 6) << "\" y=\"" << num(mt + ph * (1.0 - double(i) / ticks) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">"
        << (spec.log_y ? "1e" + label(fy) : label(fy)) << "</text>\n";
  }
  out << "<text x=\"" << num(ml + pw / 2) << "\" y=\"" << num(mt + ph + 38)
      << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\">"
      << spec.x_column << "</text>\n";

  for (std::size_t s = 0; s < ys.size(); ++s) {
    const int c = data.column(ys[s]);
    std::string points;
    for (const auto& row : data.rows) {
      const double v = row[static_cast<std::size_t>(c)];
      if (std::isnan(v)) continue;
      points += num(sx(row[static_cast<std::size_t>(xc)])) + "," + num(sy(v)) + " ";
    }
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
        << points << "\"/>\n";
    out << "<text x=\"" << num(ml + pw - 4) << "\" y=\"" << num(mt + 16 + 16.0 * static_cast<double>(s))
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << color
        << "\" font-family=\"sans-serif\">" << ys[s] << "</text>\n";
  }
  out << "</svg>\n";
}

void render_heatmap(const csv::Table& data, const HeatmapSpec& spec,
                    const std::filesystem::path& path) {
  const int xc = data.column(spec.x_column);
  const int yc = data.column(spec.y_column);
  const int vc = data.column(spec.value_column);
  if (xc < 0 || yc < 0 || vc < 0)
    throw std::invalid_argument("svg: heatmap columns missing");
  if (spec.vmax <= spec.vmin) throw std::invalid_argument("svg: vmax must exceed vmin");

  std::set<double> xticks, yticks;
  for (const auto& row : data.rows) {
    xticks.insert(row[static_cast<std::size_t>(xc)]);
    yticks.insert(row[static_cast<std::size_t>(yc)]);
  }
  std::vector<double> xs(xticks.begin(), xticks.end());
  std::vector<double> ys(yticks.begin(), yticks.end());
  const auto index_of = [](const std::vector<double>& v, double x) {
    return static_cast<int>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
  };

  const double ml = 70, mt = 40, mb = 50, mr = 20;
  const double w = ml + mr + spec.cell_px * static_cast<double>(xs.size());
  const double h = mt + mb + spec.cell_px * static_cast<double>(ys.size());

  std::ofstream out(path);
  if (!out) throw std::runtime_error("svg: cannot open " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\""
      << num(h) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << num(ml) << "\" y=\"24\" font-size=\"15\" font-family=\"sans-serif\">"
      << spec.title << "</text>\n";

  for (const auto& row : data.rows) {
    const int i = index_of(xs, row[static_cast<std::size_t>(xc)]);
    const int j = index_of(ys, row[static_cast<std::size_t>(yc)]);
    double t = (row[static_cast<std::size_t>(vc)] - spec.vmin) / (spec.vmax - spec.vmin);
    t = std::clamp(t, 0.0, 1.0);
    const int gray = static_cast<int>(std::lround(t * 255.0));
    char color[8];
    std::snprintf(color, sizeof(color), "#%02x%02x%02x", gray, gray, gray);
    // y axis grows upward: last tick at the top
    const double px = ml + spec.cell_px * static_cast<double>(i);
    const double py = mt + spec.cell_px * static_cast<double>(ys.size() - 1 - j);
    out << "<rect x=\"" << num(px) << "\" y=\"" << num(py) << "\" width=\"" << spec.cell_px
        << "\" height=\"" << spec.cell_px << "\" fill=\"" << color
        << "\" stroke=\"#cccccc\"/>\n";
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    out << "<text x=\"" << num(ml + spec.cell_px * (static_cast<double>(i) + 0.5)) << "\" y=\""
        << num(mt + spec.cell_px * static_cast<double>(ys.size()) + 18)
        << "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">"
        << label(xs[i]) << "</text>\n";
  for (std::size_t j = 0; j < ys.size(); ++j)
    out << "<text x=\"" << num(ml - 6) << "\" y=\""
        << num(mt + spec.cell_px * (static_cast<double>(ys.size() - j) - 0.5) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">"
        << label(ys[j]) << "</text>\n";
  out << "<text x=\"" << num(ml + spec.cell_px * static_cast<double>(xs.size()) / 2) << "\" y=\""
      << num(mt + spec.cell_px * static_cast<double>(ys.size()) + 38)
      << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\">"
      << spec.x_column << "</text>\n</svg>\n";
}

}  // namespace lrr::svg
