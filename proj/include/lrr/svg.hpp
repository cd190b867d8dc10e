#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lrr/csv.hpp"

namespace lrr::svg {

/// Self-contained SVG output; byte-identical for identical inputs. Log-scale
/// axes reject nonpositive data with an explicit error.

struct LinePlotSpec {
  std::string title;
  std::string x_column;
  std::vector<std::string> y_columns;  // empty = every non-x column
  bool log_y = false;
  int width = 720;
  int height = 480;
};

void render_line_plot(const csv::Table& data, const LinePlotSpec& spec,
                      const std::filesystem::path& path);

struct HeatmapSpec {
  std::string title;
  std::string x_column;
  std::string y_column;
  std::string value_column;
  double vmin = 0.0;  // black
  double vmax = 1.0;  // white
  int cell_px = 48;
};

/// One rectangle per CSV row, grayscale by value.
void render_heatmap(const csv::Table& data, const HeatmapSpec& spec,
                    const std::filesystem::path& path);

}  // namespace lrr::svg
