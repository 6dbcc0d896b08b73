#pragma once

#include <string>
#include <vector>

#include "itx/measures.hpp"

// Dependency-free SVG 1.1 scatter writer. Output bytes are a pure
// function of the input (no timestamps, fixed number formatting).
namespace itx {

struct ScatterStyle {
  std::string fill = "#1f77b4";
  double radius = 2.0;     // pixels
  double opacity = 0.8;
};

struct ScatterLayer {
  std::vector<Point> points;  // 2-D
  ScatterStyle style;
};

std::string scatter_svg(const std::vector<ScatterLayer>& layers, int width = 640,
                        int height = 640);

void render_scatter(const std::vector<ScatterLayer>& layers, const std::string& path,
                    int width = 640, int height = 640);

}  // namespace itx
