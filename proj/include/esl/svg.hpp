// SVG pictures of arrangements. Coordinates are converted to doubles for
// display only.
#pragma once

#include <string>
#include <vector>

#include "esl/arrangement.hpp"
#include "esl/core.hpp"

namespace esl {

struct SvgHighlight {
  std::vector<int> subset;  ///< lines of the face's sub-family
  SignVector signs;
  std::string fill = "#f4a261";
};

struct SvgOptions {
  std::vector<SvgHighlight> faces;
  std::vector<int> emphasized_lines;  ///< drawn thicker
  std::vector<PointR> points;
  double width = 600;
};

/// Viewport: all vertices (and points) with a 10% margin on each side.
std::string render_svg(const LineFamily& f, const SvgOptions& opts = {});

}  // namespace esl
