#pragma once

#include <string>

#include "wireface/brep.hpp"

namespace wireface {

// Renders the drawing's edges as an SVG document. When the drawing carries
// ground-truth faces and depths, occluded edges are drawn dashed.
std::string render_svg(const WireframeDrawing& drawing, int size_px = 512);

}  // namespace wireface
