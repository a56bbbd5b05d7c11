#pragma once

#include <string>

#include "geotrack/image.hpp"
#include "geotrack/scoring.hpp"
#include "geotrack/types.hpp"

namespace geotrack {

/// SVG overlay of predictions against truth for one frame. Every truth
/// point draws a blue ring; matched predictions are green, unmatched
/// predictions yellow, unmatched truths red (filled dots). `background`
/// may be null, in which case a dark canvas of the given size is used.
std::string render_overlay(const GrayImage* background, int width, int height,
                           const FrameDetections& pred, const FrameDetections& truth,
                           const EvalConfig& cfg);

}  // namespace geotrack
