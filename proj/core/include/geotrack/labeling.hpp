#pragma once

#include <utility>
#include <vector>

#include "geotrack/image.hpp"

namespace geotrack {

/// A normalized local window together with its placement in the source
/// image. Windows are clipped at the image borders, so the patch may be
/// smaller than (2m+1) x (2m+1) near an edge.
struct WindowPatch {
  int x0 = 0;
  int y0 = 0;
  GrayImage values;  // min-max normalized to [0, 1]; all zero when flat
};

/// Min-max normalizes the (2m+1)-sided square window centered on
/// (cx, cy), clipped to the image. A flat window maps to all zeros.
WindowPatch normalize_window(const GrayImage& img, int cx, int cy, int m);

/// Bit set iff the value strictly exceeds 0.5.
BinaryMask binarize(const GrayImage& window);

/// Morphological dilation with the discrete disc of the given radius
/// (offsets with dx^2 + dy^2 <= radius^2; radius 1 is the 4-connected
/// cross). Output is clipped to the mask bounds.
BinaryMask dilate_circular(const BinaryMask& mask, int radius = 1);

/// Image-sized union of the dilated, binarized, normalized windows around
/// each center. Pixels outside every window stay zero. Throws when any
/// center lies outside the image, listing the offending indices.
BinaryMask make_shape_label(const GrayImage& img, const std::vector<std::pair<int, int>>& centers,
                            int m);

}  // namespace geotrack
