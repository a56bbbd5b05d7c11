#pragma once

#include <vector>

#include "geotrack/image.hpp"
#include "geotrack/types.hpp"

namespace geotrack {

/// Single-level orthonormal Haar sub-bands. All four planes share the same
/// dimensions, half the (even) input size per axis.
struct Subbands {
  GrayImage ll, lh, hl, hh;
};

struct DetectorConfig {
  double hf_gain = 2.0;            // scalar gain on LH/HL/HH
  double intensity_threshold = 0.6;  // applied after min-max normalization
  int min_component_area = 2;      // px
  int max_candidates_per_frame = 30;

  void validate() const;
};

/// Per 2x2 block {a,b;c,d}: LL=(a+b+c+d)/2, LH=(a+b-c-d)/2,
/// HL=(a-b+c-d)/2, HH=(a-b-c+d)/2. Requires even width and height.
Subbands dwt2_haar(const GrayImage& img);

/// Exact inverse of dwt2_haar.
GrayImage idwt2_haar(const Subbands& sb);

/// Multiplies the three high-frequency planes by hf_gain; LL untouched.
Subbands enhance(Subbands sb, const DetectorConfig& cfg);

/// Full single-frame candidate detector: pad to even dims (edge
/// replication), decompose, enhance, reconstruct, crop, min-max normalize,
/// threshold, 8-connected components, area filter, intensity-weighted
/// centroids. Candidates are sorted by descending component peak intensity
/// and truncated at max_candidates_per_frame.
std::vector<Point2D> detect_candidates(const GrayImage& img, const DetectorConfig& cfg);

}  // namespace geotrack
