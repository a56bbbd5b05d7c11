#pragma once

#include <cstdint>
#include <vector>

#include "geotrack/image.hpp"
#include "geotrack/types.hpp"

namespace geotrack {

struct SceneSpec {
  int n_sequences = 1;
  int frames_per_sequence = 5;
  int width = 640;
  int height = 480;
  int tracks_min = 1;
  int tracks_max = 3;
  double speed_min = 0.5;          // px/frame
  double speed_max = 4.0;          // px/frame
  double min_track_separation = 25.0;  // px, enforced at every frame
  std::uint64_t seed = 0;

  void validate() const;
};

/// Corruption model for synthetic detections: independent per-point drops,
/// isotropic Gaussian jitter, and Poisson-distributed uniform clutter.
/// width/height bound the clutter placement.
struct CorruptionSpec {
  double p_drop = 0.2;
  double clutter_rate = 2.0;  // expected false points per frame
  double jitter_sigma = 0.3;  // px
  int width = 640;
  int height = 480;

  void validate() const;
};

struct Scene {
  std::vector<SequenceDetections> truth;
  std::vector<std::vector<Track>> tracks;  // tracks[i] belongs to truth[i]
};

/// Constant-velocity ground-truth tracks, uniformly random start and
/// heading, all positions inside the image bounds, pairwise separated by
/// at least min_track_separation at every frame. Deterministic per seed;
/// sequences use independently derived sub-seeds.
Scene generate_scene(const SceneSpec& spec);

std::vector<SequenceDetections> corrupt_scene(const std::vector<SequenceDetections>& truth,
                                              const CorruptionSpec& cor, std::uint64_t seed);

/// Positions of a constant-velocity track sampled at frames 0..frames-1.
std::vector<Point2D> linear_positions(const Point2D& start, double vx, double vy, int frames);

struct RenderSpec {
  double blob_sigma = 1.2;       // Gaussian splat radius (px)
  double blob_amplitude = 160.0;
  double background = 24.0;
  double noise_sigma = 4.0;      // additive background noise
};

/// Rasterizes one frame's points as Gaussian blobs over a noisy
/// background, clamped to [0, 255].
GrayImage render_frame(const FrameDetections& frame, int width, int height,
                       const RenderSpec& spec, std::uint64_t noise_seed);

/// Stable per-sequence/per-frame sub-seed derivation (splitmix64 over the
/// combined words).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt_a, std::uint64_t salt_b = 0);

}  // namespace geotrack
