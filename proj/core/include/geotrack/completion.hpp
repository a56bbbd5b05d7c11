#pragma once

#include <vector>

#include "geotrack/types.hpp"

namespace geotrack {

/// Adaptive distance thresholds driving progressive completion:
/// statistical base, regular completion gate, aggressive gate.
struct ThresholdSet {
  double t_stat = 0.0;
  double t_comp = 0.0;
  double t_agg = 0.0;
};

struct CompletionConfig {
  int window_radius = 2;          // temporal support window half-width (frames)
  double support_tau = 10.0;      // spatial support distance (px, inclusive)
  double support_ratio_min = 0.3; // keep a point iff support ratio >= this
  int max_interp_gap = 2;         // stage-1 fills gaps f2 - f1 <= this
  double stat_k = 2.0;            // std multiplier in the t_stat estimate
  double comp_scale = 3.0;        // t_comp = comp_scale * t_stat
  double agg_scale = 4.5;         // t_agg = agg_scale * t_stat
  double dedup_radius = 1.0;      // inserted points closer than this are dropped
  int ref_lookback = 3;           // reference frames consulted around a gap

  /// Throws std::invalid_argument when a field is out of range. comp_scale
  /// must be >= 1 (and <= agg_scale) so that t_stat <= t_comp <= t_agg.
  void validate() const;
};

struct Velocity {
  double vx = 0.0;
  double vy = 0.0;
};

/// The scalar threshold rule: mean + stat_k * std of the match distances,
/// clipped by the maximum per-track trajectory distance. Falls back to
/// support_tau when fewer than two distances exist (or the estimate
/// degenerates to zero). Std uses population normalization.
double stat_threshold(const std::vector<double>& match_distances, double max_traj_distance,
                      const CompletionConfig& cfg);

/// Thresholds estimated from ungated Hungarian matches between every pair
/// of consecutive non-empty frames.
ThresholdSet estimate_thresholds(const SequenceDetections& seq, const CompletionConfig& cfg);

/// Stage 1: for consecutive non-empty frames whose gap is small enough,
/// match the point sets (gated at t_stat) and linearly interpolate each
/// retained pair into the missing frames in between.
SequenceDetections interpolate_gaps(const SequenceDetections& seq, const CompletionConfig& cfg);
SequenceDetections interpolate_gaps(const SequenceDetections& seq, const CompletionConfig& cfg,
                                    const ThresholdSet& th);

/// Stage 2: temporal-support noise filter. A point is removed when the
/// fraction of window frames containing a point within support_tau falls
/// below support_ratio_min; sequences with at most 3 non-empty frames are
/// left untouched. One pass; removals are decided on the pre-filter state.
SequenceDetections support_filter(const SequenceDetections& seq, const CompletionConfig& cfg);

/// Per-frame displacement between a point in the later (target) frame and
/// one in an earlier (reference) frame, i frames apart.
Velocity motion_vector(const Point2D& ref, const Point2D& check, int i);

/// Match prev against next, keep pairs under t_comp, and emit the linear
/// interpolants at frame f (prev.frame < f < next.frame).
std::vector<Point2D> dual_end_interpolate(const FrameDetections& prev,
                                          const FrameDetections& next, int f,
                                          const ThresholdSet& th);

/// ref position advanced by v over delta_f frames (negative delta_f walks
/// backward).
Point2D single_end_extrapolate(const Point2D& ref, const Velocity& v, int delta_f);

/// Greedy frame-by-frame chaining via Hungarian matching gated at t_agg.
/// Matched points extend tracks; unmatched later-frame points start new
/// ones. Every stored point lands in exactly one track.
std::vector<Track> build_tracks(const SequenceDetections& seq, const ThresholdSet& th);

/// Least-squares linear fit of x(frame) and y(frame) over the track's
/// nodes, evaluated at frame f. Requires >= 2 nodes and f not in the track.
Point2D regression_complete(const Track& track, int f);

/// Stage 3: fills frames holding fewer points than the sequence's best
/// frame, using dual-end interpolation, motion-vector extrapolation, or
/// per-track regression depending on which references exist nearby.
SequenceDetections progressive_refine(const SequenceDetections& seq, const CompletionConfig& cfg);
SequenceDetections progressive_refine(const SequenceDetections& seq, const CompletionConfig& cfg,
                                      const ThresholdSet& th);

/// The full completer: estimate_thresholds, interpolate_gaps,
/// support_filter, progressive_refine, in that order.
SequenceDetections run_completion(const SequenceDetections& seq, const CompletionConfig& cfg);

}  // namespace geotrack
