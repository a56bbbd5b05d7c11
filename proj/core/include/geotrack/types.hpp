#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace geotrack {

/// How a point entered the pipeline. Detections come from a sensor or a
/// detector; the other three are produced by the completion stages.
enum class Provenance : std::uint8_t {
  Detected,
  Interpolated,
  Extrapolated,
  Regressed,
};

const char* to_string(Provenance p);
std::optional<Provenance> provenance_from_string(std::string_view name);

struct Point2D {
  double x = 0.0;
  double y = 0.0;
  Provenance provenance = Provenance::Detected;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

double distance(const Point2D& a, const Point2D& b);

/// All detections of one frame of an observation sequence.
struct FrameDetections {
  int frame = 0;
  std::vector<Point2D> points;

  bool empty() const { return points.empty(); }

  friend bool operator==(const FrameDetections&, const FrameDetections&) = default;
};

/// Per-frame point sets of one observation sequence, indexed by frame.
/// `frame_count` counts every frame of the observation, including empty
/// ones that have no map entry.
struct SequenceDetections {
  int sequence_id = 0;
  int frame_count = 0;
  std::map<int, FrameDetections> frames;

  /// Frames that currently hold at least one point, ascending.
  std::vector<int> non_empty_frames() const;

  /// Points stored at `frame`, or nullptr when the frame is absent/empty.
  const std::vector<Point2D>* points_at(int frame) const;

  /// Mutable point list for `frame`, creating the entry on demand.
  std::vector<Point2D>& points_for(int frame);

  std::size_t total_points() const;

  friend bool operator==(const SequenceDetections&, const SequenceDetections&) = default;
};

struct TrackNode {
  int frame = 0;
  Point2D point;

  friend bool operator==(const TrackNode&, const TrackNode&) = default;
};

/// A chained cross-frame identity. Nodes are ordered by strictly
/// increasing frame index.
struct Track {
  int track_id = 0;
  std::vector<TrackNode> nodes;

  bool has_frame(int frame) const;

  /// Sum of Euclidean steps between consecutive nodes.
  double path_length() const;

  friend bool operator==(const Track&, const Track&) = default;
};

}  // namespace geotrack
