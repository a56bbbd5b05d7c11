#include "geotrack/types.hpp"

#include <cmath>

namespace geotrack {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Detected:
      return "detected";
    case Provenance::Interpolated:
      return "interpolated";
    case Provenance::Extrapolated:
      return "extrapolated";
    case Provenance::Regressed:
      return "regressed";
  }
  return "detected";
}

std::optional<Provenance> provenance_from_string(std::string_view name) {
  if (name == "detected") return Provenance::Detected;
  if (name == "interpolated") return Provenance::Interpolated;
  if (name == "extrapolated") return Provenance::Extrapolated;
  if (name == "regressed") return Provenance::Regressed;
  return std::nullopt;
}

double distance(const Point2D& a, const Point2D& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::vector<int> SequenceDetections::non_empty_frames() const {
  std::vector<int> out;
  for (const auto& [frame, dets] : frames) {
    if (!dets.points.empty()) out.push_back(frame);
  }
  return out;
}

const std::vector<Point2D>* SequenceDetections::points_at(int frame) const {
  auto it = frames.find(frame);
  if (it == frames.end() || it->second.points.empty()) return nullptr;
  return &it->second.points;
}

std::vector<Point2D>& SequenceDetections::points_for(int frame) {
  auto& entry = frames[frame];
  entry.frame = frame;
  return entry.points;
}

std::size_t SequenceDetections::total_points() const {
  std::size_t n = 0;
  for (const auto& [frame, dets] : frames) n += dets.points.size();
  return n;
}

bool Track::has_frame(int frame) const {
  for (const auto& node : nodes) {
    if (node.frame == frame) return true;
  }
  return false;
}

double Track::path_length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    total += distance(nodes[i - 1].point, nodes[i].point);
  }
  return total;
}

}  // namespace geotrack
