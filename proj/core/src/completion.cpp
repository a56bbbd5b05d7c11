#include "geotrack/completion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "geotrack/assignment.hpp"

namespace geotrack {
namespace {

constexpr double kInfGate = std::numeric_limits<double>::infinity();

struct FrameMatch {
  CostMatrix cost;
  Assignment assignment;
};

FrameMatch match_frames(const FrameDetections& a, const FrameDetections& b) {
  CostMatrix cost = build_cost_matrix(a, b);
  Assignment asn = solve_assignment(cost);
  return {std::move(cost), std::move(asn)};
}

bool insert_deduped(std::vector<Point2D>& points, const Point2D& candidate, double dedup_radius) {
  for (const auto& existing : points) {
    if (distance(existing, candidate) < dedup_radius) return false;
  }
  points.push_back(candidate);
  return true;
}

Point2D lerp(const Point2D& a, const Point2D& b, double alpha, Provenance provenance) {
  return {a.x + alpha * (b.x - a.x), a.y + alpha * (b.y - a.y), provenance};
}

std::vector<Track> chain_tracks(const SequenceDetections& seq, double gate) {
  std::vector<Track> tracks;
  const auto frames = seq.non_empty_frames();
  if (frames.empty()) return tracks;

  // track index currently holding each point of the previous frame
  std::vector<int> prev_track;
  int next_id = 0;
  {
    const auto& first = seq.frames.at(frames.front());
    for (const auto& p : first.points) {
      tracks.push_back({next_id++, {{frames.front(), p}}});
      prev_track.push_back(static_cast<int>(tracks.size()) - 1);
    }
  }

  for (std::size_t k = 1; k < frames.size(); ++k) {
    const auto& prev = seq.frames.at(frames[k - 1]);
    const auto& cur = seq.frames.at(frames[k]);
    const auto m = match_frames(prev, cur);
    const auto kept = gated_matches(m.assignment, m.cost, gate);

    std::vector<int> cur_track(cur.points.size(), -1);
    for (const auto& [i, j] : kept) {
      const int t = prev_track[i];
      tracks[t].nodes.push_back({frames[k], cur.points[j]});
      cur_track[j] = t;
    }
    for (std::size_t j = 0; j < cur.points.size(); ++j) {
      if (cur_track[j] >= 0) continue;
      tracks.push_back({next_id++, {{frames[k], cur.points[j]}}});
      cur_track[j] = static_cast<int>(tracks.size()) - 1;
    }
    prev_track = std::move(cur_track);
  }
  return tracks;
}

double max_track_path(const std::vector<Track>& tracks) {
  double best = -1.0;
  for (const auto& t : tracks) {
    if (t.nodes.size() >= 2) best = std::max(best, t.path_length());
  }
  return best;  // negative when no track has 2+ nodes
}

int count_non_empty(const SequenceDetections& seq) {
  return static_cast<int>(seq.non_empty_frames().size());
}

// Nearest non-empty frame strictly before f, at most `lookback` frames away.
int nearest_before(const SequenceDetections& seq, int f, int lookback) {
  for (int g = f - 1; g >= std::max(0, f - lookback); --g) {
    if (seq.points_at(g)) return g;
  }
  return -1;
}

int nearest_after(const SequenceDetections& seq, int f, int lookback) {
  for (int g = f + 1; g <= std::min(seq.frame_count - 1, f + lookback); ++g) {
    if (seq.points_at(g)) return g;
  }
  return -1;
}

// Average per-anchor-point velocities from Hungarian matches between the
// anchor frame and up to `lookback` frames on its far side. `forward` picks
// which side of the anchor supplies the reference frames.
std::vector<std::pair<Point2D, Velocity>> anchor_velocities(const SequenceDetections& seq,
                                                            int anchor_frame, bool refs_before,
                                                            const CompletionConfig& cfg,
                                                            const ThresholdSet& th) {
  const auto& anchor = seq.frames.at(anchor_frame);
  std::vector<Velocity> sums(anchor.points.size());
  std::vector<int> counts(anchor.points.size(), 0);

  const int lo = refs_before ? std::max(0, anchor_frame - cfg.ref_lookback) : anchor_frame + 1;
  const int hi = refs_before ? anchor_frame - 1
                             : std::min(seq.frame_count - 1, anchor_frame + cfg.ref_lookback);
  for (int rf = lo; rf <= hi; ++rf) {
    const auto* ref_points = seq.points_at(rf);
    if (!ref_points) continue;
    const auto& ref = seq.frames.at(rf);
    // Row side is the anchor so pair indices line up with anchor points.
    const auto m = match_frames(anchor, ref);
    const auto kept = gated_matches(m.assignment, m.cost, th.t_comp);
    const int gap = std::abs(anchor_frame - rf);
    for (const auto& [ai, ri] : kept) {
      // Velocity always points toward increasing frames.
      const Velocity v = refs_before
                             ? motion_vector(anchor.points[ai], ref.points[ri], gap)
                             : motion_vector(ref.points[ri], anchor.points[ai], gap);
      sums[ai].vx += v.vx;
      sums[ai].vy += v.vy;
      counts[ai] += 1;
    }
  }

  std::vector<std::pair<Point2D, Velocity>> out;
  for (std::size_t i = 0; i < anchor.points.size(); ++i) {
    if (counts[i] == 0) continue;
    out.push_back({anchor.points[i], {sums[i].vx / counts[i], sums[i].vy / counts[i]}});
  }
  return out;
}

}  // namespace

void CompletionConfig::validate() const {
  if (window_radius < 1) throw std::invalid_argument("window_radius must be >= 1");
  if (!(support_tau > 0.0)) throw std::invalid_argument("support_tau must be positive");
  if (support_ratio_min < 0.0 || support_ratio_min > 1.0) {
    throw std::invalid_argument("support_ratio_min must lie in [0, 1]");
  }
  if (max_interp_gap < 1) throw std::invalid_argument("max_interp_gap must be >= 1");
  if (!(stat_k > 0.0)) throw std::invalid_argument("stat_k must be positive");
  if (!(comp_scale >= 1.0)) throw std::invalid_argument("comp_scale must be >= 1");
  if (!(agg_scale >= comp_scale)) throw std::invalid_argument("agg_scale must be >= comp_scale");
  if (!(dedup_radius > 0.0)) throw std::invalid_argument("dedup_radius must be positive");
  if (ref_lookback < 1) throw std::invalid_argument("ref_lookback must be >= 1");
}

double stat_threshold(const std::vector<double>& match_distances, double max_traj_distance,
                      const CompletionConfig& cfg) {
  if (match_distances.size() < 2) return cfg.support_tau;
  const double n = static_cast<double>(match_distances.size());
  const double mean = std::accumulate(match_distances.begin(), match_distances.end(), 0.0) / n;
  double var = 0.0;
  for (double d : match_distances) var += (d - mean) * (d - mean);
  var /= n;
  double t = mean + cfg.stat_k * std::sqrt(var);
  if (max_traj_distance >= 0.0) t = std::min(t, max_traj_distance);
  // Degenerate geometry (all matches at distance zero) leaves nothing to
  // gate against; fall back like the under-determined case.
  if (!(t > 0.0)) return cfg.support_tau;
  return t;
}

ThresholdSet estimate_thresholds(const SequenceDetections& seq, const CompletionConfig& cfg) {
  cfg.validate();
  std::vector<double> dists;
  const auto frames = seq.non_empty_frames();
  for (std::size_t k = 1; k < frames.size(); ++k) {
    const auto m = match_frames(seq.frames.at(frames[k - 1]), seq.frames.at(frames[k]));
    for (const auto& [i, j] : m.assignment.pairs) dists.push_back(m.cost.at(i, j));
  }
  const double max_traj = max_track_path(chain_tracks(seq, kInfGate));

  ThresholdSet th;
  th.t_stat = stat_threshold(dists, max_traj, cfg);
  th.t_comp = cfg.comp_scale * th.t_stat;
  th.t_agg = cfg.agg_scale * th.t_stat;
  return th;
}

SequenceDetections interpolate_gaps(const SequenceDetections& seq, const CompletionConfig& cfg) {
  return interpolate_gaps(seq, cfg, estimate_thresholds(seq, cfg));
}

SequenceDetections interpolate_gaps(const SequenceDetections& seq, const CompletionConfig& cfg,
                                    const ThresholdSet& th) {
  cfg.validate();
  SequenceDetections out = seq;
  const auto frames = seq.non_empty_frames();
  for (std::size_t k = 1; k < frames.size(); ++k) {
    const int f1 = frames[k - 1];
    const int f2 = frames[k];
    const int gap = f2 - f1;
    if (gap <= 1 || gap > cfg.max_interp_gap) continue;

    const auto m = match_frames(seq.frames.at(f1), seq.frames.at(f2));
    const auto kept = gated_matches(m.assignment, m.cost, th.t_stat);
    if (kept.empty()) continue;
    const auto& a = seq.frames.at(f1).points;
    const auto& b = seq.frames.at(f2).points;
    for (int f = f1 + 1; f < f2; ++f) {
      auto& target = out.points_for(f);
      const double alpha = static_cast<double>(f - f1) / gap;
      for (const auto& [i, j] : kept) {
        insert_deduped(target, lerp(a[i], b[j], alpha, Provenance::Interpolated),
                       cfg.dedup_radius);
      }
    }
  }
  return out;
}

SequenceDetections support_filter(const SequenceDetections& seq, const CompletionConfig& cfg) {
  cfg.validate();
  if (count_non_empty(seq) <= 3) return seq;  // short sequences are preserved verbatim

  SequenceDetections out = seq;
  for (auto& [f, dets] : out.frames) {
    const auto& original = seq.frames.at(f).points;
    std::vector<Point2D> kept;
    kept.reserve(original.size());
    for (const auto& p : original) {
      int support = 0;
      int valid = 0;
      for (int g = std::max(0, f - cfg.window_radius);
           g <= std::min(seq.frame_count - 1, f + cfg.window_radius); ++g) {
        if (g == f) continue;
        ++valid;
        const auto* neighbors = seq.points_at(g);
        if (!neighbors) continue;
        const bool supported = std::any_of(neighbors->begin(), neighbors->end(),
                                           [&](const Point2D& q) {
                                             return distance(p, q) <= cfg.support_tau;
                                           });
        if (supported) ++support;
      }
      const double ratio = valid > 0 ? static_cast<double>(support) / valid : 1.0;
      if (ratio >= cfg.support_ratio_min) kept.push_back(p);
    }
    dets.points = std::move(kept);
  }
  return out;
}

Velocity motion_vector(const Point2D& ref, const Point2D& check, int i) {
  if (i <= 0) throw std::invalid_argument("motion_vector: frame interval must be >= 1");
  return {(ref.x - check.x) / i, (ref.y - check.y) / i};
}

std::vector<Point2D> dual_end_interpolate(const FrameDetections& prev,
                                          const FrameDetections& next, int f,
                                          const ThresholdSet& th) {
  if (!(prev.frame < f && f < next.frame)) {
    throw std::invalid_argument("dual_end_interpolate: f must lie strictly between the frames");
  }
  const auto m = match_frames(prev, next);
  const auto kept = gated_matches(m.assignment, m.cost, th.t_comp);
  const double alpha = static_cast<double>(f - prev.frame) / (next.frame - prev.frame);
  std::vector<Point2D> out;
  out.reserve(kept.size());
  for (const auto& [i, j] : kept) {
    out.push_back(lerp(prev.points[i], next.points[j], alpha, Provenance::Interpolated));
  }
  return out;
}

Point2D single_end_extrapolate(const Point2D& ref, const Velocity& v, int delta_f) {
  if (delta_f == 0) throw std::invalid_argument("single_end_extrapolate: delta_f must be non-zero");
  return {ref.x + v.vx * delta_f, ref.y + v.vy * delta_f, Provenance::Extrapolated};
}

std::vector<Track> build_tracks(const SequenceDetections& seq, const ThresholdSet& th) {
  return chain_tracks(seq, th.t_agg);
}

Point2D regression_complete(const Track& track, int f) {
  if (track.nodes.size() < 2) {
    throw std::invalid_argument("regression_complete: track needs at least 2 nodes");
  }
  if (track.has_frame(f)) {
    throw std::invalid_argument("regression_complete: frame already present in track");
  }
  const double n = static_cast<double>(track.nodes.size());
  double mean_f = 0.0, mean_x = 0.0, mean_y = 0.0;
  for (const auto& node : track.nodes) {
    mean_f += node.frame;
    mean_x += node.point.x;
    mean_y += node.point.y;
  }
  mean_f /= n;
  mean_x /= n;
  mean_y /= n;

  double sff = 0.0, sfx = 0.0, sfy = 0.0;
  for (const auto& node : track.nodes) {
    const double df = node.frame - mean_f;
    sff += df * df;
    sfx += df * (node.point.x - mean_x);
    sfy += df * (node.point.y - mean_y);
  }
  const double slope_x = sfx / sff;  // sff > 0: frames strictly increase
  const double slope_y = sfy / sff;
  return {mean_x + slope_x * (f - mean_f), mean_y + slope_y * (f - mean_f),
          Provenance::Regressed};
}

SequenceDetections progressive_refine(const SequenceDetections& seq,
                                      const CompletionConfig& cfg) {
  return progressive_refine(seq, cfg, estimate_thresholds(seq, cfg));
}

SequenceDetections progressive_refine(const SequenceDetections& seq, const CompletionConfig& cfg,
                                      const ThresholdSet& th) {
  cfg.validate();
  SequenceDetections out = seq;
  if (out.frame_count <= 0) return out;

  // A frame is deficient when it holds fewer points than the sequence's
  // best frame. Decided once, on the state at entry.
  std::size_t full_count = 0;
  for (int f = 0; f < seq.frame_count; ++f) {
    const auto* pts = seq.points_at(f);
    full_count = std::max(full_count, pts ? pts->size() : 0);
  }
  std::vector<int> deficient;
  for (int f = 0; f < seq.frame_count; ++f) {
    const auto* pts = seq.points_at(f);
    if ((pts ? pts->size() : 0) < full_count) deficient.push_back(f);
  }

  for (int f : deficient) {
    const int before = nearest_before(out, f, cfg.ref_lookback);
    const int after = nearest_after(out, f, cfg.ref_lookback);

    std::vector<Point2D> cands;
    if (before >= 0 && after >= 0) {
      cands = dual_end_interpolate(out.frames.at(before), out.frames.at(after), f, th);
    } else if (before >= 0 || after >= 0) {
      const bool from_before = before >= 0;
      const int anchor = from_before ? before : after;
      for (const auto& [p, v] : anchor_velocities(out, anchor, from_before, cfg, th)) {
        cands.push_back(single_end_extrapolate(p, v, f - anchor));
      }
    } else {
      for (const auto& track : build_tracks(out, th)) {
        if (track.nodes.size() < 2 || track.has_frame(f)) continue;
        const Point2D p = regression_complete(track, f);
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& node : track.nodes) nearest = std::min(nearest, distance(p, node.point));
        if (nearest <= th.t_agg) cands.push_back(p);
      }
    }
    if (cands.empty()) continue;
    auto& target = out.points_for(f);
    for (const auto& p : cands) insert_deduped(target, p, cfg.dedup_radius);
  }
  return out;
}

SequenceDetections run_completion(const SequenceDetections& seq, const CompletionConfig& cfg) {
  cfg.validate();
  if (seq.total_points() == 0) return seq;
  const ThresholdSet th = estimate_thresholds(seq, cfg);
  SequenceDetections s = interpolate_gaps(seq, cfg, th);
  s = support_filter(s, cfg);
  s = progressive_refine(s, cfg, th);
  return s;
}

}  // namespace geotrack
