#include "geotrack/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace geotrack {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct TrackSeed {
  Point2D start;
  double vx;
  double vy;
};

bool separated_everywhere(const TrackSeed& a, const TrackSeed& b, int frames, double min_sep) {
  for (int f = 0; f < frames; ++f) {
    const double dx = (a.start.x + a.vx * f) - (b.start.x + b.vx * f);
    const double dy = (a.start.y + a.vy * f) - (b.start.y + b.vy * f);
    if (std::hypot(dx, dy) < min_sep) return false;
  }
  return true;
}

}  // namespace

void SceneSpec::validate() const {
  if (n_sequences < 1) throw std::invalid_argument("n_sequences must be >= 1");
  if (frames_per_sequence < 1) throw std::invalid_argument("frames_per_sequence must be >= 1");
  if (width < 2 || height < 2) throw std::invalid_argument("image bounds must be >= 2 px");
  if (tracks_min < 1 || tracks_max < tracks_min) {
    throw std::invalid_argument("tracks range must satisfy 1 <= tracks_min <= tracks_max");
  }
  if (!(speed_min >= 0.0) || !(speed_max >= speed_min)) {
    throw std::invalid_argument("speed range must satisfy 0 <= speed_min <= speed_max");
  }
  if (!(speed_max < std::min(width, height) / static_cast<double>(frames_per_sequence))) {
    throw std::invalid_argument("speed_max must stay below min(width, height) / frames");
  }
  if (!(min_track_separation >= 0.0)) {
    throw std::invalid_argument("min_track_separation must be >= 0");
  }
}

void CorruptionSpec::validate() const {
  if (!(p_drop >= 0.0 && p_drop < 1.0)) throw std::invalid_argument("p_drop must lie in [0, 1)");
  if (!(clutter_rate >= 0.0)) throw std::invalid_argument("clutter_rate must be >= 0");
  if (!(jitter_sigma >= 0.0)) throw std::invalid_argument("jitter_sigma must be >= 0");
  if (width < 1 || height < 1) throw std::invalid_argument("clutter bounds must be positive");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt_a, std::uint64_t salt_b) {
  return splitmix64(splitmix64(seed ^ splitmix64(salt_a)) ^ splitmix64(salt_b ^ 0xA5A5A5A5A5A5A5A5ull));
}

std::vector<Point2D> linear_positions(const Point2D& start, double vx, double vy, int frames) {
  std::vector<Point2D> out;
  out.reserve(frames);
  for (int f = 0; f < frames; ++f) {
    out.push_back({start.x + vx * f, start.y + vy * f, Provenance::Detected});
  }
  return out;
}

Scene generate_scene(const SceneSpec& spec) {
  spec.validate();
  Scene scene;
  scene.truth.reserve(spec.n_sequences);
  scene.tracks.reserve(spec.n_sequences);

  for (int s = 0; s < spec.n_sequences; ++s) {
    std::mt19937_64 rng(derive_seed(spec.seed, static_cast<std::uint64_t>(s)));
    std::uniform_int_distribution<int> n_tracks_dist(spec.tracks_min, spec.tracks_max);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const int n_tracks = n_tracks_dist(rng);
    const int frames = spec.frames_per_sequence;
    std::vector<TrackSeed> seeds;

    for (int t = 0; t < n_tracks; ++t) {
      bool placed = false;
      for (int attempt = 0; attempt < 10000 && !placed; ++attempt) {
        const double speed = spec.speed_min + (spec.speed_max - spec.speed_min) * unit(rng);
        const double heading = 2.0 * std::numbers::pi * unit(rng);
        TrackSeed cand;
        cand.vx = speed * std::cos(heading);
        cand.vy = speed * std::sin(heading);
        cand.start = {unit(rng) * (spec.width - 1), unit(rng) * (spec.height - 1),
                      Provenance::Detected};

        const double end_x = cand.start.x + cand.vx * (frames - 1);
        const double end_y = cand.start.y + cand.vy * (frames - 1);
        if (end_x < 0.0 || end_x > spec.width - 1 || end_y < 0.0 || end_y > spec.height - 1) {
          continue;
        }
        placed = std::all_of(seeds.begin(), seeds.end(), [&](const TrackSeed& other) {
          return separated_everywhere(cand, other, frames, spec.min_track_separation);
        });
        if (placed) seeds.push_back(cand);
      }
      if (!placed) {
        throw std::invalid_argument(
            "generate_scene: could not place tracks under the separation constraint");
      }
    }

    SequenceDetections seq;
    seq.sequence_id = s;
    seq.frame_count = frames;
    std::vector<Track> tracks;
    for (int t = 0; t < n_tracks; ++t) {
      Track track;
      track.track_id = t;
      const auto positions = linear_positions(seeds[t].start, seeds[t].vx, seeds[t].vy, frames);
      for (int f = 0; f < frames; ++f) {
        seq.points_for(f).push_back(positions[f]);
        track.nodes.push_back({f, positions[f]});
      }
      tracks.push_back(std::move(track));
    }
    scene.truth.push_back(std::move(seq));
    scene.tracks.push_back(std::move(tracks));
  }
  return scene;
}

std::vector<SequenceDetections> corrupt_scene(const std::vector<SequenceDetections>& truth,
                                              const CorruptionSpec& cor, std::uint64_t seed) {
  cor.validate();
  std::vector<SequenceDetections> out;
  out.reserve(truth.size());

  for (const auto& truth_seq : truth) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(truth_seq.sequence_id),
                                    0xC0FFEEull));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> jitter(0.0, cor.jitter_sigma);
    std::poisson_distribution<int> clutter_count(cor.clutter_rate);

    SequenceDetections seq;
    seq.sequence_id = truth_seq.sequence_id;
    seq.frame_count = truth_seq.frame_count;

    for (int f = 0; f < truth_seq.frame_count; ++f) {
      std::vector<Point2D> points;
      if (const auto* truth_points = truth_seq.points_at(f)) {
        for (const auto& p : *truth_points) {
          if (unit(rng) < cor.p_drop) continue;
          Point2D q = p;
          if (cor.jitter_sigma > 0.0) {
            q.x += jitter(rng);
            q.y += jitter(rng);
          }
          q.provenance = Provenance::Detected;
          points.push_back(q);
        }
      }
      const int n_clutter = cor.clutter_rate > 0.0 ? clutter_count(rng) : 0;
      for (int k = 0; k < n_clutter; ++k) {
        points.push_back({unit(rng) * (cor.width - 1), unit(rng) * (cor.height - 1),
                          Provenance::Detected});
      }
      if (!points.empty()) seq.points_for(f) = std::move(points);
    }
    out.push_back(std::move(seq));
  }
  return out;
}

GrayImage render_frame(const FrameDetections& frame, int width, int height,
                       const RenderSpec& spec, std::uint64_t noise_seed) {
  GrayImage img(width, height, spec.background);
  if (spec.noise_sigma > 0.0) {
    std::mt19937_64 rng(noise_seed);
    std::normal_distribution<double> noise(0.0, spec.noise_sigma);
    for (double& v : img.values) v += noise(rng);
  }

  const double sigma2 = 2.0 * spec.blob_sigma * spec.blob_sigma;
  const int reach = static_cast<int>(std::ceil(3.0 * spec.blob_sigma));
  for (const auto& p : frame.points) {
    const int cx = static_cast<int>(std::lround(p.x));
    const int cy = static_cast<int>(std::lround(p.y));
    for (int y = cy - reach; y <= cy + reach; ++y) {
      for (int x = cx - reach; x <= cx + reach; ++x) {
        if (!img.contains(x, y)) continue;
        const double dx = x - p.x;
        const double dy = y - p.y;
        img.at(x, y) += spec.blob_amplitude * std::exp(-(dx * dx + dy * dy) / sigma2);
      }
    }
  }
  for (double& v : img.values) v = std::clamp(v, 0.0, 255.0);
  return img;
}

}  // namespace geotrack
