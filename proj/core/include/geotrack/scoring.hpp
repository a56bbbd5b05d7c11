#pragma once

#include <vector>

#include "geotrack/types.hpp"

namespace geotrack {

struct EvalConfig {
  double match_epsilon = 10.0;  // TP distance tolerance (px, inclusive)
  double mse_clip = 10.0;       // per-miss penalty distance (px)

  void validate() const;
};

struct MatchedPair {
  int pred_index = 0;
  int truth_index = 0;
  double squared_error = 0.0;
};

/// Per-frame matching outcome. Predictions matched within match_epsilon
/// are TPs contributing d^2 each; every other prediction is an FP and
/// every unmatched truth an FN, each contributing mse_clip^2.
struct FrameScore {
  int sequence_id = 0;
  int frame = 0;
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
  double squared_error = 0.0;
  std::vector<MatchedPair> matches;  // pairs within match_epsilon
};

FrameScore match_frame(const FrameDetections& pred, const FrameDetections& truth,
                       const EvalConfig& cfg);

struct Rates {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Precision/recall/F1 with the 0/0 -> 0 convention.
Rates f1_from_counts(long long tp, long long fp, long long fn);

struct ScoreReport {
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double mse = 0.0;  // summed clipped squared error
  std::vector<FrameScore> per_frame;
};

/// Aggregates counts and squared errors over all frames of all sequences.
/// Sequence ids must agree on both sides; a sequence present on only one
/// side raises an error naming it.
ScoreReport score_dataset(const std::vector<SequenceDetections>& pred,
                          const std::vector<SequenceDetections>& truth, const EvalConfig& cfg);

}  // namespace geotrack
