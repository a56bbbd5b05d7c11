#include "geotrack/scoring.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "geotrack/assignment.hpp"

namespace geotrack {

void EvalConfig::validate() const {
  if (!(match_epsilon > 0.0)) throw std::invalid_argument("match_epsilon must be positive");
  if (!(mse_clip > 0.0)) throw std::invalid_argument("mse_clip must be positive");
}

FrameScore match_frame(const FrameDetections& pred, const FrameDetections& truth,
                       const EvalConfig& cfg) {
  cfg.validate();
  FrameScore score;
  score.frame = truth.frame;

  const long long n_pred = static_cast<long long>(pred.points.size());
  const long long n_truth = static_cast<long long>(truth.points.size());
  if (n_pred > 0 && n_truth > 0) {
    const CostMatrix cost = build_cost_matrix(pred, truth);
    const Assignment asn = solve_assignment(cost);
    for (const auto& [i, j] : asn.pairs) {
      const double d = cost.at(i, j);
      if (d <= cfg.match_epsilon) {
        score.matches.push_back({i, j, d * d});
      }
    }
  }
  score.tp = static_cast<long long>(score.matches.size());
  score.fp = n_pred - score.tp;
  score.fn = n_truth - score.tp;

  const double clip2 = cfg.mse_clip * cfg.mse_clip;
  score.squared_error = (score.fp + score.fn) * clip2;
  for (const auto& m : score.matches) score.squared_error += m.squared_error;
  return score;
}

Rates f1_from_counts(long long tp, long long fp, long long fn) {
  Rates r;
  r.precision = (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
  r.recall = (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
  r.f1 = (r.precision + r.recall) > 0.0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
                                        : 0.0;
  return r;
}

ScoreReport score_dataset(const std::vector<SequenceDetections>& pred,
                          const std::vector<SequenceDetections>& truth, const EvalConfig& cfg) {
  cfg.validate();
  std::map<int, const SequenceDetections*> pred_by_id, truth_by_id;
  for (const auto& s : pred) pred_by_id[s.sequence_id] = &s;
  for (const auto& s : truth) truth_by_id[s.sequence_id] = &s;
  for (const auto& [id, seq] : pred_by_id) {
    if (!truth_by_id.count(id)) {
      throw std::invalid_argument("score_dataset: sequence " + std::to_string(id) +
                                  " present only in predictions");
    }
  }
  for (const auto& [id, seq] : truth_by_id) {
    if (!pred_by_id.count(id)) {
      throw std::invalid_argument("score_dataset: sequence " + std::to_string(id) +
                                  " present only in truth");
    }
  }

  ScoreReport report;
  static const FrameDetections kEmpty{};
  for (const auto& [id, truth_seq] : truth_by_id) {
    const auto& pred_seq = *pred_by_id.at(id);

    std::set<int> frames;
    for (const auto& [f, dets] : truth_seq->frames) frames.insert(f);
    for (const auto& [f, dets] : pred_seq.frames) frames.insert(f);

    for (int f : frames) {
      auto pit = pred_seq.frames.find(f);
      auto tit = truth_seq->frames.find(f);
      const FrameDetections& p = pit != pred_seq.frames.end() ? pit->second : kEmpty;
      const FrameDetections& t = tit != truth_seq->frames.end() ? tit->second : kEmpty;
      if (p.points.empty() && t.points.empty()) continue;

      FrameScore fs = match_frame(p, t, cfg);
      fs.sequence_id = id;
      fs.frame = f;
      report.tp += fs.tp;
      report.fp += fs.fp;
      report.fn += fs.fn;
      report.mse += fs.squared_error;
      report.per_frame.push_back(std::move(fs));
    }
  }

  const Rates rates = f1_from_counts(report.tp, report.fp, report.fn);
  report.precision = rates.precision;
  report.recall = rates.recall;
  report.f1 = rates.f1;
  return report;
}

}  // namespace geotrack
