#include "geotrack/config.hpp"

#include <functional>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace geotrack {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void apply_flat(ToolConfig& cfg, const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("config: expected a flat JSON object");

  const std::map<std::string, std::function<void(const json&)>> setters = {
      {"window_radius", [&](const json& v) { cfg.completion.window_radius = v.get<int>(); }},
      {"support_tau", [&](const json& v) { cfg.completion.support_tau = v.get<double>(); }},
      {"support_ratio_min",
       [&](const json& v) { cfg.completion.support_ratio_min = v.get<double>(); }},
      {"max_interp_gap", [&](const json& v) { cfg.completion.max_interp_gap = v.get<int>(); }},
      {"stat_k", [&](const json& v) { cfg.completion.stat_k = v.get<double>(); }},
      {"comp_scale", [&](const json& v) { cfg.completion.comp_scale = v.get<double>(); }},
      {"agg_scale", [&](const json& v) { cfg.completion.agg_scale = v.get<double>(); }},
      {"dedup_radius", [&](const json& v) { cfg.completion.dedup_radius = v.get<double>(); }},
      {"ref_lookback", [&](const json& v) { cfg.completion.ref_lookback = v.get<int>(); }},
      {"match_epsilon", [&](const json& v) { cfg.eval.match_epsilon = v.get<double>(); }},
      {"mse_clip", [&](const json& v) { cfg.eval.mse_clip = v.get<double>(); }},
      {"hf_gain", [&](const json& v) { cfg.detector.hf_gain = v.get<double>(); }},
      {"intensity_threshold",
       [&](const json& v) { cfg.detector.intensity_threshold = v.get<double>(); }},
      {"min_component_area",
       [&](const json& v) { cfg.detector.min_component_area = v.get<int>(); }},
      {"max_candidates_per_frame",
       [&](const json& v) { cfg.detector.max_candidates_per_frame = v.get<int>(); }},
  };

  for (const auto& [key, value] : doc.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw std::invalid_argument("config: unknown key \"" + key + "\"");
    try {
      it->second(value);
    } catch (const json::exception&) {
      throw std::invalid_argument("config: bad value type for \"" + key + "\"");
    }
  }
}

}  // namespace

void ToolConfig::validate() const {
  completion.validate();
  eval.validate();
  detector.validate();
}

ToolConfig parse_tool_config(const std::string& json_text) {
  return merge_tool_config(ToolConfig{}, json_text);
}

ToolConfig merge_tool_config(const ToolConfig& base, const std::string& overrides_json) {
  json doc;
  try {
    doc = json::parse(overrides_json);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  ToolConfig cfg = base;
  apply_flat(cfg, doc);
  cfg.validate();
  return cfg;
}

std::string tool_config_json(const ToolConfig& cfg) {
  ordered_json doc;
  doc["window_radius"] = cfg.completion.window_radius;
  doc["support_tau"] = cfg.completion.support_tau;
  doc["support_ratio_min"] = cfg.completion.support_ratio_min;
  doc["max_interp_gap"] = cfg.completion.max_interp_gap;
  doc["stat_k"] = cfg.completion.stat_k;
  doc["comp_scale"] = cfg.completion.comp_scale;
  doc["agg_scale"] = cfg.completion.agg_scale;
  doc["dedup_radius"] = cfg.completion.dedup_radius;
  doc["ref_lookback"] = cfg.completion.ref_lookback;
  doc["match_epsilon"] = cfg.eval.match_epsilon;
  doc["mse_clip"] = cfg.eval.mse_clip;
  doc["hf_gain"] = cfg.detector.hf_gain;
  doc["intensity_threshold"] = cfg.detector.intensity_threshold;
  doc["min_component_area"] = cfg.detector.min_component_area;
  doc["max_candidates_per_frame"] = cfg.detector.max_candidates_per_frame;
  return doc.dump(2);
}

}  // namespace geotrack
