#pragma once

#include <string>

#include "geotrack/completion.hpp"
#include "geotrack/scoring.hpp"
#include "geotrack/wavelet.hpp"

namespace geotrack {

/// The tool-level configuration: one flat key space mirroring the field
/// names of CompletionConfig, EvalConfig and DetectorConfig.
struct ToolConfig {
  CompletionConfig completion;
  EvalConfig eval;
  DetectorConfig detector;

  void validate() const;
};

/// Parses a flat JSON object ({"support_tau": 10.0, ...}). Unknown keys
/// and wrong types are errors.
ToolConfig parse_tool_config(const std::string& json_text);

/// Applies `overrides` (same flat schema) on top of `base`.
ToolConfig merge_tool_config(const ToolConfig& base, const std::string& overrides_json);

/// The fully resolved configuration as canonical flat JSON.
std::string tool_config_json(const ToolConfig& cfg);

}  // namespace geotrack
