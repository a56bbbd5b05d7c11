#include "geotrack/annotations.hpp"

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace geotrack {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::vector<SequenceDetections> parse_annotations(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("annotations: invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("annotations: top-level value must be an array");

  std::map<int, SequenceDetections> by_id;
  std::map<std::pair<int, int>, std::size_t> first_record;  // (sequence, frame) -> record index

  for (std::size_t idx = 0; idx < doc.size(); ++idx) {
    const auto& rec = doc[idx];
    const std::string where = "annotations: record " + std::to_string(idx);
    if (!rec.is_object()) throw ParseError(where + " is not an object");
    if (!rec.contains("sequence_id") || !rec["sequence_id"].is_number_integer()) {
      throw ParseError(where + ": missing or non-integer sequence_id");
    }
    if (!rec.contains("frame") || !rec["frame"].is_number_integer()) {
      throw ParseError(where + ": missing or non-integer frame");
    }
    if (!rec.contains("object_coords") || !rec["object_coords"].is_array()) {
      throw ParseError(where + ": missing object_coords array");
    }

    const int sequence_id = rec["sequence_id"].get<int>();
    const int disk_frame = rec["frame"].get<int>();
    if (disk_frame < 1) throw ParseError(where + ": frame must be >= 1 on disk");
    const int frame = disk_frame - 1;

    const auto key = std::make_pair(sequence_id, frame);
    if (auto it = first_record.find(key); it != first_record.end()) {
      throw ParseError("annotations: duplicate (sequence_id " + std::to_string(sequence_id) +
                       ", frame " + std::to_string(disk_frame) + ") in records " +
                       std::to_string(it->second) + " and " + std::to_string(idx));
    }
    first_record[key] = idx;

    const auto& coords = rec["object_coords"];
    std::vector<Provenance> provenance(coords.size(), Provenance::Detected);
    if (rec.contains("object_provenance")) {
      const auto& prov = rec["object_provenance"];
      if (!prov.is_array() || prov.size() != coords.size()) {
        throw ParseError(where + ": object_provenance must parallel object_coords");
      }
      for (std::size_t k = 0; k < prov.size(); ++k) {
        if (!prov[k].is_string()) throw ParseError(where + ": provenance entries must be strings");
        const auto parsed = provenance_from_string(prov[k].get<std::string>());
        if (!parsed) {
          throw ParseError(where + ": unknown provenance \"" + prov[k].get<std::string>() + "\"");
        }
        provenance[k] = *parsed;
      }
    }

    auto& seq = by_id[sequence_id];
    seq.sequence_id = sequence_id;
    seq.frame_count = std::max(seq.frame_count, frame + 1);
    auto& points = seq.points_for(frame);
    for (std::size_t k = 0; k < coords.size(); ++k) {
      const auto& pair = coords[k];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
        throw ParseError(where + ": object_coords[" + std::to_string(k) +
                         "] must be a numeric [x, y] pair");
      }
      const double x = pair[0].get<double>();
      const double y = pair[1].get<double>();
      if (!std::isfinite(x) || !std::isfinite(y)) {
        throw ParseError(where + ": non-finite coordinate in object_coords[" +
                         std::to_string(k) + "]");
      }
      points.push_back({x, y, provenance[k]});
    }
  }

  std::vector<SequenceDetections> out;
  out.reserve(by_id.size());
  for (auto& [id, seq] : by_id) out.push_back(std::move(seq));
  return out;
}

std::string write_annotations(const std::vector<SequenceDetections>& sequences) {
  ordered_json doc = ordered_json::array();
  for (const auto& seq : sequences) {
    for (int f = 0; f < seq.frame_count; ++f) {
      ordered_json rec;
      rec["sequence_id"] = seq.sequence_id;
      rec["frame"] = f + 1;
      ordered_json coords = ordered_json::array();
      ordered_json provenance = ordered_json::array();
      if (const auto it = seq.frames.find(f); it != seq.frames.end()) {
        for (const auto& p : it->second.points) {
          coords.push_back(ordered_json::array({p.x, p.y}));
          provenance.push_back(to_string(p.provenance));
        }
      }
      rec["object_coords"] = std::move(coords);
      rec["object_provenance"] = std::move(provenance);
      doc.push_back(std::move(rec));
    }
  }
  return doc.dump(2) + "\n";
}

}  // namespace geotrack
