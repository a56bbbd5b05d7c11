#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "geotrack/types.hpp"

namespace geotrack {

/// Malformed annotation data. The message carries the offending record
/// index where one exists.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses an annotation document: a JSON array of records
///   {"sequence_id": int, "frame": int (1-based), "object_coords": [[x, y], ...]}
/// with an optional parallel "object_provenance" array. Records are grouped
/// by sequence, frames become 0-based, missing frames count as empty, and a
/// duplicated (sequence_id, frame) is a hard error naming both records.
std::vector<SequenceDetections> parse_annotations(const std::string& json_text);

/// Serializes sequences back to the annotation schema, one record per frame
/// (including empty ones), frames 1-based on disk, coordinates at full
/// round-trip precision. parse_annotations(write_annotations(x)) == x.
std::string write_annotations(const std::vector<SequenceDetections>& sequences);

}  // namespace geotrack
