#pragma once

#include <utility>
#include <vector>

#include "geotrack/types.hpp"

namespace geotrack {

/// Dense m x n matrix of pairwise match costs (pixels). Entries must be
/// finite and non-negative; empty frames are handled by callers and never
/// reach this type.
class CostMatrix {
 public:
  CostMatrix(int rows, int cols, double fill = 0.0);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& at(int r, int c) { return values_[static_cast<std::size_t>(r) * cols_ + c]; }
  double at(int r, int c) const { return values_[static_cast<std::size_t>(r) * cols_ + c]; }

  const std::vector<double>& values() const { return values_; }

 private:
  int rows_;
  int cols_;
  std::vector<double> values_;
};

/// An optimal row -> column matching over a rectangular cost matrix.
/// Always contains exactly min(rows, cols) pairs, sorted by row index.
struct Assignment {
  std::vector<std::pair<int, int>> pairs;
  double total_cost = 0.0;
};

/// Euclidean distance matrix between two non-empty point sets. Entry (i, j)
/// is the distance from point i of `a` to point j of `b`.
CostMatrix build_cost_matrix(const FrameDetections& a, const FrameDetections& b);

/// Minimum-cost assignment of cardinality min(m, n). Among equal-cost
/// optima the lexicographically smallest pair list (sorted by row) is
/// returned, which makes the output deterministic for tied inputs.
Assignment solve_assignment(const CostMatrix& c);

/// Pairs of `asn` whose cost entry is strictly below `gate`, in order.
std::vector<std::pair<int, int>> gated_matches(const Assignment& asn, const CostMatrix& c,
                                               double gate);

}  // namespace geotrack
