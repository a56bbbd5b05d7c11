#include "geotrack/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace geotrack {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Kuhn-Munkres with row/column potentials, O(m^2 n). Requires m <= n and
// assigns every row. Returns the row -> column map and fills the dual
// potentials used afterwards for the tie-break candidate prune.
std::vector<int> kuhn_munkres(const CostMatrix& c, std::vector<double>* row_potential,
                              std::vector<double>* col_potential) {
  const int m = c.rows();
  const int n = c.cols();
  std::vector<double> u(m + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0);  // match[j]: 1-based row assigned to column j
  std::vector<int> way(n + 1, 0);

  for (int i = 1; i <= m; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = c.at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> row_to_col(m, -1);
  for (int j = 1; j <= n; ++j) {
    if (match[j] > 0) row_to_col[match[j] - 1] = j - 1;
  }
  if (row_potential) row_potential->assign(u.begin() + 1, u.end());
  if (col_potential) col_potential->assign(v.begin() + 1, v.end());
  return row_to_col;
}

// Minimum total cost of a full matching (cardinality min(m, n)) over the
// given row/column subsets. Used only for small feasibility subproblems.
double sub_optimum(const CostMatrix& c, const std::vector<int>& rows,
                   const std::vector<int>& cols) {
  if (rows.empty() || cols.empty()) return 0.0;
  const bool transpose = rows.size() > cols.size();
  const int m = static_cast<int>(transpose ? cols.size() : rows.size());
  const int n = static_cast<int>(transpose ? rows.size() : cols.size());
  CostMatrix sub(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      sub.at(i, j) = transpose ? c.at(rows[j], cols[i]) : c.at(rows[i], cols[j]);
    }
  }
  const auto row_to_col = kuhn_munkres(sub, nullptr, nullptr);
  double total = 0.0;
  for (int i = 0; i < m; ++i) total += sub.at(i, row_to_col[i]);
  return total;
}

// Rebuilds the optimal pair list greedily so that, among all matchings of
// optimal total cost, the lexicographically smallest (row, col) list wins.
// Candidate columns are pruned by complementary slackness: every edge of an
// optimal matching has zero reduced cost under one fixed optimal dual.
std::vector<std::pair<int, int>> lexicographic_optimum(const CostMatrix& c, double optimum,
                                                       const std::vector<double>& reduced) {
  const int m = c.rows();
  const int n = c.cols();
  const int cardinality = std::min(m, n);
  double max_abs = 0.0;
  for (double v : c.values()) max_abs = std::max(max_abs, std::abs(v));
  const double edge_tol = 1e-7 * (1.0 + max_abs);
  const double total_tol = 1e-9 * (1.0 + std::abs(optimum));

  std::vector<int> cols_left(n);
  for (int j = 0; j < n; ++j) cols_left[j] = j;

  std::vector<std::pair<int, int>> chosen;
  chosen.reserve(cardinality);
  double spent = 0.0;
  int next_row = 0;

  while (static_cast<int>(chosen.size()) < cardinality) {
    const int remaining = cardinality - static_cast<int>(chosen.size());
    bool fixed = false;
    for (int r = next_row; r <= m - remaining && !fixed; ++r) {
      // Rows strictly after r that stay available for the tail.
      std::vector<int> tail_rows;
      tail_rows.reserve(m - r - 1);
      for (int rr = r + 1; rr < m; ++rr) tail_rows.push_back(rr);

      auto try_column = [&](int j) {
        std::vector<int> tail_cols;
        tail_cols.reserve(cols_left.size() - 1);
        for (int cc : cols_left) {
          if (cc != j) tail_cols.push_back(cc);
        }
        if (static_cast<int>(std::min(tail_rows.size(), tail_cols.size())) < remaining - 1) {
          return false;
        }
        const double rest = sub_optimum(c, tail_rows, tail_cols);
        return spent + c.at(r, j) + rest <= optimum + total_tol;
      };

      // Pass 1: zero-reduced-cost columns only. Pass 2 (numerical safety
      // net) scans everything; it is hit only if the dual got too fuzzy.
      for (int pass = 0; pass < 2 && !fixed; ++pass) {
        for (int j : cols_left) {
          const bool candidate = pass == 1 || reduced[static_cast<std::size_t>(r) * n + j] <= edge_tol;
          if (!candidate) continue;
          if (try_column(j)) {
            chosen.emplace_back(r, j);
            spent += c.at(r, j);
            cols_left.erase(std::find(cols_left.begin(), cols_left.end(), j));
            next_row = r + 1;
            fixed = true;
            break;
          }
        }
      }
      // No column works: row r is unmatched in every optimal completion.
    }
    if (!fixed) {
      throw std::logic_error("assignment tie-break failed to extend an optimal prefix");
    }
  }
  return chosen;
}

}  // namespace

CostMatrix::CostMatrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), values_(static_cast<std::size_t>(rows) * cols, fill) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("CostMatrix requires at least one row and one column");
  }
}

CostMatrix build_cost_matrix(const FrameDetections& a, const FrameDetections& b) {
  if (a.points.empty() || b.points.empty()) {
    throw std::invalid_argument("build_cost_matrix: both frames must be non-empty");
  }
  CostMatrix c(static_cast<int>(a.points.size()), static_cast<int>(b.points.size()));
  for (int i = 0; i < c.rows(); ++i) {
    for (int j = 0; j < c.cols(); ++j) {
      c.at(i, j) = distance(a.points[i], b.points[j]);
    }
  }
  return c;
}

Assignment solve_assignment(const CostMatrix& c) {
  for (double v : c.values()) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("solve_assignment: cost matrix contains a non-finite entry");
    }
  }

  const int m = c.rows();
  const int n = c.cols();
  const bool transpose = m > n;

  // Solve in the orientation with rows <= cols, then recover duals and the
  // optimal value in the original orientation.
  std::vector<double> u, v;
  double optimum = 0.0;
  if (!transpose) {
    const auto row_to_col = kuhn_munkres(c, &u, &v);
    for (int i = 0; i < m; ++i) optimum += c.at(i, row_to_col[i]);
  } else {
    CostMatrix t(n, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) t.at(j, i) = c.at(i, j);
    }
    const auto col_to_row = kuhn_munkres(t, &v, &u);  // duals swap roles
    for (int j = 0; j < n; ++j) optimum += t.at(j, col_to_row[j]);
  }

  // Reduced costs in the original orientation; u may be shorter than m when
  // the matrix was transposed (unmatched rows carry zero potential).
  std::vector<double> reduced(static_cast<std::size_t>(m) * n, 0.0);
  for (int i = 0; i < m; ++i) {
    const double ui = i < static_cast<int>(u.size()) ? u[i] : 0.0;
    for (int j = 0; j < n; ++j) {
      const double vj = j < static_cast<int>(v.size()) ? v[j] : 0.0;
      reduced[static_cast<std::size_t>(i) * n + j] = c.at(i, j) - ui - vj;
    }
  }

  Assignment out;
  out.pairs = lexicographic_optimum(c, optimum, reduced);
  out.total_cost = 0.0;
  for (const auto& [r, col] : out.pairs) out.total_cost += c.at(r, col);
  return out;
}

std::vector<std::pair<int, int>> gated_matches(const Assignment& asn, const CostMatrix& c,
                                               double gate) {
  std::vector<std::pair<int, int>> kept;
  kept.reserve(asn.pairs.size());
  for (const auto& [r, col] : asn.pairs) {
    if (c.at(r, col) < gate) kept.emplace_back(r, col);
  }
  return kept;
}

}  // namespace geotrack
