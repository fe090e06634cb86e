// Gaussian elimination over Scalar: rank, row echelon form, span tests.
#pragma once

#include <cmath>
#include <vector>

#include "exact.hpp"

namespace cohomone {

using Vec = std::vector<Scalar>;

// Reduces rows in place to row echelon form and returns the rank.  A pivot
// is any exactly nonzero entry, or an inexact entry above the tolerance;
// inexact pivots are chosen by largest magnitude.
inline int row_reduce(std::vector<Vec>& m) {
  if (m.empty()) return 0;
  const size_t cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < m.size(); ++c) {
    size_t best = m.size();
    double mag = 0;
    for (size_t i = r; i < m.size(); ++i) {
      const Scalar& x = m[i][c];
      if (x.is_zero()) continue;
      if (x.exact()) { best = i; break; }
      if (std::fabs(x.value()) > mag) { mag = std::fabs(x.value()); best = i; }
    }
    if (best == m.size()) continue;
    std::swap(m[r], m[best]);
    Scalar inv = Scalar(1) / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Scalar f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  m.resize(r);
  return int(r);
}

inline int rank(std::vector<Vec> m) { return row_reduce(m); }

// True iff v lies in the span of the rows.
inline bool span_contains(const std::vector<Vec>& rows, const Vec& v) {
  std::vector<Vec> a = rows;
  int r0 = row_reduce(a);
  a.push_back(v);
  return row_reduce(a) == r0;
}

inline bool span_contains_all(const std::vector<Vec>& rows, const std::vector<Vec>& vs) {
  std::vector<Vec> a = rows;
  int r0 = row_reduce(a);
  for (const Vec& v : vs) a.push_back(v);
  return row_reduce(a) == r0;
}

}  // namespace cohomone
