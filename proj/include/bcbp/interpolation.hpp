#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bcbp/arithmetic.hpp"
#include "bcbp/sieve.hpp"

namespace bcbp {

/// Data for the interpolation view of a sign vector: entry j becomes
/// (-1)^j * delta_j.  Involutive.
inline std::vector<Int> alternate_signs(const SignVector& delta) {
  std::vector<Int> data;
  data.reserve(delta.entries.size());
  for (size_t j = 0; j < delta.entries.size(); ++j) {
    int v = delta.entries[j];
    if (v != 1 && v != -1)
      throw std::invalid_argument("alternate_signs: entries must be +-1");
    data.emplace_back(j % 2 == 0 ? v : -v);
  }
  return data;
}

inline bool is_constant_data(const std::vector<Int>& data) {
  return std::all_of(data.begin(), data.end(),
                     [&](const Int& v) { return v == data.front(); });
}

/// Degree of the interpolant of the sign-alternated data.
inline int interpolation_degree(const SignVector& delta) {
  return finite_difference_degree(alternate_signs(delta));
}

/// True iff the alternated data interpolates with degree < n.  Also checks
/// the bisection sum independently; the two must agree for every +-1 vector.
inline bool degree_criterion(const SignVector& delta) {
  const bool low_degree = interpolation_degree(delta) < delta.n;
  if (low_degree != verify_full(delta))
    throw TheoremViolation("degree_criterion: degree test and bisection sum disagree");
  return low_degree;
}

struct GapReport {
  int n = 0;
  int gamma = 0;
  std::optional<SignVector> witness;  // lex smallest attaining gamma
  std::vector<std::pair<SignVector, int>> per_solution;  // gap of each non-constant datum
};

namespace detail {

// Largest r such that the truncations [delta_0..delta_{n-m+1}] are bisection
// solutions of row n-m+1 for every m = 1..r.
inline int truncation_gap(const SignVector& delta) {
  const int n = delta.n;
  int r = 0;
  for (int m = 1; m <= n; ++m) {
    SignVector trunc{n - m + 1,
                     std::vector<int8_t>(delta.entries.begin(),
                                         delta.entries.begin() + (n - m + 2))};
    if (!verify_full(trunc)) break;
    r = m;
  }
  return r;
}

}  // namespace detail

/// Gap values over a complete solution set: for each solution whose
/// alternated data is non-constant, gap = n - degree of that data; gamma is
/// the maximum.  Each per-solution gap is cross-checked against the
/// truncation characterization.
inline GapReport gap(int n, const std::vector<SignVector>& solutions) {
  GapReport report;
  report.n = n;
  for (const auto& delta : solutions) {
    if (delta.n != n || !verify_full(delta))
      throw std::invalid_argument("gap: input contains a non-solution");
    const std::vector<Int> data = alternate_signs(delta);
    if (is_constant_data(data)) continue;
    const int r = n - finite_difference_degree(data);
    if (r != detail::truncation_gap(delta))
      throw TheoremViolation("gap: truncation characterization failed");
    report.per_solution.emplace_back(delta, r);
    if (r > report.gamma || (r == report.gamma && report.witness && delta < *report.witness)) {
      report.gamma = r;
      report.witness = delta;
    }
  }
  return report;
}

/// Exact rational samples of a polynomial at `count` equally spaced points
/// across [0, x_max], for external plotting.
inline std::vector<std::pair<Rat, Rat>> figure1_samples(const RationalPolynomial& poly,
                                                        const Rat& x_max, int count) {
  if (count < 2) throw std::invalid_argument("figure1_samples: count must be >= 2");
  std::vector<std::pair<Rat, Rat>> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    Rat x = x_max * Rat(i, count - 1);
    x.canonicalize();
    out.emplace_back(x, poly.evaluate(x));
  }
  return out;
}

}  // namespace bcbp
