// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-only reference implementations and random instance generators. None
// of these call into the library's evaluation paths.

#ifndef SUBSEL_TESTS_ORACLES_HPP_
#define SUBSEL_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;
using Set = std::vector<std::size_t>;

// Symmetric similarity matrix with entries in [0,1] and unit diagonal.
inline Matrix random_similarity(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix s(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s[i][j] = s[j][i] = u(rng);
  }
  return s;
}

// Euclidean distances between random points in the unit square.
inline Matrix random_planar_distances(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<double, double>> p(n);
  for (auto& q : p) q = {u(rng), u(rng)};
  Matrix d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i][j] = d[j][i] = std::hypot(p[i].first - p[j].first,
                                     p[i].second - p[j].second);
    }
  }
  return d;
}

inline std::vector<double> flatten(const Matrix& m) {
  std::vector<double> out;
  for (const auto& r : m) out.insert(out.end(), r.begin(), r.end());
  return out;
}

// sum_i max_{j in X} s_ij, 0 for the empty set.
inline double facility_location(const Matrix& s, const Set& x) {
  if (x.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    double best = -1.0;
    for (auto j : x) best = std::max(best, s[i][j]);
    total += best;
  }
  return total;
}

// min over distinct pairs, +inf below two elements.
inline double disparity_min(const Matrix& d, const Set& x) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = a + 1; b < x.size(); ++b) {
      m = std::min(m, d[x[a]][x[b]]);
    }
  }
  return m;
}

inline Set set_of_mask(std::uint32_t mask) {
  Set s;
  for (std::size_t i = 0; i < 32; ++i) {
    if (mask & (1u << i)) s.push_back(i);
  }
  return s;
}

// Best value over all subsets of size exactly b.
template <typename F>
double best_of_size(std::size_t n, std::size_t b, F&& f) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != b) continue;
    best = std::max(best, f(set_of_mask(mask)));
  }
  return best;
}

}  // namespace oracle

#endif  // SUBSEL_TESTS_ORACLES_HPP_
