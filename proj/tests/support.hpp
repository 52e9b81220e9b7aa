// Copyright 2026 The nccr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <random>
#include <vector>

#include "nccr/lattice.hpp"

namespace nccr::testing {

// Random lattice polygon from points in [0, size]^2.
inline LatticePolygon random_polygon(std::mt19937& rng, Int size, int points) {
  std::uniform_int_distribution<Int> u(0, size);
  for (;;) {
    std::vector<Point2> pts;
    for (int i = 0; i < points; ++i) pts.push_back({u(rng), u(rng)});
    try {
      return convex_hull(pts);
    } catch (const Error&) {
    }
  }
}

// Brute force: p is a hull vertex iff no triangle or segment of the other
// points covers it.
inline bool covered_by_others(const std::vector<Point2>& pts, std::size_t idx) {
  const Point2 p = pts[idx];
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i == idx) continue;
    if (pts[i] == p) return true;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == idx) continue;
      if (orient(pts[i], pts[j], p) == 0 &&
          dot(p - pts[i], p - pts[j]) <= 0)
        return true;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (k == idx) continue;
        Int a = orient(pts[i], pts[j], p), b = orient(pts[j], pts[k], p),
            c = orient(pts[k], pts[i], p);
        if ((a >= 0 && b >= 0 && c >= 0) || (a <= 0 && b <= 0 && c <= 0))
          if (orient(pts[i], pts[j], pts[k]) != 0) return true;
      }
    }
  }
  return false;
}

inline Functional3 random_m(std::mt19937& rng, Int r) {
  std::uniform_int_distribution<Int> u(-r, r);
  return {u(rng), u(rng), u(rng)};
}

}  // namespace nccr::testing
