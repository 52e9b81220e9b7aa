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

#include "nccr/fixtures.hpp"

#include <random>

namespace nccr {

LatticePolygon pentagon_polygon() {
  return LatticePolygon::from_vertices({{0, 0}, {4, 0}, {4, 1}, {3, 2}, {1, 3}});
}

LatticePolygon unit_square() { return LatticePolygon::from_vertices({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

LatticePolygon unit_triangle() { return LatticePolygon::from_vertices({{0, 0}, {1, 0}, {0, 1}}); }

namespace {

Fixture bare(std::string name, LatticePolygon p) {
  Fixture f{std::move(name), p, p.vertices(), base_triangulation(p), std::nullopt};
  f.datum = InductionDatum(p.vertices(), {});
  return f;
}

Step mix(Point2 v, std::initializer_list<std::pair<Point2, Q>> terms) {
  Step s{v, {}};
  for (auto [p, q] : terms) s.coeffs.push_back({p, q});
  return s;
}

}  // namespace

Fixture pentagon_fixture() { return bare("pentagon", pentagon_polygon()); }
Fixture conifold_fixture() { return bare("conifold", unit_square()); }
Fixture triangle_fixture() { return bare("triangle", unit_triangle()); }

Fixture hexagon_fixture() {
  auto p = LatticePolygon::from_vertices({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}});
  Fixture f{"hexagon", p, {}, {}, std::nullopt};
  const Point2 o{0, 0};
  f.vertices = p.vertices();
  f.vertices.push_back(o);
  Step center{o, {}};
  for (std::size_t i = 0; i < p.size(); ++i) {
    f.triangles.push_back({o, p[i], p.vertex(static_cast<std::ptrdiff_t>(i) + 1)});
    center.coeffs.push_back({p[i], Q(1, 6)});
  }
  f.datum = InductionDatum(p.vertices(), {center});
  return f;
}

Fixture nonregular_fixture() {
  const Point2 n[11] = {{},     {0, 0}, {2, 0}, {4, 6}, {1, 0}, {3, 3},
                        {2, 3}, {2, 2}, {1, 1}, {2, 1}, {3, 4}};
  auto p = LatticePolygon::from_vertices({n[1], n[2], n[3]});
  Fixture f{"nonregular", p, {}, {}, std::nullopt};
  for (int i = 1; i <= 10; ++i) f.vertices.push_back(n[i]);
  const int tris[12][3] = {{1, 4, 9}, {1, 9, 8}, {4, 2, 9}, {2, 5, 10}, {2, 10, 9}, {5, 3, 10},
                           {3, 6, 8}, {3, 8, 10}, {6, 1, 8}, {8, 9, 7}, {9, 10, 7}, {10, 8, 7}};
  for (const auto& t : tris) f.triangles.push_back({n[t[0]], n[t[1]], n[t[2]]});
  const Q h(1, 2), third(1, 3);
  f.datum = InductionDatum({n[1], n[2], n[3]},
                           {mix(n[4], {{n[1], h}, {n[2], h}}), mix(n[5], {{n[2], h}, {n[3], h}}),
                            mix(n[6], {{n[1], h}, {n[3], h}}),
                            mix(n[7], {{n[1], third}, {n[2], third}, {n[3], third}}),
                            mix(n[8], {{n[1], h}, {n[7], h}}), mix(n[9], {{n[2], h}, {n[7], h}}),
                            mix(n[10], {{n[3], h}, {n[7], h}})});
  return f;
}

Fixture square_center_fixture() {
  auto p = LatticePolygon::from_vertices({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  Fixture f{"square-center", p, p.vertices(), {}, std::nullopt};
  const Point2 o{1, 1};
  f.vertices.push_back(o);
  Step center{o, {}};
  for (std::size_t i = 0; i < 4; ++i) {
    f.triangles.push_back({o, p[i], p.vertex(static_cast<std::ptrdiff_t>(i) + 1)});
    center.coeffs.push_back({p[i], Q(1, 4)});
  }
  f.datum = InductionDatum(p.vertices(), {center});
  return f;
}

std::vector<Fixture> builtin_fixtures() {
  return {pentagon_fixture(), conifold_fixture(), triangle_fixture(), hexagon_fixture(),
          nonregular_fixture(), square_center_fixture()};
}

std::optional<Fixture> find_fixture(const std::string& name) {
  for (Fixture& f : builtin_fixtures())
    if (f.name == name) return f;
  return std::nullopt;
}

std::vector<LatticePolygon> random_polygons(std::size_t count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<LatticePolygon> out;
  while (out.size() < count) {
    const Int size = 2 + static_cast<Int>(out.size() % 4);
    const int points = 3 + static_cast<int>(out.size() % 5);
    std::vector<Point2> pts;
    for (int i = 0; i < points; ++i)
      pts.push_back({static_cast<Int>(rng() % (size + 1)), static_cast<Int>(rng() % (size + 1))});
    try {
      out.push_back(convex_hull(pts));
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace nccr
