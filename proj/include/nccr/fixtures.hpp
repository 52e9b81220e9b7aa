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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nccr/induction.hpp"
#include "nccr/lattice.hpp"
#include "nccr/triangulate.hpp"

namespace nccr {

// A polygon, optionally with a fixed triangulation and the datum that
// induces its extra vertices from the polygon's vertices.
struct Fixture {
  std::string name;
  LatticePolygon polygon;
  std::vector<Point2> vertices;  // triangulation vertices, empty for bare polygons
  std::vector<Triangle> triangles;
  std::optional<InductionDatum> datum;
};

LatticePolygon pentagon_polygon();  // (0,0),(4,0),(4,1),(3,2),(1,3)
LatticePolygon unit_square();
LatticePolygon unit_triangle();

Fixture pentagon_fixture();
Fixture conifold_fixture();    // unit square with one diagonal
Fixture triangle_fixture();
Fixture hexagon_fixture();     // star triangulation, center at 1/6 each
Fixture nonregular_fixture();  // ten-vertex non-regular unimodular triangulation
Fixture square_center_fixture();

std::vector<Fixture> builtin_fixtures();
std::optional<Fixture> find_fixture(const std::string& name);

// Deterministic small polygons in [0, 4]^2 and larger boxes.
std::vector<LatticePolygon> random_polygons(std::size_t count = 20, std::uint32_t seed = 2026);

}  // namespace nccr
