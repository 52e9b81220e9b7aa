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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nccr/induction.hpp"
#include "nccr/lattice.hpp"

namespace nccr {

enum class Method { kGulotta, kIu };
std::string to_string(Method m);
Method parse_method(const std::string& s);

struct Embedding {
  LatticePolygon polygon;  // P translated
  LatticePolygon outer;    // P_0
  Point2 shift;            // added to every input vertex
  Int c = 0;
  Int d = 0;
};

// P_0 = [0,c] x [0,d] after translating P to touch both axes.
Embedding embed_rectangle(const LatticePolygon& p);
// P_0 = {x >= 0, y >= 0, d x + c y <= c d}, smallest by (c + d, then c).
Embedding embed_triangle(const LatticePolygon& p);

enum class CornerKind { kNW, kNE, kSE, kSW };

// Stern-Brocot rows: 1/1; 1/2, 2/1; 1/3, 2/3, 3/2, 3/1; ... Negative for
// the NE and SW corners.
class FareySlopes {
 public:
  explicit FareySlopes(CornerKind kind);
  Q next();
  int row() const { return row_; }

 private:
  struct Node {
    Int p, q, lp, lq, hp, hq;
  };
  int sign_;
  int row_ = 1;
  std::vector<Node> cur_;
  std::size_t pos_ = 0;
};

struct CutRecord {
  Point2 removed;
  std::vector<Point2> chain;  // v_0 .. v_{r+1}, counter-clockwise along P_i
  std::optional<Q> slope;
};

struct NestedSequence {
  std::vector<LatticePolygon> polygons;  // P_0 .. P_l
  std::vector<CutRecord> cuts;           // cut i turns P_{i-1} into P_i
  std::size_t length() const { return cuts.size(); }
};

struct GulottaOptions {
  int max_rows = 16;  // Farey rows tried before giving up
};

NestedSequence gulotta_sequence(const LatticePolygon& p, const LatticePolygon& p0,
                                const GulottaOptions& options = {});

enum class IuOrder {
  kTopFirst,   // largest (y, x)
  kLeftFirst,  // smallest x, then largest y
};

NestedSequence iu_sequence(const LatticePolygon& p, const LatticePolygon& p0,
                           IuOrder order = IuOrder::kTopFirst);

using Triangle = std::array<Point2, 3>;

std::vector<Triangle> base_triangulation(const LatticePolygon& p);
// Checks that the triangles tile p exactly.
void check_tiling(const LatticePolygon& p, const std::vector<Triangle>& tris);

struct Triangulation {
  std::vector<Point2> all_vertices;                     // V_0, sorted
  std::vector<Triangle> triangles;
  std::vector<int> level;                               // triangle lies in P_level
  std::vector<std::vector<Point2>> stage_vertices;      // V_0 .. V_l
  std::vector<std::vector<Point2>> cumulative_vertices; // V'_0 .. V'_l
  std::size_t stages() const { return stage_vertices.size(); }
  // Triangles of the stage-i restriction.
  std::vector<Triangle> stage_triangles(std::size_t i) const;
};

Triangulation assemble(const NestedSequence& seq, const std::vector<Triangle>& base);

struct SignConfig {
  Sign interval_sign = Sign::kMinus;  // Gulotta steps and IU edge steps
  std::optional<SignSequence> gulotta_signs;  // explicit per-step override
};

struct InductionPlan {
  InductionDatum datum;
  SignSequence signs;
};

InductionPlan induction_plan(const NestedSequence& seq, Method mode, const SignConfig& config = {});

struct SeedCollection {
  std::vector<Point2> base;
  std::vector<WeightVector> members;
};

// Members (0, i, i+j, j) and (0, i, i+j+1, j) on (0,0),(c,0),(c,d),(0,d).
SeedCollection seed_gulotta(Int c, Int d);
// Members (i, j, 1) on (0,0),(0,d),(c,0) with 0 <= i < c, 0 <= j < d.
SeedCollection seed_iu(Int c, Int d);

std::vector<WeightVector> restrict(const std::vector<WeightVector>& s, const std::vector<Point2>& v);

}  // namespace nccr
