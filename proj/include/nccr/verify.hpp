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
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "nccr/induction.hpp"
#include "nccr/lattice.hpp"
#include "nccr/triangulate.hpp"

namespace nccr {

// Bit i set means vertex i has sign -.
using SignMask = std::uint64_t;
constexpr std::size_t kMaxMaskVertices = 64;

std::string mask_string(SignMask minus, std::size_t n);
SignMask parse_mask(const std::string& s);
std::vector<Int> aligned(const WeightVector& b, std::span<const Point2> points);
SignMask sign_mask(std::span<const Point2> points, std::span<const Int> b, const Functional3& m);

// Triangles and their faces on a fixed vertex list.
class StageComplex {
 public:
  StageComplex(std::vector<Point2> vertices, const std::vector<Triangle>& triangles);
  static StageComplex from_triangulation(const Triangulation& t, std::size_t stage);

  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  int index_of(Point2 p) const;  // -1 when absent
  SignMask mask(const WeightVector& b, const Functional3& m) const;

 private:
  std::vector<Point2> vertices_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<int, 3>> triangles_;
};

// Full subcomplex on the active (sign -) vertices.
struct InducedSubcomplex {
  std::vector<int> vertices;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> triangles;
  bool empty() const { return vertices.empty(); }
};

InducedSubcomplex induced(const StageComplex& c, SignMask active);
InducedSubcomplex v_complex(const StageComplex& c, const WeightVector& b, const Functional3& m);

struct Betti {
  int bm1 = 0;
  int b0 = 0;
  int b1 = 0;
  friend bool operator==(const Betti&, const Betti&) = default;
};

Betti reduced_betti(const InducedSubcomplex& c);
bool is_empty_or_contractible(const InducedSubcomplex& c);
Betti reduced_betti(const StageComplex& c, SignMask active);
bool is_empty_or_contractible(const StageComplex& c, SignMask active);

// (x/d, y/d) + eps * perturb with d > 0.
struct Representative {
  Int x = 0;
  Int y = 0;
  Int d = 1;
  Point2 perturb;
};

struct ChamberCover {
  std::vector<Representative> representatives;
  std::vector<SignMask> patterns;  // sorted, unique
};

// Every sign vector realized by some m in Z^3 is among the patterns.
ChamberCover chamber_cover(std::span<const Point2> points, std::span<const Int> b);
ChamberCover chamber_cover(std::span<const Point2> points, const WeightVector& b);

// Sign vectors over m in [-radius, radius]^3 with the first m found for each.
std::vector<std::pair<SignMask, Functional3>> box_patterns(std::span<const Point2> points,
                                                           std::span<const Int> b, Int radius);

enum class Realizability { kRealizable, kInfeasible, kUnknown };

struct Realization {
  Realizability status = Realizability::kUnknown;
  std::optional<Functional3> witness;
};

// Exact search for an integer m producing the pattern. kUnknown only when
// the candidate box exceeds max_points.
Realization realize(std::span<const Point2> points, std::span<const Int> b, SignMask minus,
                    Int max_points = Int{1} << 24);

enum class VerifyMode { kChamber, kBox };
enum class Verdict { kCertified, kRefuted, kInconclusive };
std::string to_string(VerifyMode m);
std::string to_string(Verdict v);
VerifyMode parse_verify_mode(const std::string& s);

struct VerifyOptions {
  VerifyMode mode = VerifyMode::kChamber;
  Int box_radius = 8;
  unsigned jobs = 1;
};

struct Failure {
  std::size_t first = 0;   // index of b
  std::size_t second = 0;  // index of b'
  WeightVector b;
  WeightVector bprime;
  std::string signs;
  std::optional<Functional3> witness;
  Betti betti;
};

struct VerificationReport {
  VerifyMode mode = VerifyMode::kChamber;
  std::size_t pairs = 0;
  std::size_t vectors = 0;
  std::vector<Failure> failures;
  Verdict verdict = Verdict::kCertified;
};

// Checks that every V-complex of b' - b, over all ordered pairs, is empty
// or contractible.
VerificationReport ext_vanishing(const StageComplex& c, const std::vector<WeightVector>& s,
                                 const VerifyOptions& options = {});

struct PatternCheck {
  bool ok = true;
  std::optional<Functional3> witness;
  std::optional<std::pair<std::size_t, std::size_t>> pair;
};

// No alternating pattern on the four corners of base, for every pair.
PatternCheck rectangle_condition(const SeedCollection& s0);
// Every realized sign vector on the vertices of p is cyclically +..+-..-.
PatternCheck cm_check(const LatticePolygon& p, const WeightVector& b);
PatternCheck endo_cm_check(const LatticePolygon& p, const std::vector<WeightVector>& s);

std::size_t count_classes(const LatticePolygon& p, const std::vector<WeightVector>& s);

struct NCCRCertificate {
  bool cm_ok = false;
  std::size_t class_count = 0;
  Int volume = 0;
  bool verdict = false;
};

NCCRCertificate nccr_certificate(const LatticePolygon& p, const std::vector<WeightVector>& s);

std::set<Functional3> module_points(const WeightVector& b, Int radius);
// Literal equality on the box together with equal recession cones.
bool modules_equal(const WeightVector& b1, const WeightVector& b2, Int radius);

// Every sign assignment allowed by the sign lemma with a +..+-..- boundary
// pattern joins each vertex to the boundary by a path of constant sign.
bool constant_sign_path_check(const StageComplex& c, const InductionDatum& datum,
                              const LatticePolygon& p, std::size_t max_branches = 1u << 22);

enum class Move { kSame, kPoint, kInterval, kTriangle, kOther };
std::string to_string(Move m);

// Relation between consecutive V-complexes along the sequence, from stage
// l back to stage 0, for signs given on V_0.
std::vector<Move> stage_moves(const NestedSequence& seq, const Triangulation& t, SignMask minus_on_v0);

// Removes the triangle (a, p[vertex], c) where a lies on the edge entering
// p[vertex] and c on the edge leaving it.
struct CornerCut {
  std::size_t vertex = 0;
  Point2 a;
  Point2 c;
};

// nullopt when b is not CM or the cut leaves no polygon; otherwise whether
// all four induced projections are CM.
std::optional<bool> projection_preserves_cm(const LatticePolygon& p, const WeightVector& b,
                                            const CornerCut& cut);

}  // namespace nccr
