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

#include <Eigen/Core>
#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nccr/arith.hpp"

namespace nccr {

// Lattice point in the plane z = 1; the ray generator is (x, y, 1).
struct Point2 {
  Int x = 0;
  Int y = 0;
  friend auto operator<=>(const Point2&, const Point2&) = default;
  friend bool operator==(const Point2&, const Point2&) = default;
  Point2 operator+(Point2 o) const { return {add(x, o.x), add(y, o.y)}; }
  Point2 operator-(Point2 o) const { return {sub(x, o.x), sub(y, o.y)}; }
  Point2 operator*(Int k) const { return {mul(x, k), mul(y, k)}; }
  Point2 operator-() const { return {-x, -y}; }
  std::string str() const;
};

struct Point2Hash {
  std::size_t operator()(const Point2& p) const {
    return std::hash<Int>()(p.x) * 1000003u ^ std::hash<Int>()(p.y);
  }
};

inline Int cross(Point2 a, Point2 b) { return sub(mul(a.x, b.y), mul(a.y, b.x)); }
inline Int dot(Point2 a, Point2 b) { return add(mul(a.x, b.x), mul(a.y, b.y)); }
// Orientation of (o, a, b): positive for a left turn.
inline Int orient(Point2 o, Point2 a, Point2 b) { return cross(a - o, b - o); }
inline Int lattice_length(Point2 d) { return gcd(d.x < 0 ? -d.x : d.x, d.y < 0 ? -d.y : d.y); }
Point2 primitive(Point2 d);

// Element m of M = Z^3 acting on height-one points.
struct Functional3 {
  Int m1 = 0;
  Int m2 = 0;
  Int m3 = 0;
  Int operator()(Point2 p) const { return add(add(mul(m1, p.x), mul(m2, p.y)), m3); }
  friend bool operator==(const Functional3&, const Functional3&) = default;
  friend auto operator<=>(const Functional3&, const Functional3&) = default;
};

// Integer weight per vertex (the divisor sum of b_v D_v).
using WeightVector = std::map<Point2, Int>;

WeightVector operator+(const WeightVector& a, const WeightVector& b);
WeightVector operator-(const WeightVector& a, const WeightVector& b);
// (<m, v>)_v over the given points.
WeightVector principal(const Functional3& m, std::span<const Point2> points);

class LatticePolygon {
 public:
  LatticePolygon() = default;
  // Accepts either orientation; rotates to the lexicographically smallest
  // vertex. Throws kInvalidPolygon unless the points are strictly convex.
  static LatticePolygon from_vertices(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  const Point2& operator[](std::size_t i) const { return v_[i]; }
  const Point2& vertex(std::ptrdiff_t i) const;  // cyclic index
  std::ptrdiff_t index_of(Point2 p) const;       // -1 when absent

  bool contains(Point2 p) const;
  bool on_boundary(Point2 p) const;
  bool is_vertex(Point2 p) const { return index_of(p) >= 0; }

  friend bool operator==(const LatticePolygon&, const LatticePolygon&) = default;

 private:
  friend LatticePolygon convex_hull(std::span<const Point2> points);
  std::vector<Point2> v_;
};

LatticePolygon convex_hull(std::span<const Point2> points);
std::vector<Point2> lattice_points(const LatticePolygon& p);
// Lattice points on the boundary, counter-clockwise from the first vertex.
std::vector<Point2> boundary_lattice_points(const LatticePolygon& p);
Int normalized_volume(const LatticePolygon& p);
Int normalized_area(Point2 a, Point2 b, Point2 c);
// Interior lattice points of ]a, b[ ordered from a to b.
std::vector<Point2> segment_lattice_points(Point2 a, Point2 b);

// p -> A p + t with det A = +-1.
struct UnimodularMap {
  using Matrix = Eigen::Matrix<Int, 2, 2>;
  Matrix a = Matrix::Identity();
  Point2 t{};

  Point2 operator()(Point2 p) const;
  UnimodularMap inverse() const;
  UnimodularMap then(const UnimodularMap& next) const;  // next o this
  Int det() const;
  bool is_identity() const { return a == Matrix::Identity() && t == Point2{}; }
};

struct CornerNormalization {
  Int n = 0;
  Int q = 0;
  UnimodularMap map;
};

// Sends (v_minus1, v_0, v_rp1) to ((0,0), (0,1), (n,-q)) with n > 0 and
// 0 <= q < n.
CornerNormalization normalize_corner(Point2 v_minus1, Point2 v_0, Point2 v_rp1);

}  // namespace nccr
