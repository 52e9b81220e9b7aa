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

#include "nccr/lattice.hpp"

#include <algorithm>
#include <set>

namespace nccr {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kInvalidPolygon: return "InvalidPolygon";
    case ErrorCode::kCollinearInput: return "CollinearInput";
    case ErrorCode::kNotPrimitiveEdge: return "NotPrimitiveEdge";
    case ErrorCode::kCollinearCorner: return "CollinearCorner";
    case ErrorCode::kBadArguments: return "BadArguments";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kIndexMismatch: return "IndexMismatch";
    case ErrorCode::kDomainMismatch: return "DomainMismatch";
    case ErrorCode::kBadOrdering: return "BadOrdering";
    case ErrorCode::kChainMismatch: return "ChainMismatch";
    case ErrorCode::kNotInduced: return "NotInduced";
    case ErrorCode::kCutFailure: return "CutFailure";
    case ErrorCode::kStuckSequence: return "StuckSequence";
    case ErrorCode::kNonTriangleRegion: return "NonTriangleRegion";
    case ErrorCode::kNotConvex: return "NotConvex";
    case ErrorCode::kKeyMissing: return "KeyMissing";
    case ErrorCode::kExplosionGuard: return "ExplosionGuard";
    case ErrorCode::kParse: return "Parse";
  }
  return "Error";
}

std::string Point2::str() const {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

Point2 primitive(Point2 d) {
  Int g = lattice_length(d);
  if (g == 0) throw Error(ErrorCode::kBadArguments, "zero direction");
  return {d.x / g, d.y / g};
}

WeightVector operator+(const WeightVector& a, const WeightVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDomainMismatch, "weight domains differ");
  WeightVector r;
  for (auto [p, v] : a) {
    auto it = b.find(p);
    if (it == b.end()) throw Error(ErrorCode::kDomainMismatch, "weight domains differ");
    r.emplace(p, add(v, it->second));
  }
  return r;
}

WeightVector operator-(const WeightVector& a, const WeightVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDomainMismatch, "weight domains differ");
  WeightVector r;
  for (auto [p, v] : a) {
    auto it = b.find(p);
    if (it == b.end()) throw Error(ErrorCode::kDomainMismatch, "weight domains differ");
    r.emplace(p, sub(v, it->second));
  }
  return r;
}

WeightVector principal(const Functional3& m, std::span<const Point2> points) {
  WeightVector r;
  for (Point2 p : points) r[p] = m(p);
  return r;
}

LatticePolygon LatticePolygon::from_vertices(std::vector<Point2> v) {
  if (v.size() < 3) throw Error(ErrorCode::kInvalidPolygon, "fewer than 3 vertices");
  std::set<Point2> seen(v.begin(), v.end());
  if (seen.size() != v.size()) throw Error(ErrorCode::kInvalidPolygon, "repeated vertex");
  LatticePolygon hull = convex_hull(v);
  if (hull.size() != v.size())
    throw Error(ErrorCode::kInvalidPolygon, "vertices not in strictly convex position");
  // The input must trace the hull in one of the two cyclic directions.
  const std::size_t k = v.size();
  auto rot = std::min_element(v.begin(), v.end()) - v.begin();
  std::vector<Point2> ccw(k), cw(k);
  for (std::size_t i = 0; i < k; ++i) {
    ccw[i] = v[(rot + i) % k];
    cw[i] = v[(rot + k - i) % k];
  }
  if (ccw != hull.v_ && cw != hull.v_)
    throw Error(ErrorCode::kInvalidPolygon, "vertices not in cyclic order");
  return hull;
}

const Point2& LatticePolygon::vertex(std::ptrdiff_t i) const {
  const auto k = static_cast<std::ptrdiff_t>(v_.size());
  return v_[static_cast<std::size_t>(((i % k) + k) % k)];
}

std::ptrdiff_t LatticePolygon::index_of(Point2 p) const {
  auto it = std::find(v_.begin(), v_.end(), p);
  return it == v_.end() ? -1 : it - v_.begin();
}

bool LatticePolygon::contains(Point2 p) const {
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (orient(v_[i], v_[(i + 1) % v_.size()], p) < 0) return false;
  return true;
}

bool LatticePolygon::on_boundary(Point2 p) const {
  if (!contains(p)) return false;
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (orient(v_[i], v_[(i + 1) % v_.size()], p) == 0) return true;
  return false;
}

LatticePolygon convex_hull(std::span<const Point2> points) {
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw Error(ErrorCode::kCollinearInput, "fewer than 3 distinct points");
  // Andrew's monotone chain, dropping collinear points.
  std::vector<Point2> h(2 * pts.size());
  std::size_t k = 0;
  for (const Point2& p : pts) {
    while (k >= 2 && orient(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
    const Point2& p = pts[i];
    while (k >= lo && orient(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  h.resize(k - 1);
  if (h.size() < 3) throw Error(ErrorCode::kCollinearInput, "points are collinear");
  LatticePolygon out;
  out.v_ = std::move(h);  // starts at the lexicographic minimum, CCW
  return out;
}

std::vector<Point2> lattice_points(const LatticePolygon& p) {
  Int x0 = p[0].x, x1 = p[0].x, y0 = p[0].y, y1 = p[0].y;
  for (const Point2& v : p.vertices()) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  std::vector<Point2> out;
  for (Int x = x0; x <= x1; ++x)
    for (Int y = y0; y <= y1; ++y)
      if (p.contains({x, y})) out.push_back({x, y});
  return out;
}

std::vector<Point2> boundary_lattice_points(const LatticePolygon& p) {
  std::vector<Point2> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.push_back(p[i]);
    for (Point2 q : segment_lattice_points(p[i], p.vertex(i + 1))) out.push_back(q);
  }
  return out;
}

Int normalized_area(Point2 a, Point2 b, Point2 c) {
  Int s = orient(a, b, c);
  return s < 0 ? -s : s;
}

Int normalized_volume(const LatticePolygon& p) {
  Int s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s = add(s, cross(p[i], p.vertex(i + 1)));
  return s;
}

std::vector<Point2> segment_lattice_points(Point2 a, Point2 b) {
  Point2 d = b - a;
  Int g = lattice_length(d);
  if (g == 0) throw Error(ErrorCode::kBadArguments, "degenerate segment");
  Point2 step{d.x / g, d.y / g};
  std::vector<Point2> out;
  for (Int i = 1; i < g; ++i) out.push_back(a + step * i);
  return out;
}

Point2 UnimodularMap::operator()(Point2 p) const {
  return {add(add(mul(a(0, 0), p.x), mul(a(0, 1), p.y)), t.x),
          add(add(mul(a(1, 0), p.x), mul(a(1, 1), p.y)), t.y)};
}

Int UnimodularMap::det() const {
  return sub(mul(a(0, 0), a(1, 1)), mul(a(0, 1), a(1, 0)));
}

UnimodularMap UnimodularMap::inverse() const {
  Int d = det();
  UnimodularMap r;
  r.a << a(1, 1) * d, -a(0, 1) * d, -a(1, 0) * d, a(0, 0) * d;
  UnimodularMap lin{r.a, {}};
  Point2 mt = lin(t);
  r.t = {-mt.x, -mt.y};
  return r;
}

UnimodularMap UnimodularMap::then(const UnimodularMap& next) const {
  UnimodularMap r;
  r.a = next.a * a;
  r.t = next(t);
  return r;
}

CornerNormalization normalize_corner(Point2 v_minus1, Point2 v_0, Point2 v_rp1) {
  Point2 u0 = v_0 - v_minus1, u1 = v_rp1 - v_minus1;
  if (cross(u0, u1) == 0) throw Error(ErrorCode::kCollinearCorner, "corner is collinear");
  if (lattice_length(u0) != 1 || lattice_length(u1) != 1)
    throw Error(ErrorCode::kNotPrimitiveEdge, "corner edge carries interior lattice points");
  // B sends u0 to (0,1).
  Int al, be;
  ext_gcd(u0.x, u0.y, al, be);
  UnimodularMap::Matrix b;
  b << u0.y, -u0.x, al, be;
  UnimodularMap lin{b, {}};
  Point2 w = lin(u1);
  if (w.x < 0) {
    UnimodularMap::Matrix f;
    f << -1, 0, 0, 1;
    b = f * b;
    w.x = -w.x;
  }
  Int n = w.x;
  Int q = mod(-w.y, n);
  Int k = floor_div(sub(-q, w.y), n);  // w.y + k n = -q
  UnimodularMap::Matrix s;
  s << 1, 0, k, 1;
  CornerNormalization out;
  out.n = n;
  out.q = q;
  out.map.a = s * b;
  UnimodularMap lin2{out.map.a, {}};
  out.map.t = -lin2(v_minus1);
  return out;
}

}  // namespace nccr
