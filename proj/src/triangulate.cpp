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

#include "nccr/triangulate.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace nccr {

std::string to_string(Method m) { return m == Method::kGulotta ? "gulotta" : "iu"; }

Method parse_method(const std::string& s) {
  if (s == "gulotta") return Method::kGulotta;
  if (s == "iu") return Method::kIu;
  throw Error(ErrorCode::kParse, "method must be gulotta or iu");
}

namespace {

LatticePolygon translate(const LatticePolygon& p, Point2 t) {
  std::vector<Point2> v;
  for (Point2 x : p.vertices()) v.push_back(x + t);
  return LatticePolygon::from_vertices(v);
}

Point2 min_corner(const LatticePolygon& p) {
  Point2 m = p[0];
  for (Point2 v : p.vertices()) {
    m.x = std::min(m.x, v.x);
    m.y = std::min(m.y, v.y);
  }
  return m;
}

}  // namespace

Embedding embed_rectangle(const LatticePolygon& p) {
  Embedding e;
  Point2 m = min_corner(p);
  e.shift = -m;
  e.polygon = translate(p, e.shift);
  for (Point2 v : e.polygon.vertices()) {
    e.c = std::max(e.c, v.x);
    e.d = std::max(e.d, v.y);
  }
  e.outer = LatticePolygon::from_vertices({{0, 0}, {e.c, 0}, {e.c, e.d}, {0, e.d}});
  return e;
}

Embedding embed_triangle(const LatticePolygon& p) {
  Embedding e;
  Point2 m = min_corner(p);
  e.shift = -m;
  e.polygon = translate(p, e.shift);
  auto fits = [&](Int c, Int d) {
    for (Point2 v : e.polygon.vertices())
      if (add(mul(d, v.x), mul(c, v.y)) > mul(c, d)) return false;
    return true;
  };
  for (Int s = 2;; ++s)
    for (Int c = 1; c < s; ++c)
      if (fits(c, s - c)) {
        e.c = c;
        e.d = s - c;
        e.outer = LatticePolygon::from_vertices({{0, 0}, {e.c, 0}, {0, e.d}});
        return e;
      }
}

FareySlopes::FareySlopes(CornerKind kind)
    : sign_(kind == CornerKind::kNE || kind == CornerKind::kSW ? -1 : 1) {
  cur_.push_back({1, 1, 0, 1, 1, 0});
}

Q FareySlopes::next() {
  if (pos_ == cur_.size()) {
    std::vector<Node> nx;
    for (const Node& n : cur_) {
      nx.push_back({n.lp + n.p, n.lq + n.q, n.lp, n.lq, n.p, n.q});
      nx.push_back({n.p + n.hp, n.q + n.hq, n.p, n.q, n.hp, n.hq});
    }
    cur_ = std::move(nx);
    pos_ = 0;
    ++row_;
  }
  const Node& n = cur_[pos_++];
  return Q(sign_ * n.p, n.q);
}

namespace {

std::vector<Point2> chain_between(Point2 a, Point2 b) {
  std::vector<Point2> c{a};
  for (Point2 x : segment_lattice_points(a, b)) c.push_back(x);
  c.push_back(b);
  return c;
}

// Largest corner triangle at `apex` with hypotenuse direction `dir` keeping
// p inside; returns the multiplier k (0 when none).
Int max_dilation(const LatticePolygon& cur, std::size_t idx, Point2 dir, const LatticePolygon& p,
                 Point2& x_out, Point2& y_out) {
  const Point2 apex = cur[idx];
  const Point2 prev = cur.vertex(static_cast<std::ptrdiff_t>(idx) - 1);
  const Point2 next = cur.vertex(static_cast<std::ptrdiff_t>(idx) + 1);
  const Point2 e1 = primitive(prev - apex), e2 = primitive(next - apex);
  const Int len1 = lattice_length(prev - apex), len2 = lattice_length(next - apex);
  const Int al = cross(e1, dir), be = cross(e2, dir);
  if (al == 0 || be == 0 || (al > 0) != (be > 0)) return 0;
  const Int g = gcd(std::abs(al), std::abs(be));
  const Int s0 = std::abs(be) / g, t0 = std::abs(al) / g;
  Int best = 0;
  for (Int k = 1; k * s0 <= len1 && k * t0 <= len2; ++k) {
    Point2 x = apex + e1 * (k * s0), y = apex + e2 * (k * t0);
    const Int side_apex = orient(x, y, apex);
    bool ok = true;
    for (Point2 v : p.vertices()) {
      Int s = orient(x, y, v);
      if (s != 0 && (s > 0) == (side_apex > 0)) ok = false;
    }
    if (!ok) break;
    best = k;
    x_out = x;
    y_out = y;
  }
  return best;
}

}  // namespace

NestedSequence gulotta_sequence(const LatticePolygon& p, const LatticePolygon& p0,
                                const GulottaOptions& options) {
  NestedSequence seq;
  seq.polygons.push_back(p0);
  LatticePolygon cur = p0;
  Int x0 = p0[0].x, x1 = p0[0].x, y0 = p0[0].y, y1 = p0[0].y;
  for (Point2 v : p0.vertices()) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  const std::pair<CornerKind, Point2> corners[] = {{CornerKind::kNW, {x0, y1}},
                                                    {CornerKind::kNE, {x1, y1}},
                                                    {CornerKind::kSE, {x1, y0}},
                                                    {CornerKind::kSW, {x0, y0}}};
  for (auto [kind, corner] : corners) {
    if (p.is_vertex(corner)) continue;
    std::deque<Point2> queue{corner};
    while (!queue.empty()) {
      Point2 apex = queue.front();
      queue.pop_front();
      auto idx = cur.index_of(apex);
      if (idx < 0 || p.contains(apex)) continue;
      FareySlopes slopes(kind);
      Point2 x{}, y{};
      Q slope;
      Int k = 0;
      while (slopes.row() <= options.max_rows) {
        slope = slopes.next();
        if (slopes.row() > options.max_rows) break;
        k = max_dilation(cur, static_cast<std::size_t>(idx), {slope.den(), slope.num()}, p, x, y);
        if (k > 0) break;
      }
      if (k == 0)
        throw Error(ErrorCode::kCutFailure, "no Farey slope cuts the corner at " + apex.str());
      std::vector<Point2> pts;
      for (Point2 v : cur.vertices())
        if (v != apex) pts.push_back(v);
      pts.push_back(x);
      pts.push_back(y);
      LatticePolygon nxt = convex_hull(pts);
      seq.cuts.push_back({apex, chain_between(x, y), slope});
      seq.polygons.push_back(nxt);
      cur = nxt;
      for (Point2 e : {x, y})
        if (cur.is_vertex(e) && !p.contains(e)) queue.push_back(e);
    }
  }
  if (!(cur == p)) throw Error(ErrorCode::kCutFailure, "corner cutting did not reach the polygon");
  return seq;
}

NestedSequence iu_sequence(const LatticePolygon& p, const LatticePolygon& p0, IuOrder order) {
  NestedSequence seq;
  seq.polygons.push_back(p0);
  LatticePolygon cur = p0;
  while (!(cur == p)) {
    std::vector<Point2> cands;
    for (Point2 v : cur.vertices())
      if (!p.contains(v)) cands.push_back(v);
    if (cands.empty()) throw Error(ErrorCode::kStuckSequence, "every vertex lies in the polygon");
    auto better = [&](Point2 a, Point2 b) {
      if (order == IuOrder::kTopFirst) return std::pair(a.y, a.x) > std::pair(b.y, b.x);
      return std::pair(-a.x, a.y) > std::pair(-b.x, b.y);
    };
    Point2 v = cands.front();
    for (Point2 c : cands)
      if (better(c, v)) v = c;
    const auto idx = cur.index_of(v);
    const Point2 prev = cur.vertex(idx - 1), next = cur.vertex(idx + 1);
    const Point2 x = v + primitive(prev - v), y = v + primitive(next - v);
    std::vector<Point2> pts;
    for (Point2 q : lattice_points(cur))
      if (q != v) pts.push_back(q);
    LatticePolygon nxt = convex_hull(pts);
    auto bd = boundary_lattice_points(nxt);
    auto start = std::find(bd.begin(), bd.end(), x);
    if (start == bd.end()) throw Error(ErrorCode::kStuckSequence, "chain start left the boundary");
    std::vector<Point2> chain;
    for (std::size_t i = static_cast<std::size_t>(start - bd.begin());; i = (i + 1) % bd.size()) {
      chain.push_back(bd[i]);
      if (bd[i] == y) break;
      if (chain.size() > bd.size()) throw Error(ErrorCode::kStuckSequence, "chain end left the boundary");
    }
    seq.cuts.push_back({v, chain, std::nullopt});
    seq.polygons.push_back(nxt);
    cur = nxt;
  }
  return seq;
}

std::vector<Triangle> base_triangulation(const LatticePolygon& p) {
  std::vector<Triangle> out;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) out.push_back({p[0], p[i], p[i + 1]});
  return out;
}

namespace {

// Separating-axis test on closed half planes through each edge.
bool interiors_disjoint(const Triangle& a, const Triangle& b) {
  auto separated = [](const Triangle& s, const Triangle& t) {
    const Int o = orient(s[0], s[1], s[2]);
    for (int e = 0; e < 3; ++e) {
      Point2 u = s[e], w = s[(e + 1) % 3];
      bool all_out = true;
      for (Point2 x : t) {
        Int side = orient(u, w, x);
        if (side != 0 && (side > 0) == (o > 0)) all_out = false;
      }
      if (all_out) return true;
    }
    return false;
  };
  return separated(a, b) || separated(b, a);
}

}  // namespace

void check_tiling(const LatticePolygon& p, const std::vector<Triangle>& tris) {
  Int total = 0;
  for (const Triangle& t : tris) {
    Int a = normalized_area(t[0], t[1], t[2]);
    if (a == 0) throw Error(ErrorCode::kNonTriangleRegion, "degenerate triangle");
    for (Point2 v : t)
      if (!p.contains(v)) throw Error(ErrorCode::kNonTriangleRegion, "triangle leaves the polygon");
    total += a;
  }
  if (total != normalized_volume(p)) throw Error(ErrorCode::kNonTriangleRegion, "areas do not add up");
  for (std::size_t i = 0; i < tris.size(); ++i)
    for (std::size_t j = i + 1; j < tris.size(); ++j)
      if (!interiors_disjoint(tris[i], tris[j]))
        throw Error(ErrorCode::kNonTriangleRegion, "overlapping triangles");
}

std::vector<Triangle> Triangulation::stage_triangles(std::size_t i) const {
  std::vector<Triangle> out;
  for (std::size_t t = 0; t < triangles.size(); ++t)
    if (level[t] >= static_cast<int>(i)) out.push_back(triangles[t]);
  return out;
}

Triangulation assemble(const NestedSequence& seq, const std::vector<Triangle>& base) {
  const std::size_t l = seq.length();
  Triangulation tr;
  tr.stage_vertices.resize(l + 1);
  tr.cumulative_vertices.resize(l + 1);
  std::set<Point2> acc;
  for (std::size_t i = l + 1; i-- > 0;) {
    for (Point2 v : seq.polygons[i].vertices()) acc.insert(v);
    tr.stage_vertices[i].assign(acc.begin(), acc.end());
  }
  acc.clear();
  for (std::size_t i = 0; i <= l; ++i) {
    for (Point2 v : seq.polygons[i].vertices()) acc.insert(v);
    tr.cumulative_vertices[i].assign(acc.begin(), acc.end());
  }
  tr.all_vertices = tr.stage_vertices[0];
  check_tiling(seq.polygons[l], base);
  for (const Triangle& t : base) {
    tr.triangles.push_back(t);
    tr.level.push_back(static_cast<int>(l));
  }
  for (std::size_t j = 1; j <= l; ++j) {
    const CutRecord& cut = seq.cuts[j - 1];
    const auto& vj = tr.stage_vertices[j - 1];
    std::vector<Point2> targets;
    for (Point2 c : cut.chain)
      if (std::binary_search(vj.begin(), vj.end(), c)) targets.push_back(c);
    if (targets.size() < 2 || targets.front() != cut.chain.front() || targets.back() != cut.chain.back())
      throw Error(ErrorCode::kNonTriangleRegion, "chain endpoints are not stage vertices");
    for (std::size_t k = 0; k + 1 < targets.size(); ++k) {
      Triangle t{cut.removed, targets[k], targets[k + 1]};
      if (orient(t[0], t[1], t[2]) == 0) throw Error(ErrorCode::kNonTriangleRegion, "flat cone cell");
      tr.triangles.push_back(t);
      tr.level.push_back(static_cast<int>(j) - 1);
    }
  }
  check_tiling(seq.polygons[0], tr.triangles);
  return tr;
}

namespace {

// Step placing e on the edge from a to b.
Step edge_step(Point2 e, Point2 a, Point2 b) {
  const Int len = lattice_length(b - a), k = lattice_length(e - a);
  if (orient(a, b, e) != 0 || k == 0 || k >= len || dot(e - a, b - a) <= 0)
    throw Error(ErrorCode::kNotConvex, e.str() + " is not inside the edge " + a.str() + "-" + b.str());
  Q t(k, len);
  Step s{e, {{a, Q(1) - t}, {b, t}}};
  if (b < a) std::swap(s.coeffs[0], s.coeffs[1]);
  return s;
}

}  // namespace

InductionPlan induction_plan(const NestedSequence& seq, Method mode, const SignConfig& config) {
  const LatticePolygon& p0 = seq.polygons.front();
  std::vector<Point2> base;
  Int c = 0, d = 0;
  for (Point2 v : p0.vertices()) {
    c = std::max(c, v.x);
    d = std::max(d, v.y);
  }
  if (mode == Method::kGulotta) {
    if (p0.size() != 4) throw Error(ErrorCode::kNotConvex, "gulotta plan needs a rectangle");
    base = {{0, 0}, {c, 0}, {c, d}, {0, d}};
  } else {
    if (p0.size() != 3) throw Error(ErrorCode::kNotConvex, "triangle plan needs a triangle");
    base = {{0, 0}, {0, d}, {c, 0}};
  }
  for (Point2 v : base)
    if (!p0.is_vertex(v)) throw Error(ErrorCode::kNotConvex, "outer polygon is not in standard position");
  InductionPlan plan;
  plan.datum = InductionDatum(base, {});
  for (std::size_t j = 1; j <= seq.length(); ++j) {
    const CutRecord& cut = seq.cuts[j - 1];
    const LatticePolygon& prev = seq.polygons[j - 1];
    const auto idx = prev.index_of(cut.removed);
    if (idx < 0) throw Error(ErrorCode::kNotConvex, "removed vertex is not a vertex");
    const Point2 nb[2] = {prev.vertex(idx - 1), prev.vertex(idx + 1)};
    const Point2 ends[2] = {cut.chain.front(), cut.chain.back()};
    for (int side = 0; side < 2; ++side) {
      if (prev.is_vertex(ends[side])) continue;
      plan.datum.append(edge_step(ends[side], cut.removed, nb[side]));
      plan.signs.push_back(config.interval_sign);
    }
    if (mode == Method::kIu) {
      Corner corner = make_corner(cut.removed, cut.chain);
      for (Step& s : triangle_steps(corner)) {
        plan.datum.append(std::move(s));
        plan.signs.push_back(Sign::kMinus);
      }
    }
  }
  if (mode == Method::kGulotta && config.gulotta_signs) {
    if (config.gulotta_signs->size() != plan.signs.size())
      throw Error(ErrorCode::kDomainMismatch, "sign file length differs from the plan");
    plan.signs = *config.gulotta_signs;
  }
  return plan;
}

SeedCollection seed_gulotta(Int c, Int d) {
  SeedCollection s;
  s.base = {{0, 0}, {c, 0}, {c, d}, {0, d}};
  for (Int eps = 0; eps <= 1; ++eps)
    for (Int i = 0; i < c; ++i)
      for (Int j = 0; j < d; ++j)
        s.members.push_back({{s.base[0], 0}, {s.base[1], i}, {s.base[2], i + j + eps}, {s.base[3], j}});
  return s;
}

SeedCollection seed_iu(Int c, Int d) {
  SeedCollection s;
  s.base = {{0, 0}, {0, d}, {c, 0}};
  for (Int i = 0; i < c; ++i)
    for (Int j = 0; j < d; ++j) s.members.push_back({{s.base[0], i}, {s.base[1], j}, {s.base[2], 1}});
  return s;
}

std::vector<WeightVector> restrict(const std::vector<WeightVector>& s, const std::vector<Point2>& v) {
  std::vector<WeightVector> out;
  for (const WeightVector& b : s) {
    WeightVector r;
    for (Point2 p : v) {
      auto it = b.find(p);
      if (it == b.end()) throw Error(ErrorCode::kKeyMissing, "no weight at " + p.str());
      r.emplace(p, it->second);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace nccr
