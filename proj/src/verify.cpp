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

#include "nccr/verify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_set>

#include "nccr/smith.hpp"

namespace nccr {

std::string mask_string(SignMask minus, std::size_t n) {
  std::string s(n, '+');
  for (std::size_t i = 0; i < n; ++i)
    if ((minus >> i) & 1u) s[i] = '-';
  return s;
}

SignMask parse_mask(const std::string& s) {
  if (s.size() > kMaxMaskVertices) throw Error(ErrorCode::kExplosionGuard, "too many signs");
  SignMask m = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '-')
      m |= SignMask{1} << i;
    else if (s[i] != '+')
      throw Error(ErrorCode::kParse, "sign must be + or -");
  }
  return m;
}

std::vector<Int> aligned(const WeightVector& b, std::span<const Point2> points) {
  std::vector<Int> out;
  out.reserve(points.size());
  for (Point2 p : points) {
    auto it = b.find(p);
    if (it == b.end()) throw Error(ErrorCode::kKeyMissing, "no weight at " + p.str());
    out.push_back(it->second);
  }
  return out;
}

SignMask sign_mask(std::span<const Point2> points, std::span<const Int> b, const Functional3& m) {
  SignMask s = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (add(m(points[i]), b[i]) < 0) s |= SignMask{1} << i;
  return s;
}

StageComplex::StageComplex(std::vector<Point2> vertices, const std::vector<Triangle>& triangles)
    : vertices_(std::move(vertices)) {
  if (vertices_.size() > kMaxMaskVertices)
    throw Error(ErrorCode::kExplosionGuard, "complexes are limited to 64 vertices");
  std::set<std::array<int, 2>> edges;
  for (const Triangle& t : triangles) {
    std::array<int, 3> idx{};
    for (int k = 0; k < 3; ++k) {
      idx[k] = index_of(t[k]);
      if (idx[k] < 0) throw Error(ErrorCode::kKeyMissing, "triangle vertex " + t[k].str() + " is not listed");
    }
    std::sort(idx.begin(), idx.end());
    triangles_.push_back(idx);
    edges.insert({idx[0], idx[1]});
    edges.insert({idx[0], idx[2]});
    edges.insert({idx[1], idx[2]});
  }
  edges_.assign(edges.begin(), edges.end());
}

StageComplex StageComplex::from_triangulation(const Triangulation& t, std::size_t stage) {
  return StageComplex(t.stage_vertices.at(stage), t.stage_triangles(stage));
}

int StageComplex::index_of(Point2 p) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), p);
  return it == vertices_.end() ? -1 : static_cast<int>(it - vertices_.begin());
}

SignMask StageComplex::mask(const WeightVector& b, const Functional3& m) const {
  return sign_mask(vertices_, aligned(b, vertices_), m);
}

InducedSubcomplex induced(const StageComplex& c, SignMask active) {
  auto on = [&](int i) { return ((active >> i) & 1u) != 0; };
  InducedSubcomplex s;
  for (std::size_t i = 0; i < c.vertices().size(); ++i)
    if (on(static_cast<int>(i))) s.vertices.push_back(static_cast<int>(i));
  for (const auto& e : c.edges())
    if (on(e[0]) && on(e[1])) s.edges.push_back(e);
  for (const auto& t : c.triangles())
    if (on(t[0]) && on(t[1]) && on(t[2])) s.triangles.push_back(t);
  return s;
}

InducedSubcomplex v_complex(const StageComplex& c, const WeightVector& b, const Functional3& m) {
  return induced(c, c.mask(b, m));
}

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

Betti betti_from(std::size_t v, std::size_t e, std::size_t f, int components) {
  if (v == 0) return {1, 0, 0};
  const int chi = static_cast<int>(v) - static_cast<int>(e) + static_cast<int>(f);
  return {0, components - 1, components - chi};
}

}  // namespace

Betti reduced_betti(const InducedSubcomplex& c) {
  int top = 0;
  for (int v : c.vertices) top = std::max(top, v + 1);
  std::vector<int> parent(top);
  std::iota(parent.begin(), parent.end(), 0);
  int components = static_cast<int>(c.vertices.size());
  for (const auto& e : c.edges) {
    int a = find_root(parent, e[0]), b = find_root(parent, e[1]);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return betti_from(c.vertices.size(), c.edges.size(), c.triangles.size(), components);
}

bool is_empty_or_contractible(const InducedSubcomplex& c) {
  Betti b = reduced_betti(c);
  return c.empty() || (b.b0 == 0 && b.b1 == 0);
}

Betti reduced_betti(const StageComplex& c, SignMask active) {
  auto on = [&](int i) { return ((active >> i) & 1u) != 0; };
  const int n = static_cast<int>(c.vertices().size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::size_t v = 0, e = 0, f = 0;
  for (int i = 0; i < n; ++i) v += on(i);
  int components = static_cast<int>(v);
  for (const auto& ed : c.edges()) {
    if (!on(ed[0]) || !on(ed[1])) continue;
    ++e;
    int a = find_root(parent, ed[0]), b = find_root(parent, ed[1]);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  for (const auto& t : c.triangles()) f += on(t[0]) && on(t[1]) && on(t[2]);
  return betti_from(v, e, f, components);
}

bool is_empty_or_contractible(const StageComplex& c, SignMask active) {
  Betti b = reduced_betti(c, active);
  return b.bm1 == 1 || (b.b0 == 0 && b.b1 == 0);
}

namespace {

struct RatPoint {
  Int x, y, d;  // d > 0
};

RatPoint make_point(Int x, Int y, Int d) {
  if (d < 0) {
    x = -x;
    y = -y;
    d = -d;
  }
  Int g = gcd(gcd(std::abs(x), std::abs(y)), d);
  return {x / g, y / g, d / g};
}

// a . m = c.
struct Line {
  Point2 a;
  Int c;
  auto operator<=>(const Line&) const = default;
};

std::vector<Line> arrangement(std::span<const Point2> points, std::span<const Int> b) {
  std::set<Line> lines;
  for (std::size_t u = 0; u < points.size(); ++u)
    for (std::size_t v = u + 1; v < points.size(); ++v) {
      Point2 a = points[u] - points[v];
      Int c = sub(b[v], b[u]);
      Int g = gcd(gcd(std::abs(a.x), std::abs(a.y)), std::abs(c));
      a = {a.x / g, a.y / g};
      c /= g;
      if (a.x < 0 || (a.x == 0 && a.y < 0)) {
        a = -a;
        c = -c;
      }
      lines.insert({a, c});
    }
  return {lines.begin(), lines.end()};
}

std::vector<Representative> cell_representatives(const std::vector<Line>& lines) {
  std::vector<Representative> reps;
  if (lines.empty()) {
    reps.push_back({0, 0, 1, {}});
    return reps;
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const Point2 dir{-l.a.y, l.a.x};
    std::vector<RatPoint> pts;
    for (std::size_t j = 0; j < lines.size(); ++j) {
      const Line& k = lines[j];
      Int det = cross(l.a, k.a);
      if (j == i || det == 0) continue;
      pts.push_back(make_point(sub(mul(l.c, k.a.y), mul(k.c, l.a.y)),
                               sub(mul(l.a.x, k.c), mul(k.a.x, l.c)), det));
    }
    auto param = [&](const RatPoint& p) { return add(mul(dir.x, p.x), mul(dir.y, p.y)); };
    auto less = [&](const RatPoint& p, const RatPoint& q) {
      return static_cast<__int128>(param(p)) * q.d < static_cast<__int128>(param(q)) * p.d;
    };
    std::sort(pts.begin(), pts.end(), less);
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [&](const RatPoint& p, const RatPoint& q) { return !less(p, q) && !less(q, p); }),
              pts.end());
    std::vector<RatPoint> on_line;
    if (pts.empty()) {
      on_line.push_back(l.a.x != 0 ? make_point(l.c, 0, l.a.x) : make_point(0, l.c, l.a.y));
    } else {
      const RatPoint& f = pts.front();
      const RatPoint& e = pts.back();
      on_line.push_back(make_point(sub(f.x, mul(dir.x, f.d)), sub(f.y, mul(dir.y, f.d)), f.d));
      for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const RatPoint &p = pts[k], &q = pts[k + 1];
        on_line.push_back(make_point(add(mul(p.x, q.d), mul(q.x, p.d)), add(mul(p.y, q.d), mul(q.y, p.d)),
                                     mul(2, mul(p.d, q.d))));
      }
      on_line.push_back(make_point(add(e.x, mul(dir.x, e.d)), add(e.y, mul(dir.y, e.d)), e.d));
    }
    for (const RatPoint& p : on_line) {
      reps.push_back({p.x, p.y, p.d, l.a});
      reps.push_back({p.x, p.y, p.d, -l.a});
    }
  }
  return reps;
}

void sweep(std::span<const Point2> points, std::span<const Int> b, const Representative& r,
           std::unordered_set<SignMask>& out) {
  const std::size_t n = points.size();
  std::vector<std::pair<Int, Int>> key(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 p = points[i];
    key[i] = {-add(add(mul(p.x, r.x), mul(p.y, r.y)), mul(b[i], r.d)), -dot(p, r.perturb)};
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) { return key[u] < key[v]; });
  SignMask minus = n == 64 ? ~SignMask{0} : (SignMask{1} << n) - 1;
  out.insert(minus);
  for (std::size_t k = 0; k < n; ++k) {
    minus &= ~(SignMask{1} << order[k]);
    if (k + 1 == n || key[order[k + 1]] != key[order[k]]) out.insert(minus);
  }
}

}  // namespace

ChamberCover chamber_cover(std::span<const Point2> points, std::span<const Int> b) {
  if (points.size() > kMaxMaskVertices) throw Error(ErrorCode::kExplosionGuard, "too many vertices");
  ChamberCover cover;
  cover.representatives = cell_representatives(arrangement(points, b));
  std::unordered_set<SignMask> seen;
  for (const Representative& r : cover.representatives) sweep(points, b, r, seen);
  cover.patterns.assign(seen.begin(), seen.end());
  std::sort(cover.patterns.begin(), cover.patterns.end());
  return cover;
}

ChamberCover chamber_cover(std::span<const Point2> points, const WeightVector& b) {
  auto v = aligned(b, points);
  return chamber_cover(points, v);
}

std::vector<std::pair<SignMask, Functional3>> box_patterns(std::span<const Point2> points,
                                                           std::span<const Int> b, Int radius) {
  std::map<SignMask, Functional3> seen;
  for (Int m1 = -radius; m1 <= radius; ++m1)
    for (Int m2 = -radius; m2 <= radius; ++m2)
      for (Int m3 = -radius; m3 <= radius; ++m3) {
        Functional3 m{m1, m2, m3};
        seen.emplace(sign_mask(points, b, m), m);
      }
  return {seen.begin(), seen.end()};
}

Realization realize(std::span<const Point2> points, std::span<const Int> b, SignMask minus, Int max_points) {
  std::vector<std::size_t> plus, neg;
  for (std::size_t i = 0; i < points.size(); ++i) ((minus >> i) & 1u ? neg : plus).push_back(i);

  auto finish = [&](Point2 mp) {
    Int m3;
    if (plus.empty()) {
      m3 = std::numeric_limits<Int>::max();
      for (std::size_t w : neg) m3 = std::min(m3, sub(sub(-1, b[w]), dot(mp, points[w])));
    } else {
      m3 = std::numeric_limits<Int>::min();
      for (std::size_t u : plus) m3 = std::max(m3, sub(-b[u], dot(mp, points[u])));
    }
    Functional3 m{mp.x, mp.y, m3};
    if (sign_mask(points, b, m) != minus) throw Error(ErrorCode::kDomainMismatch, "realization check failed");
    return Realization{Realizability::kRealizable, m};
  };
  if (plus.empty() || neg.empty()) return finish({0, 0});

  std::map<Point2, Int> tight;
  for (std::size_t u : plus)
    for (std::size_t w : neg) {
      Point2 a = points[w] - points[u];
      Int c = sub(sub(b[u], b[w]), 1);
      Int g = lattice_length(a);
      a = {a.x / g, a.y / g};
      c = floor_div(c, g);
      auto [it, fresh] = tight.emplace(a, c);
      if (!fresh) it->second = std::min(it->second, c);
    }
  std::vector<Line> rows;
  for (auto [a, c] : tight) rows.push_back({a, c});
  auto feasible = [&](Point2 m) {
    for (const Line& r : rows)
      if (dot(r.a, m) > r.c) return false;
    return true;
  };

  const Point2 a0 = rows.front().a;
  bool rank_one = std::all_of(rows.begin(), rows.end(), [&](const Line& r) { return cross(r.a, a0) == 0; });
  if (rank_one) {
    Int lo = std::numeric_limits<Int>::min(), hi = std::numeric_limits<Int>::max();
    for (const Line& r : rows) {
      if (r.a == a0)
        hi = std::min(hi, r.c);
      else
        lo = std::max(lo, -r.c);
    }
    if (lo > hi) return {Realizability::kInfeasible, std::nullopt};
    Int t = std::clamp<Int>(0, lo, hi);
    Int x = 0, y = 0;
    ext_gcd(a0.x, a0.y, x, y);
    return finish({mul(t, x), mul(t, y)});
  }

  std::vector<RatPoint> verts;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const Line &l = rows[i], &k = rows[j];
      Int det = cross(l.a, k.a);
      if (det == 0) continue;
      RatPoint p = make_point(sub(mul(l.c, k.a.y), mul(k.c, l.a.y)), sub(mul(l.a.x, k.c), mul(k.a.x, l.c)), det);
      bool inside = true;
      for (const Line& r : rows)
        if (add(mul(r.a.x, p.x), mul(r.a.y, p.y)) > mul(r.c, p.d)) inside = false;
      if (inside) verts.push_back(p);
    }
  if (verts.empty()) return {Realizability::kInfeasible, std::nullopt};
  std::set<Point2> rays;
  for (const Line& l : rows)
    for (Point2 r : {Point2{-l.a.y, l.a.x}, Point2{l.a.y, -l.a.x}})
      if (std::all_of(rows.begin(), rows.end(), [&](const Line& k) { return dot(k.a, r) <= 0; }))
        rays.insert(r);
  Int x0 = std::numeric_limits<Int>::max(), x1 = std::numeric_limits<Int>::min();
  Int y0 = x0, y1 = x1;
  for (const RatPoint& p : verts) {
    x0 = std::min(x0, floor_div(p.x, p.d));
    x1 = std::max(x1, ceil_div(p.x, p.d));
    y0 = std::min(y0, floor_div(p.y, p.d));
    y1 = std::max(y1, ceil_div(p.y, p.d));
  }
  for (Point2 r : rays) {
    x0 += std::min<Int>(0, r.x);
    x1 += std::max<Int>(0, r.x);
    y0 += std::min<Int>(0, r.y);
    y1 += std::max<Int>(0, r.y);
  }
  if (static_cast<__int128>(x1 - x0 + 1) * (y1 - y0 + 1) > max_points)
    return {Realizability::kUnknown, std::nullopt};
  for (Int x = x0; x <= x1; ++x)
    for (Int y = y0; y <= y1; ++y)
      if (feasible({x, y})) return finish({x, y});
  return {Realizability::kInfeasible, std::nullopt};
}

std::string to_string(VerifyMode m) { return m == VerifyMode::kChamber ? "chamber" : "box"; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kCertified:
      return "certified";
    case Verdict::kRefuted:
      return "refuted";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "";
}

VerifyMode parse_verify_mode(const std::string& s) {
  if (s == "chamber") return VerifyMode::kChamber;
  if (s == "box") return VerifyMode::kBox;
  throw Error(ErrorCode::kParse, "mode must be chamber or box");
}

namespace {

struct PatternFailure {
  SignMask mask;
  std::optional<Functional3> witness;
  Betti betti;
};

struct DiffResult {
  std::size_t vectors = 0;
  std::vector<PatternFailure> failures;
};

DiffResult check_difference(const StageComplex& c, const std::vector<Int>& diff, const VerifyOptions& options) {
  DiffResult r;
  const auto& pts = c.vertices();
  if (options.mode == VerifyMode::kChamber) {
    auto cover = chamber_cover(pts, diff);
    r.vectors = cover.patterns.size();
    for (SignMask s : cover.patterns) {
      if (is_empty_or_contractible(c, s)) continue;
      Realization z = realize(pts, diff, s);
      if (z.status == Realizability::kInfeasible) continue;
      r.failures.push_back({s, z.witness, reduced_betti(c, s)});
    }
  } else {
    auto found = box_patterns(pts, diff, options.box_radius);
    r.vectors = found.size();
    for (auto [s, m] : found)
      if (!is_empty_or_contractible(c, s)) r.failures.push_back({s, m, reduced_betti(c, s)});
  }
  return r;
}

// Runs f(i) for i in [0, n) on up to `jobs` threads.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& f) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

VerificationReport ext_vanishing(const StageComplex& c, const std::vector<WeightVector>& s,
                                 const VerifyOptions& options) {
  std::vector<std::vector<Int>> b;
  for (const WeightVector& w : s) b.push_back(aligned(w, c.vertices()));
  std::map<std::vector<Int>, std::size_t> index;
  std::vector<std::vector<Int>> diffs;
  std::vector<std::size_t> pair_diff;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::vector<Int> d(b[i].size());
      for (std::size_t k = 0; k < d.size(); ++k) d[k] = sub(b[j][k], b[i][k]);
      auto [it, fresh] = index.emplace(d, diffs.size());
      if (fresh) diffs.push_back(std::move(d));
      pair_diff.push_back(it->second);
    }
  std::vector<DiffResult> results(diffs.size());
  parallel_for(diffs.size(), options.jobs,
               [&](std::size_t k) { results[k] = check_difference(c, diffs[k], options); });

  VerificationReport report;
  report.mode = options.mode;
  report.pairs = pair_diff.size();
  bool refuted = false;
  for (std::size_t p = 0; p < pair_diff.size(); ++p) {
    const DiffResult& r = results[pair_diff[p]];
    report.vectors += r.vectors;
    const std::size_t i = p / b.size(), j = p % b.size();
    for (const PatternFailure& f : r.failures) {
      report.failures.push_back(
          {i, j, s[i], s[j], mask_string(f.mask, c.vertices().size()), f.witness, f.betti});
      refuted = refuted || f.witness.has_value();
    }
  }
  report.verdict = refuted                     ? Verdict::kRefuted
                   : report.failures.empty() ? Verdict::kCertified
                                               : Verdict::kInconclusive;
  return report;
}

namespace {

// First realized pattern in the cover that `bad` rejects.
PatternCheck scan_patterns(std::span<const Point2> pts, std::span<const Int> b,
                           const std::function<bool(SignMask)>& bad) {
  for (SignMask s : chamber_cover(pts, b).patterns) {
    if (!bad(s)) continue;
    Realization z = realize(pts, b, s);
    if (z.status == Realizability::kRealizable) return {false, z.witness, std::nullopt};
    if (z.status == Realizability::kUnknown)
      throw Error(ErrorCode::kExplosionGuard, "realizability search box too large");
  }
  return {};
}

std::vector<Int> difference(const WeightVector& from, const WeightVector& to, std::span<const Point2> pts) {
  auto a = aligned(from, pts), b = aligned(to, pts);
  for (std::size_t k = 0; k < a.size(); ++k) b[k] = sub(b[k], a[k]);
  return b;
}

int cyclic_changes(SignMask s, std::size_t n) {
  int changes = 0;
  for (std::size_t i = 0; i < n; ++i) changes += ((s >> i) & 1u) != ((s >> ((i + 1) % n)) & 1u);
  return changes;
}

}  // namespace

PatternCheck rectangle_condition(const SeedCollection& s0) {
  if (s0.base.size() != 4) throw Error(ErrorCode::kBadArguments, "rectangle condition needs four corners");
  const SignMask alt1 = parse_mask("+-+-"), alt2 = parse_mask("-+-+");
  for (std::size_t i = 0; i < s0.members.size(); ++i)
    for (std::size_t j = 0; j < s0.members.size(); ++j) {
      if (i == j) continue;
      auto d = difference(s0.members[j], s0.members[i], s0.base);
      PatternCheck r = scan_patterns(s0.base, d, [&](SignMask s) { return s == alt1 || s == alt2; });
      if (!r.ok) {
        r.pair = std::pair(i, j);
        return r;
      }
    }
  return {};
}

PatternCheck cm_check(const LatticePolygon& p, const WeightVector& b) {
  auto v = aligned(b, p.vertices());
  const std::size_t n = p.size();
  return scan_patterns(p.vertices(), v, [&](SignMask s) { return cyclic_changes(s, n) > 2; });
}

PatternCheck endo_cm_check(const LatticePolygon& p, const std::vector<WeightVector>& s) {
  std::set<std::vector<Int>> done;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      auto d = difference(s[i], s[j], p.vertices());
      if (!done.insert(d).second) continue;
      PatternCheck r = scan_patterns(p.vertices(), d, [&](SignMask m) { return cyclic_changes(m, n) > 2; });
      if (!r.ok) {
        r.pair = std::pair(i, j);
        return r;
      }
    }
  return {};
}

std::size_t count_classes(const LatticePolygon& p, const std::vector<WeightVector>& s) {
  auto g = group_weights(p);
  std::set<CharacterGroup::Element> classes;
  for (const WeightVector& b : restrict(s, p.vertices())) classes.insert(class_character(b, g));
  return classes.size();
}

NCCRCertificate nccr_certificate(const LatticePolygon& p, const std::vector<WeightVector>& s) {
  NCCRCertificate c;
  c.cm_ok = endo_cm_check(p, s).ok;
  c.class_count = count_classes(p, s);
  c.volume = normalized_volume(p);
  c.verdict = c.cm_ok && static_cast<Int>(c.class_count) == c.volume;
  return c;
}

std::set<Functional3> module_points(const WeightVector& b, Int radius) {
  std::set<Functional3> out;
  for (Int m1 = -radius; m1 <= radius; ++m1)
    for (Int m2 = -radius; m2 <= radius; ++m2)
      for (Int m3 = -radius; m3 <= radius; ++m3) {
        Functional3 m{m1, m2, m3};
        bool in = true;
        for (auto [v, w] : b)
          if (add(m(v), w) < 0) {
            in = false;
            break;
          }
        if (in) out.insert(m);
      }
  return out;
}

namespace {

std::vector<Point2> extreme_points(const WeightVector& b) {
  std::vector<Point2> pts;
  for (const auto& kv : b) pts.push_back(kv.first);
  try {
    return convex_hull(pts).vertices();
  } catch (const Error&) {
    if (pts.size() <= 1) return pts;
    return {pts.front(), pts.back()};
  }
}

}  // namespace

bool modules_equal(const WeightVector& b1, const WeightVector& b2, Int radius) {
  return extreme_points(b1) == extreme_points(b2) && module_points(b1, radius) == module_points(b2, radius);
}

bool constant_sign_path_check(const StageComplex& c, const InductionDatum& datum, const LatticePolygon& p,
                              std::size_t max_branches) {
  const auto& pv = p.vertices();
  const std::size_t k = pv.size(), slots = datum.slots(), nb = datum.base().size();
  std::vector<std::size_t> base_pos(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    auto idx = p.index_of(datum.base()[i]);
    if (idx < 0) throw Error(ErrorCode::kDomainMismatch, "datum base is not the polygon's vertex set");
    base_pos[i] = static_cast<std::size_t>(idx);
  }
  // Latest slot per complex vertex.
  std::vector<std::size_t> slot_of(c.vertices().size());
  for (std::size_t v = 0; v < c.vertices().size(); ++v) {
    std::optional<std::size_t> last;
    for (std::size_t s = 0; s < slots; ++s)
      if (datum.slot_vertex(s) == c.vertices()[v]) last = s;
    if (!last) throw Error(ErrorCode::kKeyMissing, c.vertices()[v].str() + " is not induced");
    slot_of[v] = *last;
  }
  std::vector<std::vector<int>> adj(c.vertices().size());
  for (const auto& e : c.edges()) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  std::vector<bool> boundary(c.vertices().size());
  for (std::size_t v = 0; v < boundary.size(); ++v) boundary[v] = p.on_boundary(c.vertices()[v]);

  auto paths_ok = [&](const std::vector<char>& sign) {
    std::vector<char> sv(c.vertices().size());
    for (std::size_t v = 0; v < sv.size(); ++v) sv[v] = sign[slot_of[v]];
    std::vector<bool> reached(sv.size());
    std::vector<int> stack;
    for (std::size_t v = 0; v < sv.size(); ++v)
      if (boundary[v]) {
        reached[v] = true;
        stack.push_back(static_cast<int>(v));
      }
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (!reached[w] && sv[w] == sv[v]) {
          reached[w] = true;
          stack.push_back(w);
        }
    }
    return std::all_of(reached.begin(), reached.end(), [](bool r) { return r; });
  };

  std::size_t branches = 0;
  std::vector<char> sign(slots);
  std::function<bool(std::size_t)> descend = [&](std::size_t s) -> bool {
    if (s == slots) {
      if (++branches > max_branches) throw Error(ErrorCode::kExplosionGuard, "too many sign assignments");
      return paths_ok(sign);
    }
    const Step& st = datum.steps()[s - nb];
    bool has_plus = false, has_minus = false;
    for (const Term& t : st.coeffs) {
      if (t.coeff == Q(0)) continue;
      (sign[static_cast<std::size_t>(t.slot)] == '+' ? has_plus : has_minus) = true;
    }
    for (char option : {'+', '-'}) {
      if ((option == '+' && !has_plus) || (option == '-' && !has_minus)) continue;
      sign[s] = option;
      if (!descend(s + 1)) return false;
    }
    return true;
  };

  for (std::size_t start = 0; start < k; ++start)
    for (std::size_t len = 1; len < k; ++len) {
      for (std::size_t i = 0; i < nb; ++i) sign[i] = (base_pos[i] + k - start) % k < len ? '+' : '-';
      if (!descend(nb)) return false;
    }
  return true;
}

std::string to_string(Move m) {
  switch (m) {
    case Move::kSame:
      return "same";
    case Move::kPoint:
      return "point";
    case Move::kInterval:
      return "interval";
    case Move::kTriangle:
      return "triangle";
    case Move::kOther:
      return "other";
  }
  return "";
}

std::vector<Move> stage_moves(const NestedSequence& seq, const Triangulation& t, SignMask minus_on_v0) {
  const auto& v0 = t.all_vertices;
  auto minus = [&](Point2 p) {
    auto it = std::lower_bound(v0.begin(), v0.end(), p);
    if (it == v0.end() || *it != p) throw Error(ErrorCode::kKeyMissing, p.str() + " is not in V_0");
    return ((minus_on_v0 >> (it - v0.begin())) & 1u) != 0;
  };
  std::vector<Move> moves;
  for (std::size_t j = seq.length(); j >= 1; --j) {
    const CutRecord& cut = seq.cuts[j - 1];
    const auto& vj = t.stage_vertices[j - 1];
    bool active_after = std::any_of(t.stage_vertices[j].begin(), t.stage_vertices[j].end(), minus);
    if (!minus(cut.removed)) {
      moves.push_back(Move::kSame);
      continue;
    }
    std::vector<bool> on;
    for (Point2 c : cut.chain)
      if (std::binary_search(vj.begin(), vj.end(), c)) on.push_back(minus(c));
    int runs = 0, count = 0;
    for (std::size_t k = 0; k < on.size(); ++k) {
      count += on[k];
      if (on[k] && (k == 0 || !on[k - 1])) ++runs;
    }
    if (count == 0)
      moves.push_back(active_after ? Move::kOther : Move::kPoint);
    else if (runs > 1)
      moves.push_back(Move::kOther);
    else
      moves.push_back(count == 1 ? Move::kInterval : Move::kTriangle);
  }
  return moves;
}

namespace {

// Value at x = (1 - t) u + t w with the chosen rounding.
Int interval_value(Point2 x, Point2 u, Point2 w, Int bu, Int bw, Sign s) {
  Q t(lattice_length(x - u), lattice_length(w - u));
  Q v = (Q(1) - t) * Q(bu) + t * Q(bw);
  return s == Sign::kMinus ? v.floor() : v.ceil();
}

bool on_half_open(Point2 x, Point2 from, Point2 to) {
  return x != to && orient(from, to, x) == 0 && dot(x - from, to - from) >= 0 && dot(x - to, from - to) > 0;
}

}  // namespace

std::optional<bool> projection_preserves_cm(const LatticePolygon& p, const WeightVector& b, const CornerCut& cut) {
  if (cut.vertex >= p.size()) throw Error(ErrorCode::kBadArguments, "cut vertex out of range");
  const auto k = static_cast<std::ptrdiff_t>(cut.vertex);
  const Point2 nk = p[cut.vertex], prev = p.vertex(k - 1), next = p.vertex(k + 1);
  if (!on_half_open(cut.a, prev, nk) || !on_half_open(cut.c, next, nk))
    throw Error(ErrorCode::kBadArguments, "cut points must lie on the edges at the vertex");
  if (!cm_check(p, b).ok) return std::nullopt;
  std::vector<Point2> pts;
  for (Point2 v : p.vertices())
    if (v != nk) pts.push_back(v);
  pts.push_back(cut.a);
  pts.push_back(cut.c);
  LatticePolygon q;
  try {
    q = convex_hull(pts);
  } catch (const Error&) {
    return std::nullopt;
  }
  for (Sign sa : {Sign::kMinus, Sign::kPlus})
    for (Sign sc : {Sign::kMinus, Sign::kPlus}) {
      WeightVector w;
      for (Point2 v : q.vertices()) {
        if (v == cut.a && !p.is_vertex(v))
          w[v] = interval_value(v, prev, nk, b.at(prev), b.at(nk), sa);
        else if (v == cut.c && !p.is_vertex(v))
          w[v] = interval_value(v, nk, next, b.at(nk), b.at(next), sc);
        else
          w[v] = b.at(v);
      }
      if (!cm_check(q, w).ok) return false;
    }
  return true;
}

}  // namespace nccr
