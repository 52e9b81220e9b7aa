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

#include <doctest.h>

#include <random>

#include "nccr/fixtures.hpp"
#include "nccr/smith.hpp"
#include "nccr/verify.hpp"
#include "support.hpp"

using namespace nccr;

namespace {

WeightVector on(const LatticePolygon& p, std::vector<Int> values) {
  WeightVector b;
  for (std::size_t i = 0; i < p.size(); ++i) b[p[i]] = values[i];
  return b;
}

StageComplex complex_of(const Fixture& f) { return StageComplex(f.vertices, f.triangles); }

Int snf_rank(const MatrixX<Int>& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  auto s = smith_normal_form<Int>(a);
  Int r = 0;
  for (Eigen::Index i = 0; i < std::min(a.rows(), a.cols()); ++i) r += s.d(i, i) != 0;
  return r;
}

// Reduced Betti numbers from boundary-matrix ranks; also returns b2.
std::array<int, 4> homology_oracle(const InducedSubcomplex& c) {
  const auto nv = static_cast<Eigen::Index>(c.vertices.size());
  const auto ne = static_cast<Eigen::Index>(c.edges.size());
  const auto nf = static_cast<Eigen::Index>(c.triangles.size());
  if (nv == 0) return {1, 0, 0, 0};
  auto vpos = [&](int v) {
    return static_cast<Eigen::Index>(std::find(c.vertices.begin(), c.vertices.end(), v) - c.vertices.begin());
  };
  auto epos = [&](int a, int b) {
    std::array<int, 2> e{std::min(a, b), std::max(a, b)};
    return static_cast<Eigen::Index>(std::find(c.edges.begin(), c.edges.end(), e) - c.edges.begin());
  };
  MatrixX<Int> d1 = MatrixX<Int>::Zero(nv, ne), d2 = MatrixX<Int>::Zero(ne, nf);
  for (Eigen::Index j = 0; j < ne; ++j) {
    d1(vpos(c.edges[j][0]), j) = -1;
    d1(vpos(c.edges[j][1]), j) = 1;
  }
  for (Eigen::Index j = 0; j < nf; ++j) {
    auto t = c.triangles[j];
    d2(epos(t[1], t[2]), j) += 1;
    d2(epos(t[0], t[2]), j) -= 1;
    d2(epos(t[0], t[1]), j) += 1;
  }
  const Int r1 = snf_rank(d1), r2 = snf_rank(d2);
  return {0, static_cast<int>(nv - r1 - 1), static_cast<int>(ne - r1 - r2), static_cast<int>(nf - r2)};
}

}  // namespace

TEST_CASE("v_complex examples") {
  auto sq = unit_square();
  auto f = conifold_fixture();
  auto c = complex_of(f);
  auto zero = on(sq, {0, 0, 0, 0});
  CHECK(v_complex(c, zero, {0, 0, 0}).empty());
  auto all = v_complex(c, zero, {0, 0, -1});
  CHECK(all.vertices.size() == 4);
  CHECK(all.triangles.size() == 2);
  // The fan diagonal joins (0,0) and (1,1); activate the other two corners.
  auto split = v_complex(c, on(sq, {0, -1, 0, -1}), {0, 0, 0});
  CHECK(split.vertices.size() == 2);
  CHECK(split.edges.empty());
  CHECK(reduced_betti(split) == Betti{0, 1, 0});
  CHECK_FALSE(is_empty_or_contractible(split));
}

TEST_CASE("reduced Betti numbers of small complexes") {
  InducedSubcomplex empty;
  CHECK(reduced_betti(empty) == Betti{1, 0, 0});
  CHECK(is_empty_or_contractible(empty));
  InducedSubcomplex point{{0}, {}, {}};
  CHECK(reduced_betti(point) == Betti{0, 0, 0});
  InducedSubcomplex cycle{{0, 1, 2, 3}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {}};
  CHECK(reduced_betti(cycle) == Betti{0, 0, 1});
  CHECK_FALSE(is_empty_or_contractible(cycle));
  InducedSubcomplex pendant{{0, 1, 2, 3}, {{0, 1}, {0, 2}, {1, 2}, {2, 3}}, {{0, 1, 2}}};
  CHECK(reduced_betti(pendant) == Betti{0, 0, 0});
  CHECK(is_empty_or_contractible(pendant));
}

TEST_CASE("Betti numbers agree with boundary ranks") {
  std::mt19937 rng(5);
  std::vector<StageComplex> complexes;
  for (const Fixture& f : builtin_fixtures()) complexes.push_back(complex_of(f));
  {
    auto e = embed_triangle(pentagon_polygon());
    auto s = iu_sequence(e.polygon, e.outer);
    auto t = assemble(s, base_triangulation(e.polygon));
    complexes.push_back(StageComplex::from_triangulation(t, 0));
  }
  for (int it = 0; it < 1000; ++it) {
    const StageComplex& c = complexes[static_cast<std::size_t>(it) % complexes.size()];
    SignMask mask = rng() & ((SignMask{1} << c.vertices().size()) - 1);
    auto sub = induced(c, mask);
    auto h = homology_oracle(sub);
    Betti b = reduced_betti(sub);
    CHECK(b == Betti{h[0], h[1], h[2]});
    CHECK(h[3] == 0);
    CHECK(reduced_betti(c, mask) == b);
    CHECK(is_empty_or_contractible(c, mask) == (b == Betti{1, 0, 0} || b == Betti{0, 0, 0}));
  }
}

TEST_CASE("chamber cover examples") {
  std::vector<Point2> one{{3, 4}};
  std::vector<Int> b1{2};
  CHECK(chamber_cover(one, b1).patterns == std::vector<SignMask>{0, 1});

  std::vector<Point2> line{{0, 0}, {1, 0}, {2, 0}};
  std::vector<Int> b0{0, 0, 0};
  for (SignMask s : chamber_cover(line, b0).patterns) {
    int changes = 0;
    for (int i = 0; i + 1 < 3; ++i) changes += ((s >> i) & 1u) != ((s >> (i + 1)) & 1u);
    CHECK(changes <= 1);
  }

  auto sq = unit_square();
  std::vector<Int> z(4, 0);
  auto cover = chamber_cover(sq.vertices(), z);
  for (const char* s : {"++++", "----", "++--", "-++-", "--++", "+--+"})
    CHECK(std::binary_search(cover.patterns.begin(), cover.patterns.end(), parse_mask(s)));
  for (auto [s, m] : box_patterns(sq.vertices(), z, 5))
    CHECK(std::binary_search(cover.patterns.begin(), cover.patterns.end(), s));
}

TEST_CASE("chamber cover contains every box pattern") {
  std::mt19937 rng(17);
  std::vector<std::vector<Point2>> sets;
  for (const Fixture& f : builtin_fixtures()) sets.push_back(f.vertices);
  for (const LatticePolygon& p : random_polygons(8)) sets.push_back(p.vertices());
  std::uniform_int_distribution<Int> u(-4, 4);
  for (const auto& pts : sets)
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<Int> b;
      for (std::size_t i = 0; i < pts.size(); ++i) b.push_back(rep == 0 ? 0 : u(rng));
      auto cover = chamber_cover(pts, b);
      for (auto [s, m] : box_patterns(pts, b, 8)) {
        CHECK(std::binary_search(cover.patterns.begin(), cover.patterns.end(), s));
        CHECK(realize(pts, b, s).status == Realizability::kRealizable);
      }
    }
}

TEST_CASE("exact realizability matches a wide box") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<Int> u(-3, 3);
  for (int it = 0; it < 40; ++it) {
    auto p = testing::random_polygon(rng, 3, 5);
    std::vector<Int> b;
    for (std::size_t i = 0; i < p.size(); ++i) b.push_back(u(rng));
    auto box = box_patterns(p.vertices(), b, 14);
    for (SignMask s : chamber_cover(p.vertices(), b).patterns) {
      auto r = realize(p.vertices(), b, s);
      REQUIRE(r.status != Realizability::kUnknown);
      bool in_box = std::any_of(box.begin(), box.end(), [&](const auto& e) { return e.first == s; });
      if (in_box) CHECK(r.status == Realizability::kRealizable);
      if (r.witness) CHECK(sign_mask(p.vertices(), b, *r.witness) == s);
    }
  }
}

TEST_CASE("ext vanishing on the conifold and a sabotaged set") {
  auto f = conifold_fixture();
  auto c = complex_of(f);
  auto sq = f.polygon;
  std::vector<WeightVector> good{on(sq, {0, 0, 0, 0}), on(sq, {0, 0, 1, 0})};
  CHECK(ext_vanishing(c, good).verdict == Verdict::kCertified);
  CHECK(ext_vanishing(c, good, {VerifyMode::kBox, 8, 1}).verdict == Verdict::kCertified);
  std::vector<WeightVector> bad{on(sq, {0, 0, 0, 0}), on(sq, {0, 1, 0, 1})};
  for (VerifyMode mode : {VerifyMode::kChamber, VerifyMode::kBox}) {
    auto r = ext_vanishing(c, bad, {mode, 8, 2});
    CHECK(r.verdict == Verdict::kRefuted);
    REQUIRE_FALSE(r.failures.empty());
    for (const Failure& fl : r.failures) {
      REQUIRE(fl.witness);
      auto d = fl.bprime - fl.b;
      CHECK(mask_string(c.mask(d, *fl.witness), 4) == fl.signs);
      CHECK(fl.betti.b0 == 1);
    }
  }
  auto d = on(sq, {0, 1, 0, 1});
  CHECK(mask_string(c.mask(d, {0, 0, -1}), 4) == "-+-+");
}

TEST_CASE("rectangle condition") {
  CHECK(rectangle_condition(seed_gulotta(1, 1)).ok);
  CHECK(rectangle_condition(seed_gulotta(4, 3)).ok);
  SeedCollection s{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {}};
  s.members = {{{{0, 0}, 0}, {{1, 0}, 0}, {{1, 1}, 0}, {{0, 1}, 0}},
               {{{0, 0}, 0}, {{1, 0}, 1}, {{1, 1}, 0}, {{0, 1}, 1}}};
  auto r = rectangle_condition(s);
  CHECK_FALSE(r.ok);
  REQUIRE(r.witness);
}

TEST_CASE("CM checks") {
  auto sq = unit_square();
  CHECK(cm_check(sq, on(sq, {0, 0, 0, 0})).ok);
  CHECK(cm_check(sq, on(sq, {0, 0, 1, 0})).ok);
  auto bad = cm_check(sq, on(sq, {0, 1, 0, 1}));
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.witness);
  CHECK(mask_string(sign_mask(sq.vertices(), std::vector<Int>{0, 1, 0, 1}, *bad.witness), 4) == "-+-+");
  CHECK(endo_cm_check(sq, {on(sq, {0, 0, 0, 0})}).ok);
  CHECK(endo_cm_check(sq, {on(sq, {0, 0, 0, 0}), on(sq, {0, 0, 1, 0})}).ok);
}

TEST_CASE("class counting and certificates") {
  auto sq = unit_square();
  auto shift = principal({1, 1, 1}, sq.vertices());
  CHECK(count_classes(sq, {on(sq, {0, 0, 0, 0}), shift}) == 1);
  std::vector<WeightVector> conifold{on(sq, {0, 0, 0, 0}), on(sq, {0, 0, 1, 0})};
  CHECK(count_classes(sq, conifold) == 2);
  auto cert = nccr_certificate(sq, conifold);
  CHECK(cert.verdict);
  CHECK(cert.class_count == 2);
  CHECK(cert.volume == 2);
  auto half = nccr_certificate(sq, {conifold[0]});
  CHECK_FALSE(half.verdict);
}

TEST_CASE("module points") {
  auto tri = unit_triangle();
  auto zero = on(tri, {0, 0, 0});
  auto pts = module_points(zero, 2);
  std::size_t expect = 0;
  for (Int a = -2; a <= 2; ++a)
    for (Int b = -2; b <= 2; ++b)
      for (Int c = -2; c <= 2; ++c)
        if (c >= 0 && a + c >= 0 && b + c >= 0) {
          ++expect;
          CHECK(pts.count({a, b, c}) == 1);
        }
  CHECK(pts.size() == expect);
  auto lower = zero;
  lower[{1, 0}] = -1;
  auto sub = module_points(lower, 2);
  CHECK(sub.size() < pts.size());
  for (const Functional3& m : sub) CHECK(pts.count(m) == 1);
  CHECK(module_points(zero, 0) == std::set<Functional3>{{0, 0, 0}});
  CHECK(module_points(lower, 0).empty());
}

TEST_CASE("modules of induced weights are unchanged") {
  auto e = embed_rectangle(pentagon_polygon());
  auto s = gulotta_sequence(e.polygon, e.outer);
  auto plan = induction_plan(s, Method::kGulotta);
  auto seeds = seed_gulotta(e.c, e.d);
  for (std::size_t k : {0u, 7u, 13u, 23u}) {
    const WeightVector& b = seeds.members[k];
    auto full = induce(b, plan.datum, plan.signs);
    CHECK(modules_equal(b, full, 6));
  }
  const WeightVector& b = seeds.members[5];
  auto shifted = b + principal({1, 0, 1}, seeds.base);
  CHECK_FALSE(modules_equal(b, shifted, 6));
  auto full = induce(b, plan.datum, plan.signs);
  full[{1, 3}] -= 1;
  CHECK_FALSE(modules_equal(b, full, 6));
}

TEST_CASE("constant sign paths") {
  for (const Fixture& f : {hexagon_fixture(), nonregular_fixture(), square_center_fixture()})
    CHECK(constant_sign_path_check(complex_of(f), *f.datum, f.polygon));
  auto f = nonregular_fixture();
  CHECK_THROWS_AS(constant_sign_path_check(complex_of(f), *f.datum, f.polygon, 3), Error);
  Int area = 0;
  for (const Triangle& t : f.triangles) {
    CHECK(normalized_area(t[0], t[1], t[2]) == 1);
    area += 1;
  }
  CHECK(area == normalized_volume(f.polygon));
  CHECK_NOTHROW(check_tiling(f.polygon, f.triangles));
}

TEST_CASE("consecutive V-complexes differ by a single move") {
  auto e = embed_rectangle(pentagon_polygon());
  auto s = gulotta_sequence(e.polygon, e.outer);
  auto t = assemble(s, base_triangulation(e.polygon));
  auto plan = induction_plan(s, Method::kGulotta);
  auto seeds = seed_gulotta(e.c, e.d);
  std::vector<std::vector<Int>> induced_vals;
  for (const WeightVector& b : seeds.members)
    induced_vals.push_back(aligned(induce(b, plan.datum, plan.signs), t.all_vertices));
  std::size_t checked = 0;
  for (std::size_t i = 0; i < induced_vals.size(); i += 3)
    for (std::size_t j = 0; j < induced_vals.size(); j += 5) {
      std::vector<Int> d(induced_vals[i].size());
      for (std::size_t k = 0; k < d.size(); ++k) d[k] = induced_vals[j][k] - induced_vals[i][k];
      for (SignMask m : chamber_cover(t.all_vertices, d).patterns) {
        auto moves = stage_moves(s, t, m);
        CHECK(moves.size() == s.length());
        if (std::find(moves.begin(), moves.end(), Move::kOther) != moves.end())
          CHECK(realize(t.all_vertices, d, m).status == Realizability::kInfeasible);
        ++checked;
      }
    }
  CHECK(checked > 1000);
}

TEST_CASE("projection keeps CM") {
  auto sq = unit_square();
  CHECK_FALSE(projection_preserves_cm(sq, on(sq, {0, 1, 0, 1}), {2, {1, 0}, {0, 1}}).has_value());
  auto p = pentagon_polygon();
  auto zero = on(p, {0, 0, 0, 0, 0});
  CHECK(projection_preserves_cm(p, zero, {1, {2, 0}, {4, 1}}).value());
  CHECK_THROWS_AS(projection_preserves_cm(p, zero, {1, {2, 1}, {4, 1}}), Error);
  std::mt19937 rng(31);
  std::uniform_int_distribution<Int> u(-2, 2);
  int trials = 0;
  for (int it = 0; it < 400 && trials < 60; ++it) {
    auto q = testing::random_polygon(rng, 4, 6);
    WeightVector b;
    for (Point2 v : q.vertices()) b[v] = u(rng);
    const std::size_t k = rng() % q.size();
    const auto ks = static_cast<std::ptrdiff_t>(k);
    auto a_pts = segment_lattice_points(q.vertex(ks - 1), q[k]);
    auto c_pts = segment_lattice_points(q.vertex(ks + 1), q[k]);
    a_pts.push_back(q.vertex(ks - 1));
    c_pts.push_back(q.vertex(ks + 1));
    CornerCut cut{k, a_pts[rng() % a_pts.size()], c_pts[rng() % c_pts.size()]};
    auto r = projection_preserves_cm(q, b, cut);
    if (!r) continue;
    CHECK(*r);
    ++trials;
  }
  CHECK(trials >= 30);
}
