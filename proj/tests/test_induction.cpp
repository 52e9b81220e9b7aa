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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "nccr/induction.hpp"
#include "suites.hpp"
#include "support.hpp"

using namespace nccr;

namespace {

// Triangle induction straight from the convex coefficients, as an oracle
// against the integer i-sequence form.
std::vector<Int> triangle_oracle(Int bm1, Int b0, Int brp1, const Corner& c) {
  std::vector<Int> out;
  Int prev = b0;
  for (int j = 1; j <= c.r(); ++j) {
    auto t = triangle_coefficients(c, j);
    prev = (t[0] * Q(bm1) + t[1] * Q(prev) + t[2] * Q(brp1)).floor();
    out.push_back(prev);
  }
  return out;
}

// Chain oracle: lattice points of the corner triangle minus the apex, hull,
// then the boundary path from v_0 to v_{r+1} that faces the apex.
std::vector<Point2> chain_oracle(Point2 vm1, Point2 v0, Point2 vr) {
  auto tri = convex_hull(std::vector<Point2>{vm1, v0, vr});
  std::vector<Point2> pts;
  for (Point2 p : lattice_points(tri))
    if (p != vm1) pts.push_back(p);
  std::vector<Point2> out{v0};
  // Walk: from the current point choose the next point such that every
  // remaining candidate lies on the far side of the apex.
  Point2 cur = v0;
  while (cur != vr) {
    Point2 best{};
    bool have = false;
    for (Point2 p : pts) {
      if (std::find(out.begin(), out.end(), p) != out.end()) continue;
      if ((orient(vm1, cur, p) > 0) != (orient(vm1, v0, vr) > 0) || orient(vm1, cur, p) == 0) continue;
      bool ok = true;
      for (Point2 o : pts) {
        Int s = orient(cur, p, o);
        Int sa = orient(cur, p, vm1);
        if (s != 0 && (s > 0) == (sa > 0)) ok = false;
      }
      if (orient(cur, p, vm1) == 0) ok = false;
      if (!ok) continue;
      if (!have || dot(p - cur, p - cur) < dot(best - cur, best - cur)) {
        best = p;
        have = true;
      }
    }
    REQUIRE(have);
    out.push_back(best);
    cur = best;
  }
  return out;
}

}  // namespace

TEST_CASE("induce examples") {
  InductionDatum d({{0, 0}, {2, 0}}, {{{1, 0}, {{{0, 0}, Q(1, 2)}, {{2, 0}, Q(1, 2)}}}});
  WeightVector b{{{0, 0}, 0}, {{2, 0}, 1}};
  CHECK(induce(b, d, {Sign::kMinus}).at({1, 0}) == 0);
  CHECK(induce(b, d, {Sign::kPlus}).at({1, 0}) == 1);

  std::vector<Point2> hex{{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}};
  Step center{{0, 0}, {}};
  for (auto v : hex) center.coeffs.push_back({v, Q(1, 6)});
  InductionDatum hd(hex, {center});
  WeightVector hb;
  for (std::size_t i = 0; i < hex.size(); ++i) hb[hex[i]] = static_cast<Int>(i % 2);
  CHECK(induce(hb, hd, {Sign::kMinus}).at({0, 0}) == 0);
  CHECK(induce(hb, hd, {Sign::kPlus}).at({0, 0}) == 1);

  InductionDatum one({{0, 0}, {1, 0}}, {{{0, 0}, {{{0, 0}, Q(1)}}}});
  WeightVector b1{{{0, 0}, 7}, {{1, 0}, -3}};
  CHECK(induce(b1, one, {Sign::kMinus}).at({0, 0}) == 7);
  CHECK(induce(b1, one, {Sign::kPlus}).at({0, 0}) == 7);
  auto tr = induce_trace(b1, one, {Sign::kPlus});
  for (Int k = -3; k <= 3; ++k) CHECK(check_sign_membership(tr, one, {k, 1, -k}));
}

TEST_CASE("datum validation") {
  CHECK_THROWS_AS(InductionDatum({{0, 0}, {2, 0}}, {{{1, 0}, {{{0, 0}, Q(1, 3)}, {{2, 0}, Q(2, 3)}}}}),
                  Error);
  CHECK_THROWS_AS(InductionDatum({{0, 0}, {2, 0}}, {{{1, 0}, {{{0, 0}, Q(1, 2)}, {{5, 0}, Q(1, 2)}}}}),
                  Error);
  InductionDatum d({{0, 0}, {2, 0}}, {{{1, 0}, {{{0, 0}, Q(1, 2)}, {{2, 0}, Q(1, 2)}}}});
  CHECK_THROWS_AS(induce({{{0, 0}, 0}}, d, {Sign::kMinus}), Error);
  CHECK_THROWS_AS(induce({{{0, 0}, 0}, {{2, 0}, 0}}, d, {}), Error);
}

TEST_CASE("interval datum") {
  std::vector<Point2> o1{{1, 0}, {2, 0}};
  auto d = interval_datum({0, 0}, {3, 0}, o1);
  REQUIRE(d.steps().size() == 2);
  CHECK(d.steps()[0].coeffs[0].vertex == Point2{0, 0});
  CHECK(d.steps()[0].coeffs[0].coeff == Q(2, 3));
  CHECK(d.steps()[0].coeffs[1].vertex == Point2{3, 0});
  CHECK(d.steps()[0].coeffs[1].coeff == Q(1, 3));
  CHECK(d.steps()[1].coeffs[0].vertex == Point2{1, 0});
  CHECK(d.steps()[1].coeffs[0].coeff == Q(1, 2));
  CHECK(d.steps()[1].coeffs[1].vertex == Point2{3, 0});
  std::vector<Point2> o2{{2, 0}, {1, 0}};
  auto e = interval_datum({0, 0}, {3, 0}, o2);
  CHECK(e.steps()[0].coeffs[0].coeff == Q(1, 3));
  CHECK(e.steps()[0].coeffs[1].coeff == Q(2, 3));
  CHECK(e.steps()[1].coeffs[0].vertex == Point2{0, 0});
  CHECK(e.steps()[1].coeffs[1].vertex == Point2{2, 0});
  CHECK(e.steps()[1].coeffs[1].coeff == Q(1, 2));
  std::vector<Point2> o3{{1, 1}};
  CHECK(interval_datum({0, 0}, {2, 2}, o3).steps().size() == 1);
  std::vector<Point2> bad{{1, 0}, {5, 0}};
  CHECK_THROWS_AS(interval_datum({0, 0}, {3, 0}, bad), Error);
}

TEST_CASE("corner chains match the lattice hull") {
  for (Int n = 1; n <= 25; ++n)
    for (Int q = 0; q < n; ++q) {
      if (gcd(n, q) != 1) continue;
      Corner c = make_corner({0, 0}, {0, 1}, {n, -q});
      CHECK(c.chain == chain_oracle({0, 0}, {0, 1}, {n, -q}));
      CHECK(c.r() == (q == 0 ? 0 : hj_expand(n, q).r()));
    }
  Corner c = make_corner({0, 0}, {0, 1}, {5, -3});
  CHECK(c.chain == std::vector<Point2>{{0, 1}, {1, 0}, {2, -1}, {5, -3}});
  std::vector<Point2> wrong{{0, 1}, {1, 0}, {3, -1}, {5, -3}};
  CHECK_THROWS_AS(make_corner({0, 0}, wrong), Error);
}

TEST_CASE("triangle induction") {
  Corner c = make_corner({0, 0}, {0, 1}, {5, -3});
  CHECK(triangle_induce(0, 0, 2, c) == std::vector<Int>{0, 0});
  CHECK(triangle_induce(0, 0, 0, c) == std::vector<Int>{0, 0});
  // Matches the closed-form c-values: c_j for d = 0..n-1.
  for (Int n = 2; n <= 20; ++n)
    for (Int q = 1; q < n; ++q) {
      if (gcd(n, q) != 1) continue;
      Corner k = make_corner({0, 0}, {0, 1}, {n, -q});
      auto t = q_table(k.hj);
      for (Int d = 0; d < n; ++d) {
        auto cv = c_values(d_expansion(d, k.hj), t);
        auto got = triangle_induce(0, 0, d, k);
        CHECK(std::vector<Int>(cv.begin() + 1, cv.end() - 1) == got);
      }
    }
  // Affine shift: adding m(v) + k to the inputs shifts outputs by m(v) + k.
  std::mt19937 rng(17);
  std::uniform_int_distribution<Int> u(-9, 9);
  Functional3 m{1, -1, 2};
  const Int k = 3;
  for (int trial = 0; trial < 200; ++trial) {
    Int a = u(rng), b = u(rng), e = u(rng);
    UnimodularMap g;
    g.a << 2, 1, 1, 1;
    g.t = {u(rng), u(rng)};
    Corner gc = make_corner(g({0, 0}), g({0, 1}), g({7, -5}));
    auto base = triangle_induce(a, b, e, gc);
    CHECK(base == triangle_oracle(a, b, e, gc));
    auto sh = triangle_induce(a + m(gc.v_m1) + k, b + m(gc.chain.front()) + k, e + m(gc.chain.back()) + k, gc);
    for (int j = 1; j <= gc.r(); ++j) CHECK(sh[j - 1] == base[j - 1] + m(gc.chain[j]) + k);
  }
}

TEST_CASE("sign vectors") {
  WeightVector z{{{0, 0}, 0}, {{1, 0}, 0}, {{1, 1}, 0}, {{0, 1}, 0}};
  for (auto [v, s] : sign_vector(z, {0, 0, 0})) CHECK(s == Sign::kPlus);
  for (auto [v, s] : sign_vector(z, {0, 0, -1})) CHECK(s == Sign::kMinus);
  WeightVector b{{{0, 0}, 0}, {{1, 0}, 1}, {{1, 1}, 0}, {{0, 1}, 1}};
  auto s = sign_vector(b, {0, 0, -1});
  CHECK(s.at({0, 0}) == Sign::kMinus);
  CHECK(s.at({1, 0}) == Sign::kPlus);
  CHECK(s.at({1, 1}) == Sign::kMinus);
  CHECK(s.at({0, 1}) == Sign::kPlus);
}

namespace {

// A random datum over a random polygon: interior lattice points expressed as
// random convex combinations of triangles of earlier points.
InductionDatum random_datum(std::mt19937& rng) {
  auto p = testing::random_polygon(rng, 5, 6);
  std::vector<Point2> have = p.vertices();
  std::vector<Step> steps;
  for (Point2 x : lattice_points(p)) {
    if (p.is_vertex(x)) continue;
    std::vector<std::array<Point2, 3>> tris;
    for (std::size_t i = 0; i < have.size(); ++i)
      for (std::size_t j = i + 1; j < have.size(); ++j)
        for (std::size_t k = j + 1; k < have.size(); ++k) {
          Point2 a = have[i], b = have[j], c = have[k];
          Int det = orient(a, b, c);
          if (det == 0) continue;
          Int l1 = orient(x, b, c), l2 = orient(a, x, c), l3 = orient(a, b, x);
          if ((det > 0 && l1 >= 0 && l2 >= 0 && l3 >= 0) || (det < 0 && l1 <= 0 && l2 <= 0 && l3 <= 0))
            tris.push_back({a, b, c});
        }
    if (tris.empty()) continue;
    auto t = tris[std::uniform_int_distribution<std::size_t>(0, tris.size() - 1)(rng)];
    Int det = orient(t[0], t[1], t[2]);
    Step s{x, {}};
    Q w1(orient(x, t[1], t[2]), det), w2(orient(t[0], x, t[2]), det), w3(orient(t[0], t[1], x), det);
    if (w1 != Q(0)) s.coeffs.push_back({t[0], w1});
    if (w2 != Q(0)) s.coeffs.push_back({t[1], w2});
    if (w3 != Q(0)) s.coeffs.push_back({t[2], w3});
    steps.push_back(s);
    have.push_back(x);
  }
  return InductionDatum(p.vertices(), steps);
}

}  // namespace

TEST_CASE("induction properties on random data") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<Int> u(-6, 6);
  std::bernoulli_distribution coin(0.5);
  int witnessed = 0;
  for (int trial = 0; trial < 300; ++trial) {
    InductionDatum d = random_datum(rng);
    SignSequence s;
    for (std::size_t i = 0; i < d.steps().size(); ++i) s.push_back(coin(rng) ? Sign::kPlus : Sign::kMinus);
    WeightVector b1, b2;
    for (Point2 v : d.base()) {
      b1[v] = u(rng);
      b2[v] = u(rng);
    }
    auto t1 = induce(b1, d, s), t2 = induce(b2, d, s);
    // Monotone in each base entry.
    for (Point2 v : d.base()) {
      WeightVector up = b1;
      up[v] += 1;
      auto tu = induce(up, d, s);
      for (auto [w, x] : t1) CHECK(tu.at(w) >= x);
    }
    // Affine equivariance.
    Functional3 m = testing::random_m(rng, 5);
    WeightVector shifted;
    for (Point2 v : d.base()) shifted[v] = b1[v] + m(v);
    auto ts = induce(shifted, d, s);
    for (auto [w, x] : t1) CHECK(ts.at(w) == x + m(w));
    // Sign lemma over a box.
    for (int k = 0; k < 40; ++k) CHECK(check_sign_membership(t1, d, testing::random_m(rng, 10)));
    // Difference lemma.
    auto w = difference_is_induced(t1, t2, d);
    CHECK(w.size() == d.steps().size());
    ++witnessed;
  }
  CHECK(witnessed == 300);
}

TEST_CASE("difference witnesses") {
  InductionDatum d({{0, 0}, {2, 0}}, {{{1, 0}, {{{0, 0}, Q(1, 2)}, {{2, 0}, Q(1, 2)}}}});
  WeightVector a{{{0, 0}, 0}, {{2, 0}, 1}}, b{{{0, 0}, 1}, {{2, 0}, 0}};
  auto ta = induce(a, d, {Sign::kMinus}), tb = induce(b, d, {Sign::kMinus});
  // Base difference (-1, 1) averages to 0 and the entries agree: a tie.
  CHECK(to_string(difference_is_induced(ta, tb, d)) == "-");
  WeightVector z{{{0, 0}, 0}, {{2, 0}, 0}};
  auto tp = induce(a, d, {Sign::kPlus}), tz = induce(z, d, {Sign::kPlus});
  CHECK(to_string(difference_is_induced(tp, tz, d)) == "+");
  CHECK(to_string(difference_is_induced(ta, ta, d)) == "-");
  WeightVector bad = ta;
  bad[{1, 0}] += 2;
  CHECK_THROWS_AS(difference_is_induced(bad, tb, d), Error);
}

TEST_CASE("corrupted vectors leave the support sign set") {
  // Search small instances for a corruption the membership check catches.
  InductionDatum d({{0, 0}, {2, 0}}, {{{1, 0}, {{{0, 0}, Q(1, 2)}, {{2, 0}, Q(1, 2)}}}});
  WeightVector b{{{0, 0}, 0}, {{2, 0}, 0}};
  auto t = induce(b, d, {Sign::kMinus});
  t[{1, 0}] += 2;
  bool caught = false;
  for (Int m1 = -3; m1 <= 3; ++m1)
    for (Int m3 = -3; m3 <= 3; ++m3)
      if (!check_sign_membership(t, d, {m1, 0, m3})) caught = true;
  CHECK(caught);
}

TEST_CASE("interval sign pattern") {
  std::vector<Point2> chain{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
  WeightVector zero{{{0, 0}, 0}, {{1, 0}, 0}, {{2, 0}, 0}, {{3, 0}, 0}};
  for (int k = 0; k < 10; ++k) CHECK(interval_pattern_holds(zero, chain, {k - 5, 2, k}));
  WeightVector adv{{{0, 0}, 0}, {{1, 0}, 5}, {{2, 0}, -5}, {{3, 0}, 0}};
  CHECK_FALSE(interval_pattern_holds(adv, chain, {0, 0, 0}));
  std::vector<Point2> order{{1, 0}, {2, 0}};
  auto d = interval_datum({0, 0}, {3, 0}, order);
  for (SignSequence s : {SignSequence{Sign::kMinus, Sign::kPlus}, SignSequence{Sign::kPlus, Sign::kMinus}}) {
    auto b = induce({{{0, 0}, 0}, {{3, 0}, 2}}, d, s);
    bool ok = true;
    for (Int a = -8; a <= 8; ++a)
      for (Int c = -8; c <= 8; ++c)
        for (Int e = -8; e <= 8; ++e) ok = ok && interval_pattern_holds(b, chain, {a, c, e});
    CHECK(ok);
  }
}

TEST_CASE("triangle sign pattern") {
  Corner c = make_corner({0, 0}, {0, 1}, {5, -3});
  auto full = [&](Int bm1, Int b0, Int br) {
    WeightVector w{{c.v_m1, bm1}, {c.chain.front(), b0}, {c.chain.back(), br}};
    auto in = triangle_induce(bm1, b0, br, c);
    for (int j = 1; j <= c.r(); ++j) w[c.chain[j]] = in[j - 1];
    return w;
  };
  auto b = full(0, 0, 2), bp = full(0, 0, 4);
  auto diff = bp - b;
  bool ok = true;
  for (Int a = -10; a <= 10; ++a)
    for (Int e = -10; e <= 10; ++e)
      for (Int f = -10; f <= 10; ++f) ok = ok && triangle_pattern_holds(diff, c, {a, e, f});
  CHECK(ok);
  WeightVector zero = b - b;
  CHECK(triangle_pattern_holds(zero, c, {0, 0, 0}));
  WeightVector adv{{{0, 0}, 0}, {{0, 1}, 1}, {{1, 0}, -1}, {{2, -1}, 1}, {{5, -3}, -1}};
  CHECK_FALSE(triangle_pattern_holds(adv, c, {0, 0, 0}));
}

TEST_CASE("truncation") {
  Corner c = make_corner({0, 0}, {0, 1}, {5, -3});
  CHECK(truncation_consistent(c, 0, 0, 2));
  CHECK(truncation_consistent(c, 0, 0, 0));
}

TEST_CASE("standard corners have the requested type") {
  for (Int n = 2; n <= 12; ++n)
    for (Int q = 1; q < n; ++q)
      if (gcd(n, q) == 1) {
        Corner c = testing::standard_corner(n, q);
        CHECK(c.hj.n == n);
        CHECK(c.chain.back() == Point2{n, -q});
      }
}

TEST_CASE("randomized pattern suites") {
  std::mt19937 rng(2026);
  auto t = testing::truncation_suite(12, 40, rng);
  CHECK(t.checks > 1000);
  CHECK(t.violations == 0);
  auto i = testing::interval_suite(6, 6, 4, rng);
  CHECK(i.checks > 1000);
  CHECK(i.violations == 0);
  auto tr = testing::triangle_suite(8, 1, 4, rng);
  CHECK(tr.checks > 1000);
  CHECK(tr.violations == 0);
}
