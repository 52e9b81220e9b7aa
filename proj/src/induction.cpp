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

#include "nccr/induction.hpp"

#include <algorithm>
#include <set>

namespace nccr {

std::string to_string(const SignSequence& s) {
  std::string out;
  for (Sign x : s) out.push_back(to_char(x));
  return out;
}

SignSequence parse_signs(const std::string& s) {
  SignSequence out;
  for (char c : s) {
    if (c == '+') out.push_back(Sign::kPlus);
    else if (c == '-') out.push_back(Sign::kMinus);
    else throw Error(ErrorCode::kParse, "sign must be + or -");
  }
  return out;
}

InductionDatum::InductionDatum(std::vector<Point2> base, std::vector<Step> steps)
    : base_(std::move(base)) {
  std::set<Point2> seen(base_.begin(), base_.end());
  if (seen.size() != base_.size()) throw Error(ErrorCode::kDomainMismatch, "repeated base vertex");
  for (auto& s : steps) append(std::move(s));
}

void InductionDatum::resolve(Step& s, std::size_t index) const {
  Q total = 0, x = 0, y = 0;
  for (Term& t : s.coeffs) {
    if (t.coeff < Q(0) || t.coeff > Q(1))
      throw Error(ErrorCode::kDomainMismatch, "coefficient outside [0,1]");
    t.slot = -1;
    for (std::size_t i = index; i-- > 0;)
      if (slot_vertex(i) == t.vertex) {
        t.slot = static_cast<int>(i);
        break;
      }
    if (t.slot < 0)
      throw Error(ErrorCode::kDomainMismatch, "coefficient on unknown vertex " + t.vertex.str());
    total += t.coeff;
    x += t.coeff * Q(t.vertex.x);
    y += t.coeff * Q(t.vertex.y);
  }
  if (total != Q(1)) throw Error(ErrorCode::kDomainMismatch, "coefficients do not sum to 1");
  if (x != Q(s.vertex.x) || y != Q(s.vertex.y))
    throw Error(ErrorCode::kDomainMismatch, "step " + s.vertex.str() + " is not the stated combination");
}

void InductionDatum::append(Step s) {
  resolve(s, slots());
  steps_.push_back(std::move(s));
}

void InductionDatum::append(const InductionDatum& other) {
  for (const Step& s : other.steps_) append(s);
}

std::vector<Point2> InductionDatum::vertices() const {
  std::vector<Point2> out;
  std::set<Point2> seen;
  for (std::size_t i = 0; i < slots(); ++i)
    if (seen.insert(slot_vertex(i)).second) out.push_back(slot_vertex(i));
  return out;
}

bool InductionDatum::has_repeats() const { return vertices().size() != slots(); }

InductionTrace induce_trace(const WeightVector& b, const InductionDatum& datum,
                            const SignSequence& signs) {
  if (b.size() != datum.base().size())
    throw Error(ErrorCode::kDomainMismatch, "weights not defined exactly on the base");
  if (signs.size() != datum.steps().size())
    throw Error(ErrorCode::kDomainMismatch, "sign sequence length differs from step count");
  InductionTrace tr;
  tr.reserve(datum.slots());
  for (Point2 v : datum.base()) {
    auto it = b.find(v);
    if (it == b.end()) throw Error(ErrorCode::kDomainMismatch, "missing base vertex " + v.str());
    tr.push_back(it->second);
  }
  for (std::size_t i = 0; i < datum.steps().size(); ++i) {
    Q s = 0;
    for (const Term& t : datum.steps()[i].coeffs) s += t.coeff * Q(tr[t.slot]);
    tr.push_back(signs[i] == Sign::kMinus ? s.floor() : s.ceil());
  }
  return tr;
}

WeightVector final_values(const InductionTrace& trace, const InductionDatum& datum) {
  WeightVector out;
  for (std::size_t i = 0; i < datum.slots(); ++i) out[datum.slot_vertex(i)] = trace[i];
  return out;
}

WeightVector induce(const WeightVector& b, const InductionDatum& datum, const SignSequence& signs) {
  return final_values(induce_trace(b, datum, signs), datum);
}

InductionTrace trace_of(const WeightVector& b, const InductionDatum& datum) {
  if (datum.has_repeats())
    throw Error(ErrorCode::kDomainMismatch, "datum repeats a vertex; pass the trace instead");
  InductionTrace tr;
  for (std::size_t i = 0; i < datum.slots(); ++i) {
    auto it = b.find(datum.slot_vertex(i));
    if (it == b.end()) throw Error(ErrorCode::kDomainMismatch, "missing " + datum.slot_vertex(i).str());
    tr.push_back(it->second);
  }
  return tr;
}

InductionDatum interval_datum(Point2 a, Point2 b, std::span<const Point2> ordering) {
  auto interior = segment_lattice_points(a, b);
  std::set<Point2> want(interior.begin(), interior.end());
  std::set<Point2> got(ordering.begin(), ordering.end());
  if (got.size() != ordering.size() || got != want)
    throw Error(ErrorCode::kBadOrdering, "ordering must list each interior point once");
  // Positions along the segment, in lattice steps from a.
  const Int len = lattice_length(b - a);
  const Point2 dir = primitive(b - a);
  auto pos = [&](Point2 p) {
    Point2 d = p - a;
    return dir.x != 0 ? d.x / dir.x : d.y / dir.y;
  };
  std::set<Int> present{0, len};
  std::vector<Step> steps;
  for (Point2 p : ordering) {
    Int k = pos(p);
    auto hi = present.upper_bound(k);
    Int kr = *hi, kl = *std::prev(hi);
    Q t(k - kl, kr - kl);
    Point2 pl = a + dir * kl, pr = a + dir * kr;
    steps.push_back({p, {{pl, Q(1) - t}, {pr, t}}});
    present.insert(k);
  }
  return InductionDatum({a, b}, std::move(steps));
}

Corner make_corner(Point2 v_m1, Point2 v_0, Point2 v_rp1) {
  CornerNormalization cn = normalize_corner(v_m1, v_0, v_rp1);
  Corner c;
  c.v_m1 = v_m1;
  c.chain.push_back(v_0);
  if (cn.q != 0) {
    c.hj = hj_expand(cn.n, cn.q);
    UnimodularMap back = cn.map.inverse();
    Point2 prev{0, 1}, cur{1, 0};
    for (int j = 1; j <= c.hj.r(); ++j) {
      c.chain.push_back(back(cur));
      Point2 next = cur * c.hj.a[j - 1] - prev;
      prev = cur;
      cur = next;
    }
    if (cur != Point2{cn.n, -cn.q})
      throw Error(ErrorCode::kChainMismatch, "continued fraction does not close the chain");
  } else if (cn.n != 1) {
    throw Error(ErrorCode::kNotPrimitiveEdge, "degenerate corner");
  } else {
    c.hj.n = 1;
    c.hj.i_seq = {1, 0};
  }
  c.chain.push_back(v_rp1);
  return c;
}

Corner make_corner(Point2 v_m1, std::span<const Point2> chain) {
  if (chain.size() < 2) throw Error(ErrorCode::kChainMismatch, "chain needs two endpoints");
  Corner c = make_corner(v_m1, chain.front(), chain.back());
  if (!std::equal(c.chain.begin(), c.chain.end(), chain.begin(), chain.end()))
    throw Error(ErrorCode::kChainMismatch, "chain is not the lattice hull chain of the corner");
  return c;
}

std::array<Q, 3> triangle_coefficients(const Corner& c, int j) {
  if (j < 1 || j > c.r()) throw Error(ErrorCode::kOutOfRange, "chain index");
  const Int ip = c.hj.i_seq[j - 1], ij = c.hj.i_seq[j];
  return {Q(ip - ij - 1, ip), Q(ij, ip), Q(1, ip)};
}

std::vector<Step> triangle_steps(const Corner& c) {
  std::vector<Step> out;
  for (int j = 1; j <= c.r(); ++j) {
    auto t = triangle_coefficients(c, j);
    Step s{c.chain[j], {}};
    if (t[0] != Q(0)) s.coeffs.push_back({c.v_m1, t[0]});
    if (t[1] != Q(0)) s.coeffs.push_back({c.chain[j - 1], t[1]});
    s.coeffs.push_back({c.chain.back(), t[2]});
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Int> triangle_induce(Int b_m1, Int b_0, Int b_rp1, const Corner& c) {
  std::vector<Int> out;
  Int prev = b_0;
  for (int j = 1; j <= c.r(); ++j) {
    const Int ip = c.hj.i_seq[j - 1], ij = c.hj.i_seq[j];
    Int num = add(add(mul(ip - ij - 1, b_m1), mul(ij, prev)), b_rp1);
    prev = floor_div(num, ip);
    out.push_back(prev);
  }
  return out;
}

SignVector sign_vector(const WeightVector& b, const Functional3& m) {
  SignVector out;
  for (auto [v, x] : b) out[v] = sign_of(add(m(v), x));
  return out;
}

bool check_sign_membership(const InductionTrace& tr, const InductionDatum& datum,
                           const Functional3& m) {
  auto sign_at = [&](std::size_t slot) { return sign_of(add(m(datum.slot_vertex(slot)), tr[slot])); };
  for (std::size_t i = 0; i < datum.steps().size(); ++i) {
    const std::size_t slot = datum.base().size() + i;
    Sign s = sign_at(slot);
    bool ok = false;
    for (const Term& t : datum.steps()[i].coeffs)
      if (t.coeff != Q(0) && sign_at(t.slot) == s) ok = true;
    if (!ok) return false;
  }
  return true;
}

bool check_sign_membership(const WeightVector& b, const InductionDatum& datum, const Functional3& m) {
  return check_sign_membership(trace_of(b, datum), datum, m);
}

SignSequence difference_is_induced(const InductionTrace& t1, const InductionTrace& t2,
                                   const InductionDatum& datum) {
  if (t1.size() != datum.slots() || t2.size() != datum.slots())
    throw Error(ErrorCode::kDomainMismatch, "trace length");
  SignSequence out;
  for (std::size_t i = 0; i < datum.steps().size(); ++i) {
    Q s = 0;
    for (const Term& t : datum.steps()[i].coeffs) s += t.coeff * Q(sub(t1[t.slot], t2[t.slot]));
    const std::size_t slot = datum.base().size() + i;
    Int d = sub(t1[slot], t2[slot]);
    if (d == s.floor()) out.push_back(Sign::kMinus);
    else if (d == s.ceil()) out.push_back(Sign::kPlus);
    else throw Error(ErrorCode::kNotInduced, "difference at " + datum.slot_vertex(slot).str());
  }
  return out;
}

SignSequence difference_is_induced(const WeightVector& b1, const WeightVector& b2,
                                   const InductionDatum& datum) {
  return difference_is_induced(trace_of(b1, datum), trace_of(b2, datum), datum);
}

bool interval_pattern_holds(const WeightVector& b, std::span<const Point2> chain,
                            const Functional3& m) {
  int changes = 0;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    Sign s0 = sign_of(add(m(chain[i]), b.at(chain[i])));
    Sign s1 = sign_of(add(m(chain[i + 1]), b.at(chain[i + 1])));
    changes += s0 != s1;
  }
  return changes <= 1;
}

bool triangle_pattern_holds(std::span<const Sign> s) {
  if (s.empty()) return true;
  // Entries equal to the apex sign must form one block in the tail.
  int blocks = 0;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] == s[0] && (i == 1 || s[i - 1] != s[0])) ++blocks;
  return blocks <= 1;
}

bool triangle_pattern_holds(const WeightVector& c, const Corner& corner, const Functional3& m) {
  std::vector<Sign> s;
  s.push_back(sign_of(add(m(corner.v_m1), c.at(corner.v_m1))));
  for (Point2 v : corner.chain) s.push_back(sign_of(add(m(v), c.at(v))));
  return triangle_pattern_holds(s);
}

bool truncation_consistent(const Corner& corner, Int b_m1, Int b_0, Int b_rp1) {
  std::vector<Int> full = triangle_induce(b_m1, b_0, b_rp1, corner);
  std::vector<Int> vals{b_0};
  vals.insert(vals.end(), full.begin(), full.end());
  vals.push_back(b_rp1);
  for (int l = 1; l <= corner.r() + 1; ++l) {
    Corner sub_corner;
    try {
      sub_corner = make_corner(corner.v_m1,
                               std::span<const Point2>(corner.chain.data(), static_cast<std::size_t>(l) + 1));
    } catch (const Error&) {
      return false;
    }
    auto part = triangle_induce(b_m1, b_0, vals[l], sub_corner);
    if (!std::equal(part.begin(), part.end(), vals.begin() + 1, vals.begin() + l)) return false;
  }
  return true;
}

}  // namespace nccr
