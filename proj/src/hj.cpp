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

#include "nccr/hj.hpp"

namespace nccr {

HJExpansion hj_expand(Int n, Int q) {
  if (!(n > q && q > 0) || gcd(n, q) != 1)
    throw Error(ErrorCode::kBadArguments, "need n > q > 0 and gcd(n,q) = 1");
  HJExpansion e{n, q, {}, {n, q}};
  Int prev = n, cur = q;
  while (cur > 0) {
    Int a = ceil_div(prev, cur);
    Int next = sub(mul(a, cur), prev);
    e.a.push_back(a);
    e.i_seq.push_back(next);
    prev = cur;
    cur = next;
  }
  return e;
}

QTable::QTable(const HJExpansion& e) : a_(e.a), lo_(-2), hi_(e.r() + 3) {
  const int w = hi_ - lo_ + 1;
  cache_.assign(static_cast<std::size_t>(w) * w, 0);
  for (int s = lo_; s <= hi_; ++s) {
    // Recursion in t from the initial conditions at s.
    auto at = [&](int t) -> Int& {
      return cache_[static_cast<std::size_t>(s - lo_) * w + (t - lo_)];
    };
    if (s + 1 <= hi_) at(s + 1) = 1;
    at(s) = 0;
    for (int t = s + 1; t < hi_; ++t) at(t + 1) = sub(mul(coeff(t), at(t)), at(t - 1));
    if (s - 1 >= lo_) at(s - 1) = -1;
    for (int t = s - 1; t > lo_; --t) at(t - 1) = sub(mul(coeff(t), at(t)), at(t + 1));
  }
}

Int QTable::compute(int s, int t) const {
  // Row s by direct recursion in t.
  Int prev = 0, cur = 1;  // q(s,s), q(s,s+1)
  if (t == s) return 0;
  if (t > s) {
    for (int u = s + 1; u < t; ++u) {
      Int nx = sub(mul(coeff(u), cur), prev);
      prev = cur;
      cur = nx;
    }
    return cur;
  }
  prev = 0;
  cur = -1;  // q(s,s), q(s,s-1)
  for (int u = s - 1; u > t; --u) {
    Int nx = sub(mul(coeff(u), cur), prev);
    prev = cur;
    cur = nx;
  }
  return cur;
}

Int QTable::operator()(int s, int t) const {
  if (s >= lo_ && s <= hi_ && t >= lo_ && t <= hi_) {
    const int w = hi_ - lo_ + 1;
    return cache_[static_cast<std::size_t>(s - lo_) * w + (t - lo_)];
  }
  return compute(s, t);
}

QTable q_table(const HJExpansion& e) { return QTable(e); }

std::vector<Int> d_expansion(Int d, const HJExpansion& e) {
  if (d < 0 || d >= e.n) throw Error(ErrorCode::kOutOfRange, "need 0 <= d < n");
  std::vector<Int> out;
  Int rest = d;
  for (int t = 1; t <= e.r(); ++t) {
    Int it = e.i_seq[t];
    out.push_back(rest / it);
    rest %= it;
  }
  return out;
}

std::vector<Int> c_values(const std::vector<Int>& dexp, const QTable& table) {
  const int r = static_cast<int>(dexp.size());
  std::vector<Int> c(r + 2, 0);
  for (int j = 1; j <= r + 1; ++j) {
    Int s = 0;
    for (int t = 1; t <= j - 1; ++t) s = add(s, mul(table(t, j), dexp[t - 1]));
    c[j] = s;
  }
  return c;
}

}  // namespace nccr
