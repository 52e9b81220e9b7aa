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

#include <vector>

#include "nccr/arith.hpp"

namespace nccr {

// n/q = [a_1, ..., a_r] with i_{j-1} = a_j i_j - i_{j+1}.
struct HJExpansion {
  Int n = 0;
  Int q = 0;
  std::vector<Int> a;      // a_1..a_r
  std::vector<Int> i_seq;  // i_0..i_{r+1}
  int r() const { return static_cast<int>(a.size()); }
  Int coeff(int t) const { return t >= 1 && t <= r() ? a[t - 1] : 0; }
};

HJExpansion hj_expand(Int n, Int q);

// q(s,t) for arbitrary integer indices; a is zero outside [1, r].
class QTable {
 public:
  QTable() = default;
  explicit QTable(const HJExpansion& e);
  Int operator()(int s, int t) const;
  int lo() const { return lo_; }
  int hi() const { return hi_; }

 private:
  // Dense cache over [lo, hi]^2; entries outside fall back to recursion.
  std::vector<Int> a_;
  int lo_ = 0, hi_ = 0;
  std::vector<Int> cache_;
  Int coeff(int t) const { return t >= 1 && t <= static_cast<int>(a_.size()) ? a_[t - 1] : 0; }
  Int compute(int s, int t) const;
};

QTable q_table(const HJExpansion& e);

// Greedy digits d_1..d_r with d = sum i_t d_t.
std::vector<Int> d_expansion(Int d, const HJExpansion& e);

// c_0..c_{r+1}, c_j = sum_{t<j} q(t,j) d_t.
std::vector<Int> c_values(const std::vector<Int>& dexp, const QTable& table);

}  // namespace nccr
