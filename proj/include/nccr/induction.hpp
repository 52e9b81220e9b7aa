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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nccr/arith.hpp"
#include "nccr/hj.hpp"
#include "nccr/lattice.hpp"

namespace nccr {

enum class Sign : char { kPlus = '+', kMinus = '-' };

// Sign of a value: + iff a >= 0.
inline Sign sign_of(Int a) { return a >= 0 ? Sign::kPlus : Sign::kMinus; }
inline char to_char(Sign s) { return static_cast<char>(s); }

using SignSequence = std::vector<Sign>;
using SignVector = std::map<Point2, Sign>;

std::string to_string(const SignSequence& s);
SignSequence parse_signs(const std::string& s);

struct Term {
  Point2 vertex;
  Q coeff;
  int slot = -1;  // resolved reference into base ++ steps
};

struct Step {
  Point2 vertex;
  std::vector<Term> coeffs;
};

// Base vertices followed by steps, each a convex combination of earlier
// entries. A step may repeat the vertex of an earlier step; from then on the
// new value replaces the old one.
class InductionDatum {
 public:
  InductionDatum() = default;
  InductionDatum(std::vector<Point2> base, std::vector<Step> steps);

  const std::vector<Point2>& base() const { return base_; }
  const std::vector<Step>& steps() const { return steps_; }
  std::size_t slots() const { return base_.size() + steps_.size(); }
  Point2 slot_vertex(std::size_t i) const {
    return i < base_.size() ? base_[i] : steps_[i - base_.size()].vertex;
  }
  // Every vertex that appears, in first-appearance order.
  std::vector<Point2> vertices() const;
  bool has_repeats() const;

  void append(Step s);
  void append(const InductionDatum& other);  // other.base must be present

 private:
  void resolve(Step& s, std::size_t index) const;
  std::vector<Point2> base_;
  std::vector<Step> steps_;
};

// Values per slot (base then steps).
using InductionTrace = std::vector<Int>;

InductionTrace induce_trace(const WeightVector& b, const InductionDatum& datum,
                            const SignSequence& signs);
WeightVector final_values(const InductionTrace& trace, const InductionDatum& datum);
WeightVector induce(const WeightVector& b, const InductionDatum& datum,
                    const SignSequence& signs);
// Rebuild the trace of an already-induced vector (datum without repeats).
InductionTrace trace_of(const WeightVector& b, const InductionDatum& datum);

InductionDatum interval_datum(Point2 a, Point2 b, std::span<const Point2> ordering);

// Triangle corner (v_{-1}; v_0, v_1, ..., v_{r+1}).
struct Corner {
  Point2 v_m1;
  std::vector<Point2> chain;  // v_0 .. v_{r+1}
  HJExpansion hj;             // empty a when r = 0
  int r() const { return static_cast<int>(chain.size()) - 2; }
};

// Builds the lattice hull chain of the corner from its continued fraction.
Corner make_corner(Point2 v_m1, Point2 v_0, Point2 v_rp1);
// Checks a supplied chain v_0..v_{r+1}; throws kChainMismatch.
Corner make_corner(Point2 v_m1, std::span<const Point2> chain);

// Coefficients of step j (1..r) on (v_{-1}, v_{j-1}, v_{r+1}).
std::array<Q, 3> triangle_coefficients(const Corner& c, int j);
std::vector<Step> triangle_steps(const Corner& c);
std::vector<Int> triangle_induce(Int b_m1, Int b_0, Int b_rp1, const Corner& c);

SignVector sign_vector(const WeightVector& b, const Functional3& m);
bool check_sign_membership(const InductionTrace& trace, const InductionDatum& datum,
                           const Functional3& m);
bool check_sign_membership(const WeightVector& b, const InductionDatum& datum,
                           const Functional3& m);
// Throws kNotInduced when no sign sequence explains the difference.
SignSequence difference_is_induced(const InductionTrace& t1, const InductionTrace& t2,
                                   const InductionDatum& datum);
SignSequence difference_is_induced(const WeightVector& b1, const WeightVector& b2,
                                   const InductionDatum& datum);

// At most one sign change along the chain order.
bool interval_pattern_holds(const WeightVector& b, std::span<const Point2> chain,
                            const Functional3& m);
// Signs along (v_{-1}, v_0, ..., v_{r+1}) match (-,+^p,-^q,+^r) or its negation.
bool triangle_pattern_holds(const WeightVector& c, const Corner& corner, const Functional3& m);
bool triangle_pattern_holds(std::span<const Sign> signs);
bool truncation_consistent(const Corner& corner, Int b_m1, Int b_0, Int b_rp1);

}  // namespace nccr
