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
#include <algorithm>
#include <vector>

#include "nccr/arith.hpp"
#include "nccr/lattice.hpp"

namespace nccr {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
struct SmithDecomposition {
  MatrixX<Scalar> u;  // unimodular, rows x rows
  MatrixX<Scalar> v;  // unimodular, cols x cols
  MatrixX<Scalar> d;  // u * a * v, diagonal with d_i | d_{i+1}, d_i >= 0
};

// Smith normal form by repeated pivoting on the smallest nonzero entry.
// Deterministic, so the transforms give a fixed coordinate system.
template <typename Scalar>
SmithDecomposition<Scalar> smith_normal_form(const MatrixX<Scalar>& a) {
  const Eigen::Index m = a.rows(), n = a.cols();
  SmithDecomposition<Scalar> s{MatrixX<Scalar>::Identity(m, m),
                               MatrixX<Scalar>::Identity(n, n), a};
  auto& d = s.d;
  auto fdiv = [](Scalar x, Scalar y) {
    Scalar q = x / y;
    if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
    return q;
  };
  for (Eigen::Index t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      Eigen::Index pr = -1, pc = -1;
      for (Eigen::Index j = t; j < n; ++j)
        for (Eigen::Index i = t; i < m; ++i)
          if (d(i, j) != 0 &&
              (pr < 0 || (d(i, j) < 0 ? -d(i, j) : d(i, j)) <
                             (d(pr, pc) < 0 ? -d(pr, pc) : d(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr < 0) return s;
      d.row(t).swap(d.row(pr));
      s.u.row(t).swap(s.u.row(pr));
      d.col(t).swap(d.col(pc));
      s.v.col(t).swap(s.v.col(pc));
      bool clean = true;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        Scalar q = fdiv(d(i, t), d(t, t));
        d.row(i) -= q * d.row(t);
        s.u.row(i) -= q * s.u.row(t);
        if (d(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        Scalar q = fdiv(d(t, j), d(t, t));
        d.col(j) -= q * d.col(t);
        s.v.col(j) -= q * s.v.col(t);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into row t and retry.
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      d.row(t) += d.row(bad);
      s.u.row(t) += s.u.row(bad);
    }
    if (d(t, t) < 0) {
      d.row(t) *= Scalar(-1);
      s.u.row(t) *= Scalar(-1);
    }
  }
  return s;
}

// X(G) = Z^k / rho(Z^3) with per-vertex weights.
struct CharacterGroup {
  Int rank = 0;
  std::vector<Int> torsion;              // invariant factors > 1
  std::vector<Point2> vertices;          // polygon vertices, in order
  std::vector<std::vector<Int>> weights; // free coordinates, then torsion

  using Element = std::vector<Int>;
  Element zero() const { return Element(rank + torsion.size(), 0); }
  Element reduce(Element e) const;
  std::size_t dimension() const { return rank + torsion.size(); }

  // Internal: SNF row transform and the matching row positions.
  MatrixX<Int> transform;
  std::vector<Eigen::Index> free_rows;
  std::vector<Eigen::Index> torsion_rows;
};

// Pairing matrix: row i is (x_i, y_i, 1).
MatrixX<Int> pairing_matrix(std::span<const Point2> points);
CharacterGroup group_weights(const LatticePolygon& p);
CharacterGroup::Element class_character(const WeightVector& b, const CharacterGroup& g);

}  // namespace nccr
