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

#include "nccr/smith.hpp"

namespace nccr {

MatrixX<Int> pairing_matrix(std::span<const Point2> points) {
  MatrixX<Int> a(static_cast<Eigen::Index>(points.size()), 3);
  for (std::size_t i = 0; i < points.size(); ++i)
    a.row(static_cast<Eigen::Index>(i)) << points[i].x, points[i].y, 1;
  return a;
}

CharacterGroup::Element CharacterGroup::reduce(Element e) const {
  for (std::size_t j = 0; j < torsion.size(); ++j)
    e[rank + j] = mod(e[rank + j], torsion[j]);
  return e;
}

CharacterGroup group_weights(const LatticePolygon& p) {
  const auto& verts = p.vertices();
  auto snf = smith_normal_form<Int>(pairing_matrix(verts));
  CharacterGroup g;
  g.vertices = verts;
  g.transform = snf.u;
  const Eigen::Index k = snf.d.rows();
  for (Eigen::Index i = 0; i < k; ++i) {
    Int di = i < snf.d.cols() ? snf.d(i, i) : 0;
    if (di == 0) {
      g.free_rows.push_back(i);
    } else if (di > 1) {
      g.torsion_rows.push_back(i);
      g.torsion.push_back(di);
    }
  }
  g.rank = static_cast<Int>(g.free_rows.size());
  for (std::size_t v = 0; v < verts.size(); ++v) {
    WeightVector e;
    for (std::size_t w = 0; w < verts.size(); ++w) e[verts[w]] = (w == v);
    g.weights.push_back(class_character(e, g));
  }
  return g;
}

CharacterGroup::Element class_character(const WeightVector& b, const CharacterGroup& g) {
  if (b.size() != g.vertices.size())
    throw Error(ErrorCode::kIndexMismatch, "weight vector does not match the polygon");
  Eigen::Matrix<Int, Eigen::Dynamic, 1> x(static_cast<Eigen::Index>(g.vertices.size()));
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    auto it = b.find(g.vertices[i]);
    if (it == b.end()) throw Error(ErrorCode::kIndexMismatch, "missing vertex " + g.vertices[i].str());
    x(static_cast<Eigen::Index>(i)) = it->second;
  }
  CharacterGroup::Element e;
  for (auto r : g.free_rows) {
    Int s = 0;
    for (Eigen::Index j = 0; j < x.size(); ++j) s = add(s, mul(g.transform(r, j), x(j)));
    e.push_back(s);
  }
  for (auto r : g.torsion_rows) {
    Int s = 0;
    for (Eigen::Index j = 0; j < x.size(); ++j) s = add(s, mul(g.transform(r, j), x(j)));
    e.push_back(s);
  }
  return g.reduce(e);
}

}  // namespace nccr
