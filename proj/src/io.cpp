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

#include "nccr/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace nccr {

namespace {

template <typename F>
auto parsing(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

}  // namespace

json to_json(Point2 p) { return json::array({p.x, p.y}); }

Point2 point_from_json(const json& j) {
  return parsing([&] {
    if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::kParse, "point must be [x, y]");
    return Point2{j.at(0).get<Int>(), j.at(1).get<Int>()};
  });
}

json to_json(const std::vector<Point2>& pts) {
  json a = json::array();
  for (Point2 p : pts) a.push_back(to_json(p));
  return a;
}

std::vector<Point2> points_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kParse, "expected a list of points");
  std::vector<Point2> out;
  for (const json& p : j) out.push_back(point_from_json(p));
  return out;
}

json polygon_to_json(const LatticePolygon& p) { return {{"vertices", to_json(p.vertices())}}; }

LatticePolygon polygon_from_json(const json& j) {
  return parsing([&] { return LatticePolygon::from_vertices(points_from_json(j.at("vertices"))); });
}

json plan_to_json(const InductionPlan& plan) {
  json steps = json::array();
  for (std::size_t i = 0; i < plan.datum.steps().size(); ++i) {
    const Step& s = plan.datum.steps()[i];
    json coeffs = json::array();
    for (const Term& t : s.coeffs)
      coeffs.push_back({{"vertex", to_json(t.vertex)}, {"num", t.coeff.num()}, {"den", t.coeff.den()}});
    steps.push_back({{"vertex", to_json(s.vertex)},
                     {"coeffs", coeffs},
                     {"sign", std::string(1, to_char(plan.signs[i]))}});
  }
  return {{"base", to_json(plan.datum.base())}, {"steps", steps}};
}

InductionPlan plan_from_json(const json& j) {
  return parsing([&] {
    std::vector<Step> steps;
    SignSequence signs;
    for (const json& s : j.at("steps")) {
      Step st{point_from_json(s.at("vertex")), {}};
      for (const json& c : s.at("coeffs"))
        st.coeffs.push_back({point_from_json(c.at("vertex")), Q(c.at("num").get<Int>(), c.at("den").get<Int>())});
      steps.push_back(std::move(st));
      auto sign = parse_signs(s.at("sign").get<std::string>());
      if (sign.size() != 1) throw Error(ErrorCode::kParse, "one sign per step");
      signs.push_back(sign[0]);
    }
    return InductionPlan{InductionDatum(points_from_json(j.at("base")), std::move(steps)), std::move(signs)};
  });
}

json weights_to_json(const std::vector<Point2>& vertices, const std::vector<WeightVector>& s) {
  json members = json::array();
  for (const WeightVector& b : s) members.push_back(aligned(b, vertices));
  return {{"vertices", to_json(vertices)}, {"members", members}};
}

std::vector<WeightVector> weights_from_json(const json& j) {
  return parsing([&] {
    auto vertices = points_from_json(j.at("vertices"));
    std::vector<WeightVector> out;
    for (const json& m : j.at("members")) {
      auto vals = m.get<std::vector<Int>>();
      if (vals.size() != vertices.size()) throw Error(ErrorCode::kParse, "member length differs from vertices");
      WeightVector b;
      for (std::size_t i = 0; i < vals.size(); ++i)
        if (!b.emplace(vertices[i], vals[i]).second) throw Error(ErrorCode::kParse, "repeated vertex");
      out.push_back(std::move(b));
    }
    return out;
  });
}

json group_to_json(const LatticePolygon& p, const CharacterGroup& g) {
  json weights = json::array();
  for (const auto& w : g.weights) weights.push_back(w);
  return {{"vertices", to_json(p.vertices())}, {"rank", g.rank}, {"torsion", g.torsion}, {"weights", weights}};
}

json report_to_json(const VerificationReport& r, const std::vector<Point2>& vertices) {
  json failures = json::array();
  for (const Failure& f : r.failures) {
    json witness = f.witness ? json::array({f.witness->m1, f.witness->m2, f.witness->m3}) : json(nullptr);
    failures.push_back({{"b", aligned(f.b, vertices)},
                        {"bprime", aligned(f.bprime, vertices)},
                        {"signs", f.signs},
                        {"witness", witness},
                        {"betti", json::array({f.betti.b0, f.betti.b1})}});
  }
  return {{"mode", to_string(r.mode)},
          {"vertices", to_json(vertices)},
          {"pairs", r.pairs},
          {"vectors", r.vectors},
          {"failures", failures},
          {"verdict", to_string(r.verdict)}};
}

json certificate_to_json(const NCCRCertificate& c) {
  return {{"cm_ok", c.cm_ok}, {"class_count", c.class_count}, {"volume", c.volume}, {"verdict", c.verdict}};
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  return parsing([&] { return json::parse(in); });
}

void write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error(ErrorCode::kParse, "cannot write " + path);
    out << content;
    if (!out) throw Error(ErrorCode::kParse, "cannot write " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(ErrorCode::kParse, "cannot rename to " + path);
}

void write_json(const std::string& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

}  // namespace nccr
