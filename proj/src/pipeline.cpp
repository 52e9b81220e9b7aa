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

#include "nccr/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>

namespace nccr {

PlanDocument make_plan(const LatticePolygon& p, Method mode, const PlanOptions& options) {
  PlanDocument doc;
  doc.mode = mode;
  doc.embedding = mode == Method::kGulotta ? embed_rectangle(p) : embed_triangle(p);
  const Embedding& e = doc.embedding;
  doc.sequence = mode == Method::kGulotta ? gulotta_sequence(e.polygon, e.outer, options.gulotta)
                                          : iu_sequence(e.polygon, e.outer, options.order);
  std::vector<Triangle> base = options.base;
  for (Triangle& t : base)
    for (Point2& v : t) v = v + e.shift;
  if (base.empty()) base = base_triangulation(e.polygon);
  doc.triangulation = assemble(doc.sequence, base);
  doc.plan = induction_plan(doc.sequence, mode, options.signs);
  return doc;
}

SeedCollection default_seeds(const PlanDocument& doc) {
  const Embedding& e = doc.embedding;
  return doc.mode == Method::kGulotta ? seed_gulotta(e.c, e.d) : seed_iu(e.c, e.d);
}

namespace {

json triangle_json(const Triangle& t) { return json::array({to_json(t[0]), to_json(t[1]), to_json(t[2])}); }

}  // namespace

json plan_document_to_json(const PlanDocument& doc) {
  const Embedding& e = doc.embedding;
  json nested = json::array(), cuts = json::array(), triangles = json::array(), stages = json::array();
  for (const LatticePolygon& q : doc.sequence.polygons) nested.push_back(to_json(q.vertices()));
  for (const CutRecord& c : doc.sequence.cuts)
    cuts.push_back({{"removed", to_json(c.removed)},
                    {"chain", to_json(c.chain)},
                    {"slope", c.slope ? json(c.slope->str()) : json(nullptr)}});
  for (const Triangle& t : doc.triangulation.triangles) triangles.push_back(triangle_json(t));
  for (const auto& v : doc.triangulation.stage_vertices) stages.push_back(to_json(v));
  return {{"mode", to_string(doc.mode)},
          {"polygon", polygon_to_json(e.polygon)},
          {"shift", to_json(e.shift)},
          {"c", e.c},
          {"d", e.d},
          {"polygon_0", polygon_to_json(e.outer)},
          {"nested", nested},
          {"cuts", cuts},
          {"triangles", triangles},
          {"levels", doc.triangulation.level},
          {"stage_vertices", stages},
          {"plan", plan_to_json(doc.plan)}};
}

namespace {

Q parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Q(std::stoll(s));
    return Q(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kParse, "bad rational " + s);
  }
}

}  // namespace

PlanDocument plan_document_from_json(const json& j) {
  try {
    PlanDocument doc;
    doc.mode = parse_method(j.at("mode").get<std::string>());
    Embedding& e = doc.embedding;
    e.polygon = polygon_from_json(j.at("polygon"));
    e.outer = polygon_from_json(j.at("polygon_0"));
    e.shift = point_from_json(j.at("shift"));
    e.c = j.at("c").get<Int>();
    e.d = j.at("d").get<Int>();
    for (const json& q : j.at("nested")) doc.sequence.polygons.push_back(LatticePolygon::from_vertices(points_from_json(q)));
    for (const json& c : j.at("cuts")) {
      CutRecord r{point_from_json(c.at("removed")), points_from_json(c.at("chain")), std::nullopt};
      if (!c.at("slope").is_null()) r.slope = parse_rational(c.at("slope").get<std::string>());
      doc.sequence.cuts.push_back(std::move(r));
    }
    if (doc.sequence.polygons.size() != doc.sequence.cuts.size() + 1)
      throw Error(ErrorCode::kParse, "nested polygons and cuts disagree");
    Triangulation& t = doc.triangulation;
    for (const json& tri : j.at("triangles")) {
      auto v = points_from_json(tri);
      if (v.size() != 3) throw Error(ErrorCode::kParse, "triangles need three points");
      t.triangles.push_back({v[0], v[1], v[2]});
    }
    t.level = j.at("levels").get<std::vector<int>>();
    if (t.level.size() != t.triangles.size()) throw Error(ErrorCode::kParse, "one level per triangle");
    for (const json& s : j.at("stage_vertices")) t.stage_vertices.push_back(points_from_json(s));
    if (t.stage_vertices.empty()) throw Error(ErrorCode::kParse, "missing stage vertices");
    t.all_vertices = t.stage_vertices.front();
    std::set<Point2> acc;
    for (const LatticePolygon& q : doc.sequence.polygons) {
      for (Point2 v : q.vertices()) acc.insert(v);
      t.cumulative_vertices.emplace_back(acc.begin(), acc.end());
    }
    doc.plan = plan_from_json(j.at("plan"));
    return doc;
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kParse, ex.what());
  }
}

Verdict combine(const std::vector<VerificationReport>& reports, const NCCRCertificate& c) {
  bool inconclusive = false;
  for (const VerificationReport& r : reports) {
    if (r.verdict == Verdict::kRefuted) return Verdict::kRefuted;
    inconclusive = inconclusive || r.verdict == Verdict::kInconclusive;
  }
  if (!c.verdict) return Verdict::kRefuted;
  return inconclusive ? Verdict::kInconclusive : Verdict::kCertified;
}

PipelineRun run_pipeline(const LatticePolygon& p, Method mode, const PlanOptions& options,
                         const VerifyOptions& verify) {
  PipelineRun run;
  run.input = p;
  auto stage = [](const char* what, auto&& f) {
    try {
      return f();
    } catch (const Error& e) {
      throw Error(e.code(), std::string(what) + ": " + e.message());
    }
  };
  run.doc = stage("plan", [&] { return make_plan(p, mode, options); });
  run.seeds = default_seeds(run.doc);
  stage("induce", [&] {
    for (const WeightVector& b : run.seeds.members)
      run.induced.push_back(induce(b, run.doc.plan.datum, run.doc.plan.signs));
    return 0;
  });
  const Triangulation& t = run.doc.triangulation;
  stage("verify", [&] {
    for (std::size_t i = 0; i < t.stages(); ++i) {
      run.restricted.push_back(restrict(run.induced, t.stage_vertices[i]));
      run.reports.push_back(ext_vanishing(StageComplex::from_triangulation(t, i), run.restricted.back(), verify));
    }
    return 0;
  });
  run.certificate = stage("certify", [&] { return nccr_certificate(run.doc.embedding.polygon, run.restricted.back()); });
  run.verdict = combine(run.reports, run.certificate);
  return run;
}

json fixture_to_json(const Fixture& f) {
  json j = {{"name", f.name}};
  j.update(polygon_to_json(f.polygon));
  json tris = json::array();
  for (const Triangle& t : f.triangles) tris.push_back(triangle_json(t));
  j["triangles"] = tris;
  if (f.datum) j["datum"] = plan_to_json({*f.datum, SignSequence(f.datum->steps().size(), Sign::kMinus)});
  return j;
}

void write_fixtures(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  for (const Fixture& f : builtin_fixtures()) write_json((fs::path(dir) / (f.name + ".json")).string(), fixture_to_json(f));
  auto rnd = random_polygons();
  for (std::size_t i = 0; i < rnd.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "random-%02zu.json", i);
    write_json((fs::path(dir) / name).string(), polygon_to_json(rnd[i]));
  }
}

namespace {

constexpr Int kScale = 40;
constexpr Int kMargin = 20;

struct Canvas {
  Int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  std::ostringstream out;

  Int sx(Int x) const { return kMargin + (x - x0) * kScale; }
  Int sy(Int y) const { return kMargin + (y1 - y) * kScale; }

  void open() {
    const Int w = 2 * kMargin + (x1 - x0) * kScale, h = 2 * kMargin + (y1 - y0) * kScale;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
        << w << ' ' << h << "\">\n";
    out << "<g stroke=\"#d0d0d0\" stroke-width=\"1\">\n";
    for (Int x = x0; x <= x1; ++x) line({x, y0}, {x, y1}, "");
    for (Int y = y0; y <= y1; ++y) line({x0, y}, {x1, y}, "");
    out << "</g>\n";
  }
  void line(Point2 a, Point2 b, const std::string& attrs) {
    out << "<line x1=\"" << sx(a.x) << "\" y1=\"" << sy(a.y) << "\" x2=\"" << sx(b.x) << "\" y2=\"" << sy(b.y)
        << "\"" << attrs << "/>\n";
  }
  void polygon(const LatticePolygon& p, const std::string& attrs) {
    out << "<polygon points=\"";
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << sx(p[i].x) << ',' << sy(p[i].y);
    out << "\"" << attrs << "/>\n";
  }
  void dot(Point2 p, Int r, const std::string& attrs) {
    out << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"" << r << "\"" << attrs << "/>\n";
  }
  std::string close() {
    out << "</svg>\n";
    return out.str();
  }
};

Canvas canvas_for(const LatticePolygon& p) {
  Canvas c;
  c.x0 = c.x1 = p[0].x;
  c.y0 = c.y1 = p[0].y;
  for (Point2 v : p.vertices()) {
    c.x0 = std::min(c.x0, v.x);
    c.x1 = std::max(c.x1, v.x);
    c.y0 = std::min(c.y0, v.y);
    c.y1 = std::max(c.y1, v.y);
  }
  c.open();
  return c;
}

}  // namespace

std::string render_svg(const LatticePolygon& p) {
  Canvas c = canvas_for(p);
  c.polygon(p, " fill=\"none\" stroke=\"black\" stroke-width=\"3\"");
  return c.close();
}

std::string render_svg(const PlanDocument& doc) {
  const auto& outer = doc.sequence.polygons.front();
  Canvas c = canvas_for(outer);
  c.out << "<g class=\"triangles\" fill=\"none\" stroke=\"#4a7bb7\" stroke-width=\"1.5\">\n";
  for (const Triangle& t : doc.triangulation.triangles) {
    c.out << "<polygon points=\"";
    for (int k = 0; k < 3; ++k) c.out << (k ? " " : "") << c.sx(t[k].x) << ',' << c.sy(t[k].y);
    c.out << "\"/>\n";
  }
  c.out << "</g>\n";
  c.polygon(outer, " fill=\"none\" stroke=\"#555555\" stroke-width=\"2\"");
  c.polygon(doc.sequence.polygons.back(), " fill=\"none\" stroke=\"black\" stroke-width=\"3\"");
  if (doc.mode == Method::kGulotta) {
    c.out << "<g class=\"extra-diagonals\" stroke=\"#d62728\" stroke-width=\"2.5\">\n";
    for (std::size_t j = 0; j < doc.sequence.cuts.size(); ++j) {
      const CutRecord& cut = doc.sequence.cuts[j];
      const auto& vj = doc.triangulation.stage_vertices[j];
      for (std::size_t k = 1; k + 1 < cut.chain.size(); ++k)
        if (std::binary_search(vj.begin(), vj.end(), cut.chain[k])) c.line(cut.removed, cut.chain[k], "");
    }
    c.out << "</g>\n";
  } else {
    c.out << "<g class=\"removed\" fill=\"#e8a33d\" stroke=\"#8a5a12\">\n";
    for (const CutRecord& cut : doc.sequence.cuts) c.dot(cut.removed, 6, "");
    c.out << "</g>\n";
  }
  c.out << "<g class=\"vertices\" fill=\"black\">\n";
  for (Point2 v : doc.triangulation.all_vertices) c.dot(v, 3, "");
  c.out << "</g>\n";
  return c.close();
}

}  // namespace nccr
