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

// Command line front end: triangulate, induce, verify, certify, weights,
// render, fixtures and run.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nccr/io.hpp"
#include "nccr/pipeline.hpp"
#include "nccr/smith.hpp"

namespace fs = std::filesystem;
using namespace nccr;

namespace {

constexpr int kExitError = 1;
constexpr int kExitRefuted = 2;
constexpr int kExitInconclusive = 3;

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::kCertified:
      return 0;
    case Verdict::kRefuted:
      return kExitRefuted;
    case Verdict::kInconclusive:
      return kExitInconclusive;
  }
  return kExitError;
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-")
    std::cout << content;
  else
    write_file(out, content);
}

void emit(const std::string& out, const json& j) { emit(out, j.dump(2) + "\n"); }

SignConfig sign_config(const std::string& arg, Method mode) {
  SignConfig cfg;
  if (arg == "all-minus") return cfg;
  if (arg == "all-plus") {
    cfg.interval_sign = Sign::kPlus;
    return cfg;
  }
  if (mode != Method::kGulotta)
    throw Error(ErrorCode::kBadArguments, "per-step sign files apply to the gulotta method only");
  std::ifstream in(arg);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + arg);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    cfg.gulotta_signs = parse_signs(json::parse(text).at("signs").get<std::string>());
  } else {
    std::string compact;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
    cfg.gulotta_signs = parse_signs(compact);
  }
  return cfg;
}

IuOrder parse_order(const std::string& s) {
  if (s == "top") return IuOrder::kTopFirst;
  if (s == "left") return IuOrder::kLeftFirst;
  throw Error(ErrorCode::kParse, "order must be top or left");
}

std::vector<Triangle> read_triangles(const std::string& path) {
  std::vector<Triangle> out;
  if (path.empty()) return out;
  json j = read_json(path);
  const json& list = j.is_object() ? j.at("triangles") : j;
  for (const json& t : list) {
    auto v = points_from_json(t);
    if (v.size() != 3) throw Error(ErrorCode::kParse, "triangles need three points");
    out.push_back({v[0], v[1], v[2]});
  }
  return out;
}

std::vector<WeightVector> seed_members(const PlanDocument& doc, const std::string& seed, const std::string& file) {
  if (seed == "gulotta") return seed_gulotta(doc.embedding.c, doc.embedding.d).members;
  if (seed == "iu") return seed_iu(doc.embedding.c, doc.embedding.d).members;
  if (seed == "file") {
    if (file.empty()) throw Error(ErrorCode::kBadArguments, "--seed file needs --weights");
    return weights_from_json(read_json(file));
  }
  throw Error(ErrorCode::kParse, "seed must be gulotta, iu or file");
}

std::vector<WeightVector> induce_all(const PlanDocument& doc, const std::vector<WeightVector>& s) {
  std::vector<WeightVector> out;
  for (const WeightVector& b : s) out.push_back(induce(b, doc.plan.datum, doc.plan.signs));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric NCCR construction and certification"};
  app.require_subcommand(1);

  std::string polygon_path, plan_path, weights_path, out, method = "gulotta", signs = "all-minus", order = "top",
                                                      seed, mode = "chamber", triangles_path;
  Int radius = 8;
  int stage = -1;
  unsigned jobs = 1;

  auto* tri = app.add_subcommand("triangulate", "Build the nested sequence, triangulation and induction plan");
  tri->add_option("--method", method)->check(CLI::IsMember({"gulotta", "iu"}));
  tri->add_option("--polygon", polygon_path, "Polygon JSON")->required();
  tri->add_option("--signs", signs, "all-minus, all-plus or a sign file");
  tri->add_option("--order", order, "Vertex removal order: top or left")->check(CLI::IsMember({"top", "left"}));
  tri->add_option("--triangles", triangles_path, "Triangulation of the polygon");
  tri->add_option("--out", out);

  auto* ind = app.add_subcommand("induce", "Induce a weight collection along a plan");
  ind->add_option("--plan", plan_path)->required();
  ind->add_option("--seed", seed, "gulotta, iu or file");
  ind->add_option("--weights", weights_path);
  ind->add_option("--out", out);

  auto* ver = app.add_subcommand("verify", "Check Ext vanishing on the plan's stages");
  ver->add_option("--plan", plan_path)->required();
  ver->add_option("--seed", seed, "gulotta, iu or file");
  ver->add_option("--weights", weights_path);
  ver->add_option("--mode", mode)->check(CLI::IsMember({"chamber", "box"}));
  ver->add_option("--box-radius", radius);
  ver->add_option("--stage", stage, "Stage index, -1 for all");
  ver->add_option("--jobs", jobs);
  ver->add_option("--out", out);

  auto* cert = app.add_subcommand("certify", "NCCR certificate for a weight collection");
  cert->add_option("--polygon", polygon_path)->required();
  cert->add_option("--weights", weights_path)->required();
  cert->add_option("--out", out);

  auto* wts = app.add_subcommand("weights", "Character group and vertex weights");
  wts->add_option("--polygon", polygon_path)->required();
  wts->add_option("--out", out);

  auto* ren = app.add_subcommand("render", "SVG drawing of a plan or polygon");
  ren->add_option("--plan", plan_path);
  ren->add_option("--polygon", polygon_path);
  ren->add_option("--out", out);

  auto* fix = app.add_subcommand("fixtures", "Write the bundled fixtures");
  fix->add_option("--out", out)->required();

  auto* run = app.add_subcommand("run", "Full pipeline with all artifacts");
  run->add_option("--polygon", polygon_path)->required();
  run->add_option("--method", method)->check(CLI::IsMember({"gulotta", "iu"}));
  run->add_option("--signs", signs);
  run->add_option("--order", order)->check(CLI::IsMember({"top", "left"}));
  run->add_option("--mode", mode)->check(CLI::IsMember({"chamber", "box"}));
  run->add_option("--box-radius", radius);
  run->add_option("--jobs", jobs);
  run->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (*tri) {
      Method m = parse_method(method);
      PlanOptions opt{sign_config(signs, m), parse_order(order), {}, read_triangles(triangles_path)};
      emit(out, plan_document_to_json(make_plan(polygon_from_json(read_json(polygon_path)), m, opt)));
    } else if (*ind) {
      PlanDocument doc = plan_document_from_json(read_json(plan_path));
      if (seed.empty()) seed = to_string(doc.mode);
      emit(out, weights_to_json(doc.triangulation.all_vertices, induce_all(doc, seed_members(doc, seed, weights_path))));
    } else if (*ver) {
      PlanDocument doc = plan_document_from_json(read_json(plan_path));
      if (seed.empty()) seed = to_string(doc.mode);
      auto induced = induce_all(doc, seed_members(doc, seed, weights_path));
      VerifyOptions vo{parse_verify_mode(mode), radius, jobs};
      const Triangulation& t = doc.triangulation;
      json reports = json::array();
      std::vector<VerificationReport> all;
      for (std::size_t i = 0; i < t.stages(); ++i) {
        if (stage >= 0 && static_cast<std::size_t>(stage) != i) continue;
        auto r = ext_vanishing(StageComplex::from_triangulation(t, i), restrict(induced, t.stage_vertices[i]), vo);
        json rj = report_to_json(r, t.stage_vertices[i]);
        rj["stage"] = i;
        reports.push_back(rj);
        all.push_back(std::move(r));
      }
      if (all.empty()) throw Error(ErrorCode::kOutOfRange, "no such stage");
      NCCRCertificate pass{true, 0, 0, true};
      Verdict v = combine(all, pass);
      emit(out, json{{"verdict", to_string(v)}, {"stages", reports}});
      return exit_code(v);
    } else if (*cert) {
      auto p = polygon_from_json(read_json(polygon_path));
      auto c = nccr_certificate(p, weights_from_json(read_json(weights_path)));
      emit(out, certificate_to_json(c));
      return c.verdict ? 0 : kExitRefuted;
    } else if (*wts) {
      auto p = polygon_from_json(read_json(polygon_path));
      emit(out, group_to_json(p, group_weights(p)));
    } else if (*ren) {
      if (!plan_path.empty())
        emit(out, render_svg(plan_document_from_json(read_json(plan_path))));
      else if (!polygon_path.empty())
        emit(out, render_svg(polygon_from_json(read_json(polygon_path))));
      else
        throw Error(ErrorCode::kBadArguments, "render needs --plan or --polygon");
    } else if (*fix) {
      write_fixtures(out);
    } else if (*run) {
      Method m = parse_method(method);
      PlanOptions opt{sign_config(signs, m), parse_order(order), {}, {}};
      VerifyOptions vo{parse_verify_mode(mode), radius, jobs};
      PipelineRun r = run_pipeline(polygon_from_json(read_json(polygon_path)), m, opt, vo);
      fs::create_directories(out);
      auto path = [&](const std::string& n) { return (fs::path(out) / n).string(); };
      const Triangulation& t = r.doc.triangulation;
      write_json(path("plan.json"), plan_document_to_json(r.doc));
      write_json(path("seeds.json"), weights_to_json(r.seeds.base, r.seeds.members));
      write_json(path("induced.json"), weights_to_json(t.all_vertices, r.induced));
      write_json(path("restricted.json"), weights_to_json(r.doc.embedding.polygon.vertices(), r.restricted.back()));
      json reports = json::array();
      for (std::size_t i = 0; i < r.reports.size(); ++i) {
        json rj = report_to_json(r.reports[i], t.stage_vertices[i]);
        rj["stage"] = i;
        reports.push_back(rj);
      }
      write_json(path("reports.json"), reports);
      write_json(path("certificate.json"), certificate_to_json(r.certificate));
      write_file(path("plan.svg"), render_svg(r.doc));
      std::cout << to_string(r.verdict) << " classes=" << r.certificate.class_count
                << " volume=" << r.certificate.volume << "\n";
      return exit_code(r.verdict);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
