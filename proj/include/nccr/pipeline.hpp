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

#include <string>
#include <vector>

#include "nccr/fixtures.hpp"
#include "nccr/io.hpp"
#include "nccr/triangulate.hpp"
#include "nccr/verify.hpp"

namespace nccr {

// Embedding, nested sequence, triangulation of P_0 and induction plan.
struct PlanDocument {
  Method mode = Method::kGulotta;
  Embedding embedding;
  NestedSequence sequence;
  Triangulation triangulation;
  InductionPlan plan;
};

struct PlanOptions {
  SignConfig signs;
  IuOrder order = IuOrder::kTopFirst;
  GulottaOptions gulotta;
  std::vector<Triangle> base;  // triangulation of P; fan when empty
};

PlanDocument make_plan(const LatticePolygon& p, Method mode, const PlanOptions& options = {});
SeedCollection default_seeds(const PlanDocument& doc);

json plan_document_to_json(const PlanDocument& doc);
PlanDocument plan_document_from_json(const json& j);

struct PipelineRun {
  LatticePolygon input;
  PlanDocument doc;
  SeedCollection seeds;
  std::vector<WeightVector> induced;                  // on V_0
  std::vector<std::vector<WeightVector>> restricted;  // per stage
  std::vector<VerificationReport> reports;            // per stage
  NCCRCertificate certificate;
  Verdict verdict = Verdict::kCertified;
};

PipelineRun run_pipeline(const LatticePolygon& p, Method mode, const PlanOptions& options = {},
                         const VerifyOptions& verify = {});

Verdict combine(const std::vector<VerificationReport>& reports, const NCCRCertificate& c);

// {"name", "vertices", "triangles", "datum"?}; the datum carries all-minus signs.
json fixture_to_json(const Fixture& f);
// Builtin fixtures as <name>.json and the random polygons as random-NN.json.
void write_fixtures(const std::string& dir);

// Deterministic drawings.
std::string render_svg(const LatticePolygon& p);
std::string render_svg(const PlanDocument& doc);

}  // namespace nccr
