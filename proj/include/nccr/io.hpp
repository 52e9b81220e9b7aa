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

#include <json.hpp>
#include <string>
#include <vector>

#include "nccr/induction.hpp"
#include "nccr/lattice.hpp"
#include "nccr/smith.hpp"
#include "nccr/triangulate.hpp"
#include "nccr/verify.hpp"

namespace nccr {

using json = nlohmann::ordered_json;

json to_json(Point2 p);
Point2 point_from_json(const json& j);
json to_json(const std::vector<Point2>& pts);
std::vector<Point2> points_from_json(const json& j);

// {"vertices": [[x,y], ...]}
json polygon_to_json(const LatticePolygon& p);
LatticePolygon polygon_from_json(const json& j);

// {"base": [...], "steps": [{"vertex", "coeffs": [{"vertex","num","den"}], "sign"}]}
json plan_to_json(const InductionPlan& plan);
InductionPlan plan_from_json(const json& j);

// {"vertices": [...], "members": [[b_v per vertex], ...]}
json weights_to_json(const std::vector<Point2>& vertices, const std::vector<WeightVector>& s);
std::vector<WeightVector> weights_from_json(const json& j);

json group_to_json(const LatticePolygon& p, const CharacterGroup& g);
json report_to_json(const VerificationReport& r, const std::vector<Point2>& vertices);
json certificate_to_json(const NCCRCertificate& c);

json read_json(const std::string& path);
// Writes through a temporary file and a rename.
void write_file(const std::string& path, const std::string& content);
void write_json(const std::string& path, const json& j);

}  // namespace nccr
