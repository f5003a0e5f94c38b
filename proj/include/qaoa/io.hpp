// Copyright 2026 The QAOA Engine Authors
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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qaoa/rqaoa.hpp"
#include "qaoa/workflows.hpp"

namespace qaoa {

using Json = nlohmann::ordered_json;

/// Parsed workflow configuration file.
///
///   {"problem": {...}, "circuit_properties": {...}, "backend_properties": {...},
///    "classical_optimizer": {...}, "rqaoa": {...}, "result_properties": {...},
///    "landscape": {...}, "seed": 0}
///
/// Only "problem" is required. Unknown keys are rejected.
struct WorkflowConfig {
    IsingProblem problem = IsingProblem::empty(1);
    QAOAConfig qaoa;
    RQAOAConfig rqaoa;
    GridAxis landscape_first{0.0, 3.141592653589793, 20};
    GridAxis landscape_second{0.0, 3.141592653589793, 20};
    std::uint64_t seed = 0;
};

/// Parses JSON text. Syntax errors report line and column, schema errors name the field.
Json parse_json_text(std::string_view text);

IsingProblem problem_from_json(const Json &j, const std::string &field = "problem");
Json problem_to_json(const IsingProblem &problem);

WorkflowConfig workflow_config_from_json(const Json &j);
/// Sets the backend, optimizer and initialization seeds.
void apply_seed(WorkflowConfig &config, std::uint64_t seed);

Json distribution_to_json(const Distribution &distribution, std::uint64_t n_shots, std::size_t max_entries);
Json log_record_to_json(const IterationRecord &record);
Json log_to_json(const OptimizationLog &log);
Json qaoa_result_to_json(const QAOAResult &result, std::size_t max_distribution_entries = ResultOptions{}.max_distribution_entries);
QAOAResult qaoa_result_from_json(const Json &j);

Json elimination_to_json(const EliminationRecord &record);
Json rqaoa_result_to_json(const RQAOAResult &result, std::size_t max_distribution_entries = ResultOptions{}.max_distribution_entries);

Json brute_force_to_json(const BruteForceSolution &solution);

}  // namespace qaoa
