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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qaoa/workflows.hpp"

namespace qaoa {

enum class RQAOAType { Custom, Adaptive };
enum class EliminationKind { Pair, Single };

std::string_view to_string(RQAOAType type);
std::string_view to_string(EliminationKind kind);
RQAOAType parse_rqaoa_type(std::string_view name);

struct RQAOAConfig {
    RQAOAType type = RQAOAType::Custom;
    int steps = 1;     // eliminations per step (custom)
    int n_max = 1;     // upper bound on eliminations per step (adaptive)
    int n_cutoff = 5;  // brute-force once the problem has at most this many spins

    void validate() const;
};

/// Pair: Z_target = sign * Z_reference. Single: Z_target = sign.
/// Indices live in the spin numbering of the step that created the record.
struct EliminationRecord {
    EliminationKind kind = EliminationKind::Pair;
    int target = 0;
    int reference = -1;
    int sign = 1;
    int step = 0;
    double correlation = 0.0;

    friend bool operator==(const EliminationRecord &, const EliminationRecord &) = default;
};

/// <Z_i> or <Z_i Z_j> for one term of the current problem.
struct Correlation {
    TermIndices indices;
    double value = 0.0;
};

/// One correlation per term of `problem`, linear terms first, in canonical term order.
std::vector<Correlation> compute_correlations(const Distribution &distribution, const IsingProblem &problem);

struct Selection {
    std::vector<EliminationRecord> records;
    std::vector<std::string> warnings;
};

/// Picks this step's eliminations for a problem of `n` spins.
Selection select_eliminations(std::span<const Correlation> correlations, const RQAOAConfig &config, int step, int n);

struct Reduction {
    IsingProblem problem;
    std::vector<int> index_map;  // old index -> new index, -1 for eliminated spins
};

Reduction reduce_problem(const IsingProblem &problem, std::span<const EliminationRecord> records);

/// Records of one step plus the renumbering they produced.
struct ReductionStep {
    int size_before = 0;
    std::vector<EliminationRecord> records;
    std::vector<int> index_map;
};

/// Lifts an assignment of the final reduced problem back to the original spins.
SpinAssignment reconstruct_solution(std::span<const ReductionStep> steps, const SpinAssignment &cutoff_solution);

struct RQAOAResult {
    SpinAssignment solution;
    double energy = 0.0;
    std::vector<EliminationRecord> records;  // elimination order
    std::vector<int> sizes;                  // problem size at the start of each step, then the cutoff size
    std::vector<ReductionStep> steps;
    std::vector<QAOAResult> qaoa_results;
    BruteForceSolution cutoff_solution;
    std::vector<std::string> warnings;
};

/// Alternates QAOA, correlation readout and elimination until the cutoff size,
/// then solves the remainder exhaustively and lifts the answer back.
/// Step t runs QAOA with backend, optimizer and init seeds mixed with t.
RQAOAResult run_rqaoa(const IsingProblem &problem, const QAOAConfig &qaoa, const RQAOAConfig &config);

}  // namespace qaoa
