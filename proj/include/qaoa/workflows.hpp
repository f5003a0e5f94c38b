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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qaoa/optimizers.hpp"

namespace qaoa {

inline constexpr std::string_view kPhasePreparation = "preparation";
inline constexpr std::string_view kPhaseLoop = "loop";
inline constexpr std::string_view kPhaseResult = "result";

struct ResultOptions {
    int top_k = 10;
    bool record_intermediate = false;
    /// Serialized distributions keep at most this many of the most probable states.
    std::size_t max_distribution_entries = 4096;
};

/// Everything a single QAOA run needs besides the problem.
struct QAOAConfig {
    AnsatzSpec ansatz;
    BackendConfig backend;
    OptimizerConfig optimizer;
    InitOptions init;
    ResultOptions result;
};

struct BitstringProbability {
    std::string bits;
    double probability = 0.0;

    friend bool operator==(const BitstringProbability &, const BitstringProbability &) = default;
};

struct LowestCost {
    std::string bits;
    double energy = 0.0;

    friend bool operator==(const LowestCost &, const LowestCost &) = default;
};

struct RunCounters {
    std::uint64_t circuit_evaluations = 0;
    std::uint64_t shots = 0;
    std::uint64_t function_evaluations = 0;
    std::uint64_t gradient_evaluations = 0;

    friend bool operator==(const RunCounters &, const RunCounters &) = default;
};

struct QAOAResult {
    VariationalParams optimal_params;
    PerLayerAngles optimal_angles;
    double optimal_cost = 0.0;
    /// Exact probabilities, or empirical frequencies when n_shots > 0.
    Distribution final_distribution;
    /// Number of states with nonzero probability, kept when the stored distribution is truncated.
    std::size_t support_size = 0;
    std::uint64_t n_shots = 0;
    std::vector<BitstringProbability> top_k;
    std::optional<LowestCost> lowest_cost;
    RunCounters counters;
    OptimizationLog log;
    std::vector<Distribution> intermediate;
};

/// k most probable states; ties go to the smaller bitstring.
std::vector<BitstringProbability> top_k_bitstrings(const Distribution &distribution, int k);

/// Minimum-energy basis index among `observed`; ties go to the smaller bitstring.
std::optional<LowestCost> lowest_cost_bitstring(std::span<const std::uint64_t> observed, const DiagonalCost &cost);

/// Compile-then-optimize driver. Components stay reachable for standalone use.
class QAOAWorkflow {
   public:
    explicit QAOAWorkflow(QAOAConfig config);

    /// Validates the configuration against `problem`, builds the backend and the initial parameters.
    void compile(const IsingProblem &problem);
    /// Runs the optimization loop and assembles the result. Requires compile().
    const QAOAResult &optimize();

    bool compiled() const noexcept { return backend_ != nullptr; }
    const QAOAConfig &config() const noexcept { return config_; }
    QAOABackend &backend();
    const VariationalParams &initial_params() const;
    const QAOAResult &result() const;

   private:
    QAOAConfig config_;
    std::unique_ptr<QAOABackend> backend_;
    VariationalParams initial_;
    std::optional<QAOAResult> result_;
};

/// Runs the three phases in order. Failures surface as PhaseError.
QAOAResult run_qaoa(const IsingProblem &problem, const QAOAConfig &config);
QAOAResult run_qaoa(const IsingProblem &problem, const AnsatzSpec &ansatz, const BackendConfig &backend,
                    const OptimizerConfig &optimizer);

/// Assembles a result from a finished optimization (shared by the workflow and standalone use).
QAOAResult assemble_result(QAOABackend &backend, const OptimizeResult &optimized, const ResultOptions &options);

struct GridAxis {
    double low = 0.0;
    double high = 0.0;
    int points = 1;

    /// Evenly spaced values including both ends; a single point sits at `low`.
    std::vector<double> values() const;
};

struct Landscape {
    std::vector<double> first_values;   // row coordinate (gamma for standard p = 1)
    std::vector<double> second_values;  // column coordinate (beta for standard p = 1)
    std::vector<double> costs;          // row-major

    double at(std::size_t row, std::size_t col) const { return costs[row * second_values.size() + col]; }
};

/// Costs over the grid of the two raw parameters of `ansatz`.
Landscape landscape_scan(const IsingProblem &problem, const AnsatzSpec &ansatz, const BackendConfig &backend,
                         const GridAxis &first, const GridAxis &second);

}  // namespace qaoa
