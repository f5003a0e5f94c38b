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

#include "qaoa/workflows.hpp"

#include <algorithm>
#include <cmath>
#include <new>

namespace qaoa {

namespace {

template <typename Fn>
decltype(auto) in_phase(std::string_view phase, Fn &&fn) {
    try {
        return fn();
    } catch (const PhaseError &) {
        throw;
    } catch (const Error &e) {
        throw PhaseError(std::string(phase), e.kind(), e.what());
    } catch (const std::bad_alloc &) {
        throw PhaseError(std::string(phase), ErrorKind::Capacity, "out of memory");
    }
}

bool uses_gradient(const OptimizerConfig &config) {
    return config.method == OptimizerMethod::GradientDescent || config.method == OptimizerMethod::RMSProp ||
           config.method == OptimizerMethod::Newton;
}

}  // namespace

std::vector<BitstringProbability> top_k_bitstrings(const Distribution &distribution, int k) {
    if (k < 1) fail(ErrorKind::Input, "top-k needs k >= 1");
    std::vector<std::pair<std::string, double>> entries;
    entries.reserve(distribution.entries.size());
    for (const auto &[index, prob] : distribution.entries) entries.emplace_back(index_to_bits(index, distribution.n), prob);
    const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(k), entries.size());
    auto before = [](const auto &a, const auto &b) { return a.second != b.second ? a.second > b.second : a.first < b.first; };
    std::partial_sort(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(keep), entries.end(), before);
    std::vector<BitstringProbability> out;
    out.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) out.push_back({std::move(entries[i].first), entries[i].second});
    return out;
}

std::optional<LowestCost> lowest_cost_bitstring(std::span<const std::uint64_t> observed, const DiagonalCost &cost) {
    std::optional<LowestCost> best;
    for (std::uint64_t index : observed) {
        const double e = cost.energies.at(index);
        std::string bits = index_to_bits(index, cost.n);
        if (!best || e < best->energy || (e == best->energy && bits < best->bits)) best = LowestCost{std::move(bits), e};
    }
    return best;
}

QAOAWorkflow::QAOAWorkflow(QAOAConfig config) : config_(std::move(config)) {}

void QAOAWorkflow::compile(const IsingProblem &problem) {
    in_phase(kPhasePreparation, [&] {
        backend_.reset();
        result_.reset();
        config_.ansatz.validate();
        config_.ansatz.mixer.validate(problem.n());
        config_.backend.validate();
        config_.optimizer.validate();
        if (config_.result.top_k < 1) fail(ErrorKind::Input, "top_k must be at least 1");
        if (config_.ansatz.param_type == ParamType::Annealing && uses_gradient(config_.optimizer) &&
            config_.optimizer.gradient_method == GradientMethod::ParameterShift) {
            fail(ErrorKind::Unsupported, "parameter-shift gradients are not supported for the annealing parametrisation");
        }
        auto backend = std::make_unique<QAOABackend>(problem, config_.ansatz, config_.backend);
        initial_ = init_params(config_.ansatz, problem, config_.init);
        backend->set_record_intermediate(config_.result.record_intermediate);
        backend_ = std::move(backend);
    });
}

QAOABackend &QAOAWorkflow::backend() {
    if (!backend_) fail(ErrorKind::Input, "workflow is not compiled");
    return *backend_;
}

const VariationalParams &QAOAWorkflow::initial_params() const {
    if (!backend_) fail(ErrorKind::Input, "workflow is not compiled");
    return initial_;
}

const QAOAResult &QAOAWorkflow::result() const {
    if (!result_) fail(ErrorKind::Input, "workflow has not been optimized");
    return *result_;
}

const QAOAResult &QAOAWorkflow::optimize() {
    if (!backend_) throw PhaseError(std::string(kPhaseLoop), ErrorKind::Input, "compile() must run before optimize()");
    auto optimized = in_phase(kPhaseLoop, [&] { return qaoa::optimize(*backend_, initial_, config_.optimizer); });
    result_ = in_phase(kPhaseResult, [&] { return assemble_result(*backend_, optimized, config_.result); });
    return *result_;
}

QAOAResult assemble_result(QAOABackend &backend, const OptimizeResult &optimized, const ResultOptions &options) {
    if (optimized.best_params.empty()) {
        fail(ErrorKind::Domain, "optimization observed no usable objective value (" + optimized.log.termination + ")");
    }
    QAOAResult result;
    result.optimal_params = VariationalParams{backend.spec().param_type, optimized.best_params};
    result.optimal_angles = expand_params(backend.spec(), result.optimal_params, backend.problem());
    result.optimal_cost = optimized.log.best_cost;
    result.final_distribution = backend.distribution(result.optimal_params);
    result.support_size = result.final_distribution.entries.size();
    result.n_shots = backend.config().n_shots;
    result.top_k = top_k_bitstrings(result.final_distribution, options.top_k);

    if (backend.config().n_shots == 0) {
        std::vector<std::uint64_t> support;
        support.reserve(result.final_distribution.entries.size());
        for (const auto &[index, prob] : result.final_distribution.entries) support.push_back(index);
        result.lowest_cost = lowest_cost_bitstring(support, backend.diagonal());
    } else {
        result.lowest_cost = lowest_cost_bitstring(backend.observed(), backend.diagonal());
    }

    result.log = optimized.log;
    result.counters.circuit_evaluations = backend.counters().circuit_evaluations;
    result.counters.shots = backend.counters().shots;
    result.counters.function_evaluations = optimized.log.function_evaluations;
    result.counters.gradient_evaluations = optimized.log.gradient_evaluations;
    if (options.record_intermediate) result.intermediate = backend.intermediate();
    return result;
}

QAOAResult run_qaoa(const IsingProblem &problem, const QAOAConfig &config) {
    QAOAWorkflow workflow(config);
    workflow.compile(problem);
    return workflow.optimize();
}

QAOAResult run_qaoa(const IsingProblem &problem, const AnsatzSpec &ansatz, const BackendConfig &backend,
                    const OptimizerConfig &optimizer) {
    QAOAConfig config;
    config.ansatz = ansatz;
    config.backend = backend;
    config.optimizer = optimizer;
    return run_qaoa(problem, config);
}

std::vector<double> GridAxis::values() const {
    if (points < 1) fail(ErrorKind::Input, "grid axis needs at least one point");
    if (!std::isfinite(low) || !std::isfinite(high)) fail(ErrorKind::Input, "grid bounds must be finite");
    std::vector<double> out(static_cast<std::size_t>(points));
    if (points == 1) {
        out[0] = low;
        return out;
    }
    const double step = (high - low) / (points - 1);
    for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = low + step * i;
    out.back() = high;
    return out;
}

Landscape landscape_scan(const IsingProblem &problem, const AnsatzSpec &ansatz, const BackendConfig &backend_config,
                         const GridAxis &first, const GridAxis &second) {
    ansatz.validate();
    const std::size_t count = param_count(ansatz, problem);
    if (count != 2) {
        fail(ErrorKind::Input, "landscape scans need exactly 2 raw parameters, the " + std::string(to_string(ansatz.param_type)) +
                                   " parametrisation with p = " + std::to_string(ansatz.p) + " has " + std::to_string(count));
    }
    Landscape out;
    out.first_values = first.values();
    out.second_values = second.values();
    QAOABackend backend(problem, ansatz, backend_config);
    out.costs.reserve(out.first_values.size() * out.second_values.size());
    for (double a : out.first_values) {
        for (double b : out.second_values) out.costs.push_back(backend.expectation(VariationalParams{ansatz.param_type, {a, b}}));
    }
    return out;
}

}  // namespace qaoa
