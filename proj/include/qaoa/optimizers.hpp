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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qaoa/simulator.hpp"

namespace qaoa {

enum class OptimizerMethod { GradientDescent, RMSProp, Newton, SPSA, NelderMead };
enum class GradientMethod { FiniteDifference, ParameterShift, SPSA };
enum class FiniteDifferenceScheme { Forward, Central };

std::string_view to_string(OptimizerMethod method);
std::string_view to_string(GradientMethod method);
OptimizerMethod parse_optimizer_method(std::string_view name);
GradientMethod parse_gradient_method(std::string_view name);

/// SPSA gain schedules a_k = a / (k + 1 + A)^alpha and c_k = c / (k + 1)^gamma.
struct SpsaGains {
    double a = 0.16;
    double c = 0.1;
    double A = 10.0;
    double alpha = 0.602;
    double gamma = 0.101;

    double step(int k) const;
    double perturbation(int k) const;
};

struct OptimizerConfig {
    OptimizerMethod method = OptimizerMethod::NelderMead;
    std::optional<int> maxiter;  // method default when unset
    GradientMethod gradient_method = GradientMethod::FiniteDifference;
    FiniteDifferenceScheme fd_scheme = FiniteDifferenceScheme::Central;
    double fd_eps = 1e-6;
    std::optional<double> step_size;  // method default when unset
    double rmsprop_decay = 0.9;
    double rmsprop_eps = 1e-8;
    double newton_lambda = 1e-6;
    double hessian_eps = 1e-4;
    SpsaGains spsa;
    double ftol = 1e-8;
    double xtol = 1e-8;
    std::uint64_t seed = 0;
    bool optimization_progress = false;  // print one line per iteration to stderr
    bool cost_progress = true;
    bool parameter_log = false;

    /// gradient descent 0.1, RMSProp 0.05; unused by the other methods.
    double effective_step_size() const;
    /// gradient descent 200, RMSProp 300, Newton 50, SPSA 1000, Nelder-Mead 1000.
    int effective_maxiter() const;
    void validate() const;
};

struct IterationRecord {
    int iteration = 0;
    double cost = 0.0;
    double best_cost = 0.0;
    std::vector<double> params;  // empty unless parameter_log
    std::uint64_t function_evaluations = 0;
    std::uint64_t gradient_evaluations = 0;
    std::uint64_t circuit_evaluations = 0;
    std::uint64_t shots = 0;
};

inline constexpr std::string_view kStopMaxiter = "maxiter";
inline constexpr std::string_view kStopFtol = "ftol";
inline constexpr std::string_view kStopXtol = "xtol";
inline constexpr std::string_view kStopNonFinite = "non-finite objective";

struct OptimizationLog {
    std::vector<IterationRecord> records;
    double best_cost = 0.0;
    std::vector<double> best_params;
    std::string termination;
    std::vector<std::string> diagnostics;
    std::uint64_t function_evaluations = 0;
    std::uint64_t gradient_evaluations = 0;

    /// Cost history (iteration, cost); used for the two-column CSV.
    std::string to_csv() const;
    /// One JSON object per iteration record.
    std::string to_jsonl() const;
};

using Objective = std::function<double(std::span<const double>)>;

/// Counts objective calls. Domain errors raised by the objective surface as +infinity.
class CostEvaluator {
   public:
    explicit CostEvaluator(Objective objective) : objective_(std::move(objective)) {}

    double operator()(std::span<const double> x);
    std::uint64_t evaluations() const noexcept { return evaluations_; }
    const std::vector<std::string> &diagnostics() const noexcept { return diagnostics_; }

   private:
    Objective objective_;
    std::uint64_t evaluations_ = 0;
    std::vector<std::string> diagnostics_;
};

/// Central: 2d evaluations. Forward: d + 1 evaluations.
std::vector<double> grad_finite_difference(CostEvaluator &cost, std::span<const double> x, double eps,
                                           FiniteDifferenceScheme scheme = FiniteDifferenceScheme::Central);

/// One Rademacher perturbation, exactly two evaluations.
std::vector<double> grad_spsa(CostEvaluator &cost, std::span<const double> x, double c_k, std::uint64_t seed);

/// Parameter-shift gradient with respect to the extended angles, in `PerLayerAngles::flatten()` layout.
std::vector<double> grad_parameter_shift_extended(QAOABackend &backend, const PerLayerAngles &angles);

/// Parameter-shift gradient in the raw space of `params` (chain rule through the expansion).
std::vector<double> grad_parameter_shift(QAOABackend &backend, const VariationalParams &params);

/// Extra inputs for `minimize`.
struct MinimizeHooks {
    /// Required when gradient_method is parameter_shift.
    std::function<std::vector<double>(std::span<const double>)> gradient;
    /// Backend counters sampled into each log record.
    std::function<EvaluationCounters()> counters;
};

struct OptimizeResult {
    std::vector<double> best_params;
    OptimizationLog log;
};

/// Runs the configured method from x0 and returns the best observed point.
OptimizeResult minimize(const Objective &objective, std::vector<double> x0, const OptimizerConfig &config,
                        const MinimizeHooks &hooks = {});

/// The QAOA loop: minimizes the backend expectation over raw parameters.
OptimizeResult optimize(QAOABackend &backend, const VariationalParams &initial, const OptimizerConfig &config);

}  // namespace qaoa
