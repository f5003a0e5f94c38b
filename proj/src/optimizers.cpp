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

#include "qaoa/optimizers.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

namespace qaoa {

std::string_view to_string(OptimizerMethod method) {
    switch (method) {
        case OptimizerMethod::GradientDescent: return "gradient_descent";
        case OptimizerMethod::RMSProp: return "rmsprop";
        case OptimizerMethod::Newton: return "newton";
        case OptimizerMethod::SPSA: return "spsa";
        case OptimizerMethod::NelderMead: return "nelder_mead";
    }
    return "unknown";
}

std::string_view to_string(GradientMethod method) {
    switch (method) {
        case GradientMethod::FiniteDifference: return "finite_difference";
        case GradientMethod::ParameterShift: return "parameter_shift";
        case GradientMethod::SPSA: return "spsa";
    }
    return "unknown";
}

OptimizerMethod parse_optimizer_method(std::string_view name) {
    if (name == "gradient_descent" || name == "vgd") return OptimizerMethod::GradientDescent;
    if (name == "rmsprop") return OptimizerMethod::RMSProp;
    if (name == "newton") return OptimizerMethod::Newton;
    if (name == "spsa") return OptimizerMethod::SPSA;
    if (name == "nelder_mead" || name == "nelder-mead") return OptimizerMethod::NelderMead;
    fail(ErrorKind::Input, "unknown optimizer method '" + std::string(name) + "'");
}

GradientMethod parse_gradient_method(std::string_view name) {
    if (name == "finite_difference") return GradientMethod::FiniteDifference;
    if (name == "parameter_shift") return GradientMethod::ParameterShift;
    if (name == "spsa") return GradientMethod::SPSA;
    fail(ErrorKind::Input, "unknown gradient method '" + std::string(name) + "'");
}

double SpsaGains::step(int k) const { return a / std::pow(k + 1.0 + A, alpha); }
double SpsaGains::perturbation(int k) const { return c / std::pow(k + 1.0, gamma); }

double OptimizerConfig::effective_step_size() const {
    if (step_size) return *step_size;
    return method == OptimizerMethod::RMSProp ? 0.05 : 0.1;
}

int OptimizerConfig::effective_maxiter() const {
    if (maxiter) return *maxiter;
    switch (method) {
        case OptimizerMethod::GradientDescent: return 200;
        case OptimizerMethod::RMSProp: return 300;
        case OptimizerMethod::Newton: return 50;
        case OptimizerMethod::SPSA: return 1000;
        case OptimizerMethod::NelderMead: return 1000;
    }
    return 200;
}

void OptimizerConfig::validate() const {
    if (maxiter && *maxiter < 1) fail(ErrorKind::Input, "maxiter must be at least 1, got " + std::to_string(*maxiter));
    auto positive = [](double v, const char *name) {
        if (!(v > 0.0 && std::isfinite(v))) fail(ErrorKind::Input, std::string(name) + " must be positive");
    };
    positive(fd_eps, "fd_eps");
    positive(effective_step_size(), "step_size");
    positive(rmsprop_eps, "rmsprop_eps");
    positive(hessian_eps, "hessian_eps");
    positive(ftol, "ftol");
    positive(xtol, "xtol");
    positive(spsa.a, "spsa a");
    positive(spsa.c, "spsa c");
    if (!(rmsprop_decay >= 0.0 && rmsprop_decay < 1.0)) fail(ErrorKind::Input, "rmsprop_decay must lie in [0, 1)");
    if (!(newton_lambda >= 0.0)) fail(ErrorKind::Input, "newton_lambda must be non-negative");
}

std::string OptimizationLog::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "iteration,cost\n";
    for (const auto &r : records) out << r.iteration << ',' << r.cost << '\n';
    return out.str();
}

std::string OptimizationLog::to_jsonl() const {
    std::string out;
    for (const auto &r : records) {
        nlohmann::ordered_json j;
        j["iteration"] = r.iteration;
        j["cost"] = r.cost;
        j["best_cost"] = r.best_cost;
        j["function_evaluations"] = r.function_evaluations;
        j["gradient_evaluations"] = r.gradient_evaluations;
        j["circuit_evaluations"] = r.circuit_evaluations;
        j["shots"] = r.shots;
        if (!r.params.empty()) j["params"] = r.params;
        out += j.dump();
        out += '\n';
    }
    return out;
}

double CostEvaluator::operator()(std::span<const double> x) {
    ++evaluations_;
    try {
        return objective_(x);
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::Domain) throw;
        diagnostics_.push_back(std::string("objective outside its domain: ") + e.what());
        return std::numeric_limits<double>::infinity();
    }
}

std::vector<double> grad_finite_difference(CostEvaluator &cost, std::span<const double> x, double eps,
                                           FiniteDifferenceScheme scheme) {
    if (!(eps > 0.0)) fail(ErrorKind::Input, "finite-difference step must be positive");
    std::vector<double> probe(x.begin(), x.end());
    std::vector<double> grad(x.size());
    const double f0 = scheme == FiniteDifferenceScheme::Forward ? cost(x) : 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + eps;
        const double up = cost(probe);
        if (scheme == FiniteDifferenceScheme::Central) {
            probe[i] = x[i] - eps;
            grad[i] = (up - cost(probe)) / (2.0 * eps);
        } else {
            grad[i] = (up - f0) / eps;
        }
        probe[i] = x[i];
    }
    return grad;
}

std::vector<double> grad_spsa(CostEvaluator &cost, std::span<const double> x, double c_k, std::uint64_t seed) {
    if (!(c_k > 0.0)) fail(ErrorKind::Input, "SPSA perturbation must be positive");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::vector<double> delta(x.size());
    for (auto &d : delta) d = coin(rng) ? 1.0 : -1.0;
    std::vector<double> plus(x.begin(), x.end()), minus(x.begin(), x.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
        plus[i] += c_k * delta[i];
        minus[i] -= c_k * delta[i];
    }
    const double diff = cost(plus) - cost(minus);
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) grad[i] = diff / (2.0 * c_k * delta[i]);
    return grad;
}

std::vector<double> grad_parameter_shift_extended(QAOABackend &backend, const PerLayerAngles &angles) {
    const auto &cost = backend.diagonal();
    const bool xy = backend.spec().mixer.kind == MixerKind::XY;
    PerLayerAngles shifted = angles;

    // d/dtheta of exp(-i theta c P), P a Pauli string: c [f(theta + pi/4c) - f(theta - pi/4c)].
    auto two_term = [&](double &slot, double c) {
        const double original = slot;
        const double shift = std::numbers::pi / (4.0 * c);
        slot = original + shift;
        const double up = backend.expectation(shifted);
        slot = original - shift;
        const double down = backend.expectation(shifted);
        slot = original;
        return c * (up - down);
    };
    // The XY generator (XX + YY)/2 has eigenvalues {-1, 0, 0, 1}, so f has
    // frequencies 1 and 2 and needs the four-term equidistant shift rule.
    auto four_term = [&](double &slot) {
        const double original = slot;
        const double w1 = 1.0 / (8.0 * std::pow(std::sin(std::numbers::pi / 8.0), 2));
        const double w2 = 1.0 / (8.0 * std::pow(std::sin(3.0 * std::numbers::pi / 8.0), 2));
        double g = 0.0;
        const double shifts[2] = {std::numbers::pi / 4.0, 3.0 * std::numbers::pi / 4.0};
        const double weights[2] = {w1, -w2};
        for (int m = 0; m < 2; ++m) {
            slot = original + shifts[m];
            const double up = backend.expectation(shifted);
            slot = original - shifts[m];
            const double down = backend.expectation(shifted);
            g += weights[m] * (up - down);
        }
        slot = original;
        return g;
    };

    const std::size_t p = angles.layers.size();
    std::vector<double> g_lin, g_pair, g_beta;
    for (std::size_t l = 0; l < p; ++l) {
        auto &layer = shifted.layers[l];
        for (std::size_t t = 0; t < layer.gamma_linear.size(); ++t) {
            const double c = cost.terms[t].coeff;
            g_lin.push_back(c == 0.0 ? 0.0 : two_term(layer.gamma_linear[t], c));
        }
    }
    for (std::size_t l = 0; l < p; ++l) {
        auto &layer = shifted.layers[l];
        for (std::size_t t = 0; t < layer.gamma_quadratic.size(); ++t) {
            const double c = cost.terms[cost.linear_count + t].coeff;
            g_pair.push_back(c == 0.0 ? 0.0 : two_term(layer.gamma_quadratic[t], c));
        }
    }
    for (std::size_t l = 0; l < p; ++l) {
        auto &layer = shifted.layers[l];
        for (auto &beta : layer.beta) {
            // exp(+i beta X) = exp(-i (-beta) X): the sign flips twice, leaving the c = 1 rule.
            g_beta.push_back(xy ? four_term(beta) : two_term(beta, 1.0));
        }
    }
    std::vector<double> out = std::move(g_lin);
    out.insert(out.end(), g_pair.begin(), g_pair.end());
    out.insert(out.end(), g_beta.begin(), g_beta.end());
    return out;
}

std::vector<double> grad_parameter_shift(QAOABackend &backend, const VariationalParams &params) {
    if (params.type == ParamType::Annealing) {
        fail(ErrorKind::Unsupported, "parameter-shift gradients are not supported for the annealing parametrisation");
    }
    const auto angles = expand_params(backend.spec(), params, backend.problem());
    const auto extended = grad_parameter_shift_extended(backend, angles);
    return pullback_gradient(backend.spec(), backend.problem(), extended);
}

namespace {

double inf_norm_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

class Loop {
   public:
    Loop(const Objective &objective, const OptimizerConfig &config, const MinimizeHooks &hooks)
        : cost_(objective), config_(config), hooks_(hooks) {}

    OptimizeResult run(std::vector<double> x0);

   private:
    double evaluate(std::span<const double> x) {
        const double f = cost_(x);
        if (f < best_cost_ || best_params_.empty()) {
            if (!std::isnan(f)) {
                best_cost_ = f;
                best_params_.assign(x.begin(), x.end());
            }
        }
        return f;
    }
    std::vector<double> gradient(std::span<const double> x, int k);
    std::vector<double> hessian(std::span<const double> x, double fx);
    void record(int iteration, double f, std::span<const double> x);
    OptimizeResult finish(std::string termination);

    OptimizeResult run_gradient_based(std::vector<double> x);
    OptimizeResult run_nelder_mead(std::vector<double> x);

    CostEvaluator cost_;
    const OptimizerConfig &config_;
    const MinimizeHooks &hooks_;
    OptimizationLog log_;
    double best_cost_ = std::numeric_limits<double>::infinity();
    std::vector<double> best_params_;
};

std::vector<double> Loop::gradient(std::span<const double> x, int k) {
    ++log_.gradient_evaluations;
    switch (config_.gradient_method) {
        case GradientMethod::FiniteDifference:
            return grad_finite_difference(cost_, x, config_.fd_eps, config_.fd_scheme);
        case GradientMethod::SPSA:
            return grad_spsa(cost_, x, config_.spsa.perturbation(k), mix_seed(config_.seed, static_cast<std::uint64_t>(k)));
        case GradientMethod::ParameterShift:
            if (!hooks_.gradient) fail(ErrorKind::Unsupported, "parameter-shift gradients need a QAOA backend");
            return hooks_.gradient(x);
    }
    fail(ErrorKind::Internal, "unhandled gradient method");
}

std::vector<double> Loop::hessian(std::span<const double> x, double fx) {
    const std::size_t d = x.size();
    const double h = config_.hessian_eps;
    std::vector<double> probe(x.begin(), x.end());
    std::vector<double> H(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        probe[i] = x[i] + h;
        const double up = cost_(probe);
        probe[i] = x[i] - h;
        const double down = cost_(probe);
        probe[i] = x[i];
        H[i * d + i] = (up - 2.0 * fx + down) / (h * h);
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            double f[4];
            const double si[4] = {h, h, -h, -h}, sj[4] = {h, -h, h, -h};
            for (int m = 0; m < 4; ++m) {
                probe[i] = x[i] + si[m];
                probe[j] = x[j] + sj[m];
                f[m] = cost_(probe);
            }
            probe[i] = x[i];
            probe[j] = x[j];
            const double hij = (f[0] - f[1] - f[2] + f[3]) / (4.0 * h * h);
            H[i * d + j] = hij;
            H[j * d + i] = hij;
        }
    }
    return H;
}

void Loop::record(int iteration, double f, std::span<const double> x) {
    IterationRecord r;
    r.iteration = iteration;
    r.cost = f;
    r.best_cost = best_cost_;
    if (config_.parameter_log) r.params.assign(x.begin(), x.end());
    r.function_evaluations = cost_.evaluations();
    r.gradient_evaluations = log_.gradient_evaluations;
    if (hooks_.counters) {
        const auto c = hooks_.counters();
        r.circuit_evaluations = c.circuit_evaluations;
        r.shots = c.shots;
    }
    if (config_.optimization_progress) {
        std::clog << "iteration " << iteration << "  cost " << f << "  best " << best_cost_ << '\n';
    }
    log_.records.push_back(std::move(r));
}

OptimizeResult Loop::finish(std::string termination) {
    log_.termination = std::move(termination);
    log_.best_cost = best_cost_;
    log_.best_params = best_params_;
    log_.function_evaluations = cost_.evaluations();
    log_.diagnostics.insert(log_.diagnostics.begin(), cost_.diagnostics().begin(), cost_.diagnostics().end());
    return {best_params_, std::move(log_)};
}

OptimizeResult Loop::run(std::vector<double> x0) {
    config_.validate();
    if (x0.empty()) fail(ErrorKind::Input, "cannot optimize over zero parameters");
    if (config_.method == OptimizerMethod::NelderMead) return run_nelder_mead(std::move(x0));
    return run_gradient_based(std::move(x0));
}

OptimizeResult Loop::run_gradient_based(std::vector<double> x) {
    const std::size_t d = x.size();
    double fx = evaluate(x);
    if (!std::isfinite(fx)) {
        log_.diagnostics.push_back("objective is not finite at the initial point");
        return finish(std::string(kStopNonFinite));
    }
    const double eta = config_.effective_step_size();
    std::vector<double> v(d, 0.0);  // RMSProp second-moment estimate

    for (int k = 0; k < config_.effective_maxiter(); ++k) {
        std::vector<double> step(d, 0.0);
        if (config_.method == OptimizerMethod::SPSA) {
            ++log_.gradient_evaluations;
            const auto g = grad_spsa(cost_, x, config_.spsa.perturbation(k), mix_seed(config_.seed, static_cast<std::uint64_t>(k)));
            const double a_k = config_.spsa.step(k);
            for (std::size_t i = 0; i < d; ++i) step[i] = a_k * g[i];
        } else {
            const auto g = gradient(x, k);
            if (!all_finite(g)) {
                log_.diagnostics.push_back("gradient is not finite at iteration " + std::to_string(k + 1));
                return finish(std::string(kStopNonFinite));
            }
            switch (config_.method) {
                case OptimizerMethod::GradientDescent:
                    for (std::size_t i = 0; i < d; ++i) step[i] = eta * g[i];
                    break;
                case OptimizerMethod::RMSProp:
                    for (std::size_t i = 0; i < d; ++i) {
                        v[i] = config_.rmsprop_decay * v[i] + (1.0 - config_.rmsprop_decay) * g[i] * g[i];
                        step[i] = eta * g[i] / (std::sqrt(v[i]) + config_.rmsprop_eps);
                    }
                    break;
                case OptimizerMethod::Newton: {
                    const auto H = hessian(x, fx);
                    if (!all_finite(H)) {
                        log_.diagnostics.push_back("Hessian is not finite at iteration " + std::to_string(k + 1));
                        return finish(std::string(kStopNonFinite));
                    }
                    Eigen::MatrixXd A(d, d);
                    Eigen::VectorXd b(d);
                    for (std::size_t i = 0; i < d; ++i) {
                        b(i) = g[i];
                        for (std::size_t j = 0; j < d; ++j) A(i, j) = 0.5 * (H[i * d + j] + H[j * d + i]);
                        A(i, i) += config_.newton_lambda;
                    }
                    const Eigen::VectorXd s = A.colPivHouseholderQr().solve(b);
                    for (std::size_t i = 0; i < d; ++i) step[i] = s(i);
                    break;
                }
                default:
                    fail(ErrorKind::Internal, "unhandled optimizer method");
            }
        }

        std::vector<double> next(d);
        for (std::size_t i = 0; i < d; ++i) next[i] = x[i] - step[i];
        if (!all_finite(next)) {
            log_.diagnostics.push_back("update is not finite at iteration " + std::to_string(k + 1));
            return finish(std::string(kStopNonFinite));
        }
        const double fnext = evaluate(next);
        if (!std::isfinite(fnext)) {
            log_.diagnostics.push_back("objective is not finite at iteration " + std::to_string(k + 1));
            record(k + 1, fnext, next);
            return finish(std::string(kStopNonFinite));
        }
        record(k + 1, fnext, next);
        const double dx = inf_norm_diff(next, x);
        const double df = std::abs(fnext - fx);
        x = std::move(next);
        fx = fnext;
        // A single SPSA step is a random projection of the gradient, so a small
        // change says nothing about convergence; SPSA runs its full budget.
        if (config_.method == OptimizerMethod::SPSA) continue;
        if (df < config_.ftol) return finish(std::string(kStopFtol));
        if (dx < config_.xtol) return finish(std::string(kStopXtol));
    }
    return finish(std::string(kStopMaxiter));
}

OptimizeResult Loop::run_nelder_mead(std::vector<double> x0) {
    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
    const std::size_t d = x0.size();

    std::vector<std::vector<double>> simplex(d + 1, x0);
    for (std::size_t i = 0; i < d; ++i) simplex[i + 1][i] += std::max(0.05 * std::abs(x0[i]), 0.00025);
    std::vector<double> values(d + 1);
    for (std::size_t v = 0; v <= d; ++v) {
        values[v] = evaluate(simplex[v]);
        if (std::isnan(values[v]) || (v == 0 && !std::isfinite(values[v]))) {
            log_.diagnostics.push_back("objective is not finite on the initial simplex");
            return finish(std::string(kStopNonFinite));
        }
    }

    std::vector<std::size_t> order(d + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        std::vector<std::vector<double>> s(d + 1);
        std::vector<double> f(d + 1);
        for (std::size_t i = 0; i <= d; ++i) {
            s[i] = std::move(simplex[order[i]]);
            f[i] = values[order[i]];
        }
        simplex = std::move(s);
        values = std::move(f);
    };
    auto combine = [&](const std::vector<double> &c, const std::vector<double> &x, double t) {
        std::vector<double> out(d);
        for (std::size_t i = 0; i < d; ++i) out[i] = c[i] + t * (x[i] - c[i]);
        return out;
    };
    auto nonfinite = [&](double f, int k) {
        if (!std::isnan(f)) return false;
        log_.diagnostics.push_back("objective is NaN at iteration " + std::to_string(k));
        return true;
    };

    sort_simplex();
    for (int k = 1; k <= config_.effective_maxiter(); ++k) {
        std::vector<double> centroid(d, 0.0);
        for (std::size_t v = 0; v < d; ++v)
            for (std::size_t i = 0; i < d; ++i) centroid[i] += simplex[v][i] / static_cast<double>(d);

        const auto &worst = simplex[d];
        const auto xr = combine(centroid, worst, -kReflect);
        const double fr = evaluate(xr);
        if (nonfinite(fr, k)) return finish(std::string(kStopNonFinite));

        if (fr < values[0]) {
            const auto xe = combine(centroid, worst, -kReflect * kExpand);
            const double fe = evaluate(xe);
            if (nonfinite(fe, k)) return finish(std::string(kStopNonFinite));
            if (fe < fr) {
                simplex[d] = xe;
                values[d] = fe;
            } else {
                simplex[d] = xr;
                values[d] = fr;
            }
        } else if (fr < values[d - 1]) {
            simplex[d] = xr;
            values[d] = fr;
        } else {
            bool shrink = false;
            if (fr < values[d]) {
                const auto xc = combine(centroid, worst, -kReflect * kContract);
                const double fc = evaluate(xc);
                if (nonfinite(fc, k)) return finish(std::string(kStopNonFinite));
                if (fc <= fr) {
                    simplex[d] = xc;
                    values[d] = fc;
                } else {
                    shrink = true;
                }
            } else {
                const auto xcc = combine(centroid, worst, kContract);
                const double fcc = evaluate(xcc);
                if (nonfinite(fcc, k)) return finish(std::string(kStopNonFinite));
                if (fcc < values[d]) {
                    simplex[d] = xcc;
                    values[d] = fcc;
                } else {
                    shrink = true;
                }
            }
            if (shrink) {
                for (std::size_t v = 1; v <= d; ++v) {
                    simplex[v] = combine(simplex[0], simplex[v], kShrink);
                    values[v] = evaluate(simplex[v]);
                    if (nonfinite(values[v], k)) return finish(std::string(kStopNonFinite));
                }
            }
        }
        sort_simplex();
        record(k, values[0], simplex[0]);

        double fspread = 0.0, xspread = 0.0;
        for (std::size_t v = 1; v <= d; ++v) {
            fspread = std::max(fspread, std::abs(values[v] - values[0]));
            xspread = std::max(xspread, inf_norm_diff(simplex[v], simplex[0]));
        }
        if (fspread <= config_.ftol && xspread <= config_.xtol) {
            return finish(std::string(kStopXtol));
        }
    }
    return finish(std::string(kStopMaxiter));
}

}  // namespace

OptimizeResult minimize(const Objective &objective, std::vector<double> x0, const OptimizerConfig &config,
                        const MinimizeHooks &hooks) {
    Loop loop(objective, config, hooks);
    return loop.run(std::move(x0));
}

OptimizeResult optimize(QAOABackend &backend, const VariationalParams &initial, const OptimizerConfig &config) {
    const ParamType type = initial.type;
    Objective objective = [&backend, type](std::span<const double> x) {
        return backend.expectation(VariationalParams{type, {x.begin(), x.end()}});
    };
    MinimizeHooks hooks;
    hooks.counters = [&backend] { return backend.counters(); };
    if (config.gradient_method == GradientMethod::ParameterShift &&
        config.method != OptimizerMethod::NelderMead && config.method != OptimizerMethod::SPSA) {
        if (type == ParamType::Annealing) {
            fail(ErrorKind::Unsupported, "parameter-shift gradients are not supported for the annealing parametrisation");
        }
        hooks.gradient = [&backend, type](std::span<const double> x) {
            return grad_parameter_shift(backend, VariationalParams{type, {x.begin(), x.end()}});
        };
    }
    return minimize(objective, initial.raw, config, hooks);
}

}  // namespace qaoa
