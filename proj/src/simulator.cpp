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

#include "qaoa/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "parallel.hpp"

namespace qaoa {

using detail::deterministic_sum;
using detail::parallel_for;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int n) : n_(n) {
    if (n < 1 || n > 62) fail(ErrorKind::Input, "qubit count must lie in [1, 62]");
    amplitudes_.assign(std::size_t{1} << n, Complex{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        fail(ErrorKind::Input, "state dimension " + std::to_string(dim) + " is not a power of two");
    }
    StateVector s(1);
    s.n_ = std::countr_zero(dim);
    s.amplitudes_ = std::move(amplitudes);
    return s;
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto &a : amplitudes_) total += std::norm(a);
    return total;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> out(amplitudes_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::norm(amplitudes_[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Configuration and distributions

void BackendConfig::validate() const {
    if (!(cvar_alpha > 0.0 && cvar_alpha <= 1.0)) {
        fail(ErrorKind::Input, "cvar_alpha must lie in (0, 1], got " + std::to_string(cvar_alpha));
    }
    if (threads < 1) fail(ErrorKind::Input, "thread count must be positive");
    if (max_qubits < 1 || max_qubits > 40) fail(ErrorKind::Input, "simulator qubit limit must lie in [1, 40]");
}

std::map<std::string, std::uint64_t> MeasurementOutcomes::bitstring_counts() const {
    std::map<std::string, std::uint64_t> out;
    for (const auto &[index, count] : counts) out.emplace(index_to_bits(index, n), count);
    return out;
}

Distribution Distribution::from_state(const StateVector &state) {
    Distribution d;
    d.n = state.n();
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double p = std::norm(state[i]);
        if (p > 0.0) d.entries.emplace_back(i, p);
    }
    return d;
}

Distribution Distribution::from_counts(const MeasurementOutcomes &outcomes) {
    Distribution d;
    d.n = outcomes.n;
    if (outcomes.n_shots == 0) return d;
    for (const auto &[index, count] : outcomes.counts) {
        d.entries.emplace_back(index, static_cast<double>(count) / static_cast<double>(outcomes.n_shots));
    }
    return d;
}

double Distribution::total() const {
    double t = 0.0;
    for (const auto &[i, p] : entries) t += p;
    return t;
}

// ---------------------------------------------------------------------------
// Kernels

DiagonalCost precompute_diagonal(const IsingProblem &problem, int max_qubits, int threads) {
    const int n = problem.n();
    if (n > max_qubits) {
        fail(ErrorKind::Capacity, "simulator limited to " + std::to_string(max_qubits) + " qubits, problem has " +
                                      std::to_string(n));
    }
    DiagonalCost cost;
    cost.n = n;
    cost.constant = problem.constant();
    cost.linear_count = problem.linear().size();
    for (const auto &t : problem.linear()) cost.terms.push_back({std::uint64_t{1} << t.index, t.coeff});
    for (const auto &t : problem.quadratic()) {
        cost.terms.push_back({(std::uint64_t{1} << t.first) | (std::uint64_t{1} << t.second), t.coeff});
    }
    cost.energies.resize(std::size_t{1} << n);
    parallel_for(cost.energies.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) cost.energies[i] = problem.energy(static_cast<std::uint64_t>(i));
    });
    return cost;
}

StateVector prepare_initial_state(int n, const InitialState &initial) {
    StateVector state(n);
    if (initial.prepend_state) {
        const auto &amps = *initial.prepend_state;
        if (amps.size() != state.dim()) {
            fail(ErrorKind::Input, "prepend_state has dimension " + std::to_string(amps.size()) + ", expected " +
                                       std::to_string(state.dim()));
        }
        double norm = 0.0;
        for (const auto &a : amps) norm += std::norm(a);
        if (!(std::abs(std::sqrt(norm) - 1.0) <= 1e-8)) {
            fail(ErrorKind::Input, "prepend_state is not normalized (norm " + std::to_string(std::sqrt(norm)) + ")");
        }
        std::copy(amps.begin(), amps.end(), state.amplitudes().begin());
    }
    if (initial.init_hadamard) {
        auto amps = state.amplitudes();
        const double r = std::numbers::sqrt2 / 2.0;
        for (int q = 0; q < n; ++q) {
            const std::size_t bit = std::size_t{1} << q;
            for (std::size_t i = 0; i < amps.size(); ++i) {
                if (i & bit) continue;
                const Complex a = amps[i], b = amps[i | bit];
                amps[i] = r * (a + b);
                amps[i | bit] = r * (a - b);
            }
        }
    }
    return state;
}

namespace {

void check_layer_shape(const LayerAngles &angles, const DiagonalCost &cost) {
    if (angles.gamma_linear.size() != cost.linear_count ||
        angles.gamma_linear.size() + angles.gamma_quadratic.size() != cost.terms.size()) {
        fail(ErrorKind::Input, "cost layer angles do not match the problem's terms");
    }
}

double term_angle(const LayerAngles &angles, std::size_t t, std::size_t linear_count) {
    return t < linear_count ? angles.gamma_linear[t] : angles.gamma_quadratic[t - linear_count];
}

}  // namespace

void apply_cost_layer_per_term(StateVector &state, const LayerAngles &angles, const DiagonalCost &cost, int threads) {
    check_layer_shape(angles, cost);
    std::vector<CostTerm> weighted;
    for (std::size_t t = 0; t < cost.terms.size(); ++t) {
        const double w = term_angle(angles, t, cost.linear_count) * cost.terms[t].coeff;
        if (w != 0.0) weighted.push_back({cost.terms[t].mask, w});
    }
    if (weighted.empty()) return;
    auto amps = state.amplitudes();
    parallel_for(amps.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double phase = 0.0;
            for (const auto &t : weighted) {
                phase += (std::popcount(static_cast<std::uint64_t>(i) & t.mask) & 1) ? -t.coeff : t.coeff;
            }
            amps[i] *= std::polar(1.0, -phase);
        }
    });
}

void apply_cost_layer(StateVector &state, const LayerAngles &angles, const DiagonalCost &cost, int threads) {
    check_layer_shape(angles, cost);
    if (cost.terms.empty()) return;
    const double gamma = term_angle(angles, 0, cost.linear_count);
    bool uniform = true;
    for (std::size_t t = 1; t < cost.terms.size() && uniform; ++t) uniform = term_angle(angles, t, cost.linear_count) == gamma;
    if (!uniform) {
        apply_cost_layer_per_term(state, angles, cost, threads);
        return;
    }
    if (gamma == 0.0) return;
    auto amps = state.amplitudes();
    parallel_for(amps.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) amps[i] *= std::polar(1.0, -gamma * (cost.energies[i] - cost.constant));
    });
}

namespace {

// Index of the k-th basis state whose bit `pos` is zero.
inline std::size_t insert_zero(std::size_t k, int pos) {
    const std::size_t low = k & ((std::size_t{1} << pos) - 1);
    return ((k >> pos) << (pos + 1)) | low;
}

void rotate_x(std::span<Complex> amps, int qubit, double beta, int threads) {
    const Complex c{std::cos(beta), 0.0};
    const Complex is{0.0, std::sin(beta)};
    const std::size_t bit = std::size_t{1} << qubit;
    parallel_for(amps.size() / 2, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const std::size_t i = insert_zero(k, qubit);
            const Complex a = amps[i], b = amps[i | bit];
            amps[i] = c * a + is * b;
            amps[i | bit] = is * a + c * b;
        }
    });
}

void rotate_xy(std::span<Complex> amps, int j, int k, double beta, int threads) {
    const Complex c{std::cos(beta), 0.0};
    const Complex is{0.0, std::sin(beta)};
    const int lo = std::min(j, k), hi = std::max(j, k);
    const std::size_t bj = std::size_t{1} << j, bk = std::size_t{1} << k;
    parallel_for(amps.size() / 4, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t m = begin; m < end; ++m) {
            const std::size_t base = insert_zero(insert_zero(m, lo), hi);
            const Complex a = amps[base | bj], b = amps[base | bk];
            amps[base | bj] = c * a + is * b;
            amps[base | bk] = is * a + c * b;
        }
    });
}

}  // namespace

void apply_mixer_layer(StateVector &state, std::span<const double> betas, const MixerSpec &mixer, int threads) {
    const int n = state.n();
    mixer.validate(n);
    auto amps = state.amplitudes();
    if (mixer.kind == MixerKind::X) {
        if (betas.size() != static_cast<std::size_t>(n)) {
            fail(ErrorKind::Input, "X mixer needs " + std::to_string(n) + " angles, got " + std::to_string(betas.size()));
        }
        for (int q = 0; q < n; ++q) {
            if (betas[q] != 0.0) rotate_x(amps, q, betas[q], threads);
        }
        return;
    }
    const auto edges = mixer.resolved_edges(n);
    if (betas.size() != edges.size()) {
        fail(ErrorKind::Input, "XY mixer needs " + std::to_string(edges.size()) + " angles, got " + std::to_string(betas.size()));
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (betas[e] != 0.0) rotate_xy(amps, edges[e].first, edges[e].second, betas[e], threads);
    }
}

StateVector run_circuit(const DiagonalCost &cost, const AnsatzSpec &spec, const PerLayerAngles &angles,
                        const InitialState &initial, int threads) {
    StateVector state = prepare_initial_state(cost.n, initial);
    for (const auto &layer : angles.layers) {
        apply_cost_layer(state, layer, cost, threads);
        apply_mixer_layer(state, layer.beta, spec.mixer, threads);
    }
    return state;
}

StateVector run_circuit(const IsingProblem &problem, const AnsatzSpec &spec, const VariationalParams &params,
                        const InitialState &initial, int threads) {
    const auto angles = expand_params(spec, params, problem);
    const auto cost = precompute_diagonal(problem, kDefaultSimulatorLimit, threads);
    return run_circuit(cost, spec, angles, initial, threads);
}

double expectation_exact(const StateVector &state, const DiagonalCost &cost, int threads) {
    if (state.dim() != cost.energies.size()) fail(ErrorKind::Input, "state and cost dimensions differ");
    const auto amps = state.amplitudes();
    return deterministic_sum(amps.size(), threads, [&](std::size_t i) { return std::norm(amps[i]) * cost.energies[i]; });
}

double cvar_exact(const StateVector &state, const DiagonalCost &cost, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorKind::Input, "cvar_alpha must lie in (0, 1]");
    if (state.dim() != cost.energies.size()) fail(ErrorKind::Input, "state and cost dimensions differ");
    if (alpha == 1.0) return expectation_exact(state, cost);
    std::vector<std::pair<double, double>> levels;  // (energy, probability)
    levels.reserve(state.dim());
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double p = std::norm(state[i]);
        if (p > 0.0) levels.emplace_back(cost.energies[i], p);
    }
    std::sort(levels.begin(), levels.end());
    double mass = 0.0, acc = 0.0;
    for (const auto &[e, p] : levels) {
        const double take = std::min(p, alpha - mass);
        if (take <= 0.0) break;
        acc += take * e;
        mass += take;
    }
    return acc / mass;
}

MeasurementOutcomes sample(const StateVector &state, std::uint64_t n_shots, std::uint64_t seed) {
    if (n_shots < 1) fail(ErrorKind::Input, "sampling needs at least one shot");
    std::vector<double> cumulative(state.dim());
    double running = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double p = std::norm(state[i]);
        if (p > 0.0) last_nonzero = i;
        running += p;
        cumulative[i] = running;
    }
    if (!(running > 0.0)) fail(ErrorKind::Input, "cannot sample from a zero state");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, running);
    MeasurementOutcomes out;
    out.n = state.n();
    out.n_shots = n_shots;
    for (std::uint64_t s = 0; s < n_shots; ++s) {
        const double u = uniform(rng);
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        std::size_t index = it == cumulative.end() ? last_nonzero : static_cast<std::size_t>(it - cumulative.begin());
        ++out.counts[index];
    }
    return out;
}

double sample_mean(const MeasurementOutcomes &outcomes, const DiagonalCost &cost) {
    if (outcomes.counts.empty() || outcomes.n_shots == 0) fail(ErrorKind::Input, "no measurement outcomes");
    double acc = 0.0;
    std::uint64_t total = 0;
    for (const auto &[index, count] : outcomes.counts) {
        if (index >= cost.energies.size()) fail(ErrorKind::Bounds, "outcome index outside the cost diagonal");
        acc += static_cast<double>(count) * cost.energies[index];
        total += count;
    }
    if (total != outcomes.n_shots) fail(ErrorKind::Input, "counts do not sum to n_shots");
    return acc / static_cast<double>(total);
}

double expectation_from_samples(const MeasurementOutcomes &outcomes, const DiagonalCost &cost, double cvar_alpha) {
    if (!(cvar_alpha > 0.0 && cvar_alpha <= 1.0)) fail(ErrorKind::Input, "cvar_alpha must lie in (0, 1]");
    if (outcomes.counts.empty() || outcomes.n_shots == 0) fail(ErrorKind::Input, "no measurement outcomes");
    std::vector<std::pair<double, std::uint64_t>> levels;
    std::uint64_t total = 0;
    for (const auto &[index, count] : outcomes.counts) {
        if (index >= cost.energies.size()) fail(ErrorKind::Bounds, "outcome index outside the cost diagonal");
        levels.emplace_back(cost.energies[index], count);
        total += count;
    }
    if (total != outcomes.n_shots) fail(ErrorKind::Input, "counts do not sum to n_shots");
    std::sort(levels.begin(), levels.end());

    // Guard against alpha * N landing a rounding error above an integer.
    const double target = cvar_alpha * static_cast<double>(total);
    auto keep = static_cast<std::uint64_t>(std::ceil(target - 1e-9 * target));
    keep = std::clamp<std::uint64_t>(keep, 1, total);
    if (keep == total) return sample_mean(outcomes, cost);

    double acc = 0.0;
    std::uint64_t taken = 0;
    for (const auto &[e, count] : levels) {
        const std::uint64_t take = std::min(count, keep - taken);
        acc += static_cast<double>(take) * e;
        taken += take;
        if (taken == keep) break;
    }
    return acc / static_cast<double>(keep);
}

// ---------------------------------------------------------------------------
// QAOABackend

QAOABackend::QAOABackend(IsingProblem problem, AnsatzSpec spec, BackendConfig config)
    : problem_(std::move(problem)), spec_(std::move(spec)), config_(std::move(config)) {
    config_.validate();
    spec_.validate();
    spec_.mixer.validate(problem_.n());
    cost_ = precompute_diagonal(problem_, config_.max_qubits, config_.threads);
    // Fail early on a bad initial state rather than inside the loop.
    (void)prepare_initial_state(problem_.n(), config_.initial);
}

StateVector QAOABackend::wavefunction(const PerLayerAngles &angles) const {
    return run_circuit(cost_, spec_, angles, config_.initial, config_.threads);
}

StateVector QAOABackend::wavefunction(const VariationalParams &params) const {
    return wavefunction(expand_params(spec_, params, problem_));
}

void QAOABackend::record_observed(const MeasurementOutcomes &outcomes) {
    const auto middle = static_cast<std::ptrdiff_t>(observed_.size());
    for (const auto &[index, count] : outcomes.counts) observed_.push_back(index);
    std::inplace_merge(observed_.begin(), observed_.begin() + middle, observed_.end());
    observed_.erase(std::unique(observed_.begin(), observed_.end()), observed_.end());
}

std::uint64_t QAOABackend::next_seed() { return mix_seed(config_.seed, counters_.circuit_evaluations); }

double QAOABackend::evaluate(const StateVector &state) {
    const std::uint64_t seed = next_seed();
    ++counters_.circuit_evaluations;
    if (config_.n_shots == 0) {
        if (record_intermediate_) intermediate_.push_back(Distribution::from_state(state));
        return config_.cvar_alpha == 1.0 ? expectation_exact(state, cost_, config_.threads)
                                         : cvar_exact(state, cost_, config_.cvar_alpha);
    }
    const auto outcomes = sample(state, config_.n_shots, seed);
    counters_.shots += config_.n_shots;
    record_observed(outcomes);
    if (record_intermediate_) intermediate_.push_back(Distribution::from_counts(outcomes));
    return expectation_from_samples(outcomes, cost_, config_.cvar_alpha);
}

double QAOABackend::expectation(const PerLayerAngles &angles) { return evaluate(wavefunction(angles)); }

double QAOABackend::expectation(const VariationalParams &params) { return evaluate(wavefunction(params)); }

Distribution QAOABackend::distribution(const VariationalParams &params) {
    const auto state = wavefunction(params);
    const std::uint64_t seed = next_seed();
    ++counters_.circuit_evaluations;
    if (config_.n_shots == 0) return Distribution::from_state(state);
    counters_.shots += config_.n_shots;
    const auto outcomes = sample(state, config_.n_shots, seed);
    record_observed(outcomes);
    return Distribution::from_counts(outcomes);
}

}  // namespace qaoa
