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

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qaoa/ansatz.hpp"
#include "qaoa/problems.hpp"

namespace qaoa {

using Complex = std::complex<double>;

inline constexpr int kDefaultSimulatorLimit = 26;

/// 2^n amplitudes; basis index i carries qubit j in bit j.
class StateVector {
   public:
    /// |0...0> on n qubits.
    explicit StateVector(int n);
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    int n() const noexcept { return n_; }
    std::size_t dim() const noexcept { return amplitudes_.size(); }
    std::span<Complex> amplitudes() noexcept { return amplitudes_; }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm_squared() const;
    std::vector<double> probabilities() const;

   private:
    int n_ = 0;
    std::vector<Complex> amplitudes_;
};

/// Support mask and coefficient of one Z or ZZ term.
struct CostTerm {
    std::uint64_t mask;
    double coeff;
};

/// Diagonal of the cost Hamiltonian in the computational basis.
struct DiagonalCost {
    int n = 0;
    std::vector<double> energies;
    std::vector<CostTerm> terms;  // linear terms then pair terms, canonical problem order
    double constant = 0.0;
    std::size_t linear_count = 0;
};

struct InitialState {
    bool init_hadamard = true;
    std::optional<std::vector<Complex>> prepend_state;

    friend bool operator==(const InitialState &, const InitialState &) = default;
};

struct BackendConfig {
    std::uint64_t n_shots = 0;  // 0: exact expectation from amplitudes
    double cvar_alpha = 1.0;
    InitialState initial;
    std::uint64_t seed = 0;
    int threads = 1;
    int max_qubits = kDefaultSimulatorLimit;

    void validate() const;
};

struct MeasurementOutcomes {
    int n = 0;
    std::map<std::uint64_t, std::uint64_t> counts;  // basis index -> count
    std::uint64_t n_shots = 0;

    std::map<std::string, std::uint64_t> bitstring_counts() const;
};

/// Sparse probability distribution over basis states, sorted by index.
struct Distribution {
    int n = 0;
    std::vector<std::pair<std::uint64_t, double>> entries;

    static Distribution from_state(const StateVector &state);
    static Distribution from_counts(const MeasurementOutcomes &outcomes);
    double total() const;
};

DiagonalCost precompute_diagonal(const IsingProblem &problem, int max_qubits = kDefaultSimulatorLimit, int threads = 1);

StateVector prepare_initial_state(int n, const InitialState &initial);

/// Multiplies amplitude i by exp(-i phi_i), phi_i = sum_t gamma_t c_t (-1)^popcount(i & mask_t).
/// Uses the energy diagonal directly when every gamma is equal.
void apply_cost_layer(StateVector &state, const LayerAngles &angles, const DiagonalCost &cost, int threads = 1);

/// Same as apply_cost_layer but always evaluates the phase term by term.
void apply_cost_layer_per_term(StateVector &state, const LayerAngles &angles, const DiagonalCost &cost, int threads = 1);

/// X mixer: exp(+i beta_j X_j) for each qubit in ascending order.
/// XY mixer: exp(+i beta_e (X_j X_k + Y_j Y_k) / 2) for each edge in lexicographic order.
void apply_mixer_layer(StateVector &state, std::span<const double> betas, const MixerSpec &mixer, int threads = 1);

StateVector run_circuit(const IsingProblem &problem, const AnsatzSpec &spec, const VariationalParams &params,
                        const InitialState &initial = {}, int threads = 1);
StateVector run_circuit(const DiagonalCost &cost, const AnsatzSpec &spec, const PerLayerAngles &angles,
                        const InitialState &initial = {}, int threads = 1);

double expectation_exact(const StateVector &state, const DiagonalCost &cost, int threads = 1);

/// CVaR of the exact distribution: mean energy of the lowest alpha fraction of probability mass.
double cvar_exact(const StateVector &state, const DiagonalCost &cost, double alpha);

MeasurementOutcomes sample(const StateVector &state, std::uint64_t n_shots, std::uint64_t seed);

/// Mean energy over all shots, summed in basis-index order.
double sample_mean(const MeasurementOutcomes &outcomes, const DiagonalCost &cost);

/// Mean of the ceil(alpha * n_shots) lowest sampled energies. With every shot kept
/// this is exactly sample_mean.
double expectation_from_samples(const MeasurementOutcomes &outcomes, const DiagonalCost &cost, double cvar_alpha);

struct EvaluationCounters {
    std::uint64_t circuit_evaluations = 0;
    std::uint64_t shots = 0;
};

/// A compiled QAOA circuit plus backend properties. Each expectation call
/// simulates the circuit and either reads the exact expectation or samples
/// `n_shots` measurements with a seed derived from the evaluation counter.
class QAOABackend {
   public:
    QAOABackend(IsingProblem problem, AnsatzSpec spec, BackendConfig config);

    const IsingProblem &problem() const noexcept { return problem_; }
    const AnsatzSpec &spec() const noexcept { return spec_; }
    const BackendConfig &config() const noexcept { return config_; }
    const DiagonalCost &diagonal() const noexcept { return cost_; }
    const EvaluationCounters &counters() const noexcept { return counters_; }

    StateVector wavefunction(const VariationalParams &params) const;
    StateVector wavefunction(const PerLayerAngles &angles) const;

    double expectation(const VariationalParams &params);
    double expectation(const PerLayerAngles &angles);

    /// Exact distribution when n_shots is 0, otherwise a fresh seeded sample.
    Distribution distribution(const VariationalParams &params);

    /// Every basis index seen in a measurement so far (shot mode only).
    const std::vector<std::uint64_t> &observed() const noexcept { return observed_; }

    void set_record_intermediate(bool on) noexcept { record_intermediate_ = on; }
    const std::vector<Distribution> &intermediate() const noexcept { return intermediate_; }

   private:
    double evaluate(const StateVector &state);
    std::uint64_t next_seed();
    void record_observed(const MeasurementOutcomes &outcomes);

    IsingProblem problem_;
    AnsatzSpec spec_;
    BackendConfig config_;
    DiagonalCost cost_;
    EvaluationCounters counters_;
    std::vector<std::uint64_t> observed_;
    bool record_intermediate_ = false;
    std::vector<Distribution> intermediate_;
};

/// SplitMix64 step; used to derive independent seeds deterministically.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace qaoa
