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
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qaoa/problems.hpp"

namespace qaoa {

enum class ParamType { Standard, StandardWithBias, Extended, Fourier, Annealing };
enum class InitType { Ramp, Rand, Custom };
enum class MixerKind { X, XY };

std::string_view to_string(ParamType type);
std::string_view to_string(InitType type);
std::string_view to_string(MixerKind kind);
ParamType parse_param_type(std::string_view name);
InitType parse_init_type(std::string_view name);
MixerKind parse_mixer_kind(std::string_view name);

using Edge = std::pair<int, int>;

/// Mixer Hamiltonian. The X mixer has one term per qubit. The XY mixer has one
/// hopping term per edge; without an explicit edge list it couples all pairs.
struct MixerSpec {
    MixerKind kind = MixerKind::X;
    std::optional<std::vector<Edge>> edges;

    static MixerSpec x() { return {}; }
    static MixerSpec xy() { return {MixerKind::XY, std::nullopt}; }
    static MixerSpec xy(std::vector<Edge> edges) { return {MixerKind::XY, std::move(edges)}; }

    /// Throws if edges are out of range, self-loops, or attached to an X mixer.
    void validate(int n) const;
    /// Number of mixer terms on n qubits.
    std::size_t term_count(int n) const;
    /// XY edges on n qubits, canonical (j < k) and sorted lexicographically.
    std::vector<Edge> resolved_edges(int n) const;

    friend bool operator==(const MixerSpec &, const MixerSpec &) = default;
};

/// Circuit properties: depth, parametrisation family, initialisation strategy and mixer.
struct AnsatzSpec {
    int p = 1;
    ParamType param_type = ParamType::Standard;
    InitType init_type = InitType::Ramp;
    MixerSpec mixer;
    std::optional<int> fourier_q;
    std::optional<double> total_annealing_time;  // defaults to 0.7 p

    double annealing_time() const { return total_annealing_time.value_or(0.7 * p); }
    void validate() const;

    friend bool operator==(const AnsatzSpec &, const AnsatzSpec &) = default;
};

struct VariationalParams {
    ParamType type = ParamType::Standard;
    std::vector<double> raw;

    friend bool operator==(const VariationalParams &, const VariationalParams &) = default;
};

/// Angles of one layer in the fully extended space: one per cost term
/// (linear terms then pair terms, in the problem's canonical order) and one
/// per mixer term.
struct LayerAngles {
    std::vector<double> gamma_linear;
    std::vector<double> gamma_quadratic;
    std::vector<double> beta;

    friend bool operator==(const LayerAngles &, const LayerAngles &) = default;
};

struct PerLayerAngles {
    std::vector<LayerAngles> layers;

    /// Concatenation of all layers in extended raw layout.
    std::vector<double> flatten() const;
    friend bool operator==(const PerLayerAngles &, const PerLayerAngles &) = default;
};

std::size_t param_count(const AnsatzSpec &spec, const IsingProblem &problem);

/// Number of free parameters in the extended space.
std::size_t extended_param_count(const AnsatzSpec &spec, const IsingProblem &problem);

/// Raw layouts:
///   standard            [gamma_1..gamma_p, beta_1..beta_p]
///   standard_with_bias  [gamma_single_1..p, gamma_pair_1..p, beta_1..p]
///   extended            [gamma_linear (p x #linear), gamma_pair (p x #pairs), beta (p x #mixer)], layer-major blocks
///   fourier             [u_1..u_q, v_1..v_q]
///   annealing           [s_1..s_p], each s in [0, 1]
PerLayerAngles expand_params(const AnsatzSpec &spec, const VariationalParams &params, const IsingProblem &problem);

/// Chain rule through the raw -> extended map: given d f / d(extended angle)
/// in `flatten()` layout, returns d f / d(raw). Defined for every family
/// except annealing.
std::vector<double> pullback_gradient(const AnsatzSpec &spec, const IsingProblem &problem,
                                      std::span<const double> extended_gradient);

/// Extended-space raw layout helper: the extended raw vector that expands to `angles`.
VariationalParams to_extended(const PerLayerAngles &angles);

/// Fourier basis values: gamma_L = sum_k u_k sin((k - 1/2)(L - 1/2) pi / p),
///                       beta_L  = sum_k v_k cos((k - 1/2)(L - 1/2) pi / p).
double fourier_sin(int k, int layer, int p);
double fourier_cos(int k, int layer, int p);

struct InitOptions {
    std::uint64_t seed = 0;
    std::vector<double> custom;  // used when init_type is custom
};

VariationalParams init_params(const AnsatzSpec &spec, const IsingProblem &problem, const InitOptions &options = {});

}  // namespace qaoa
