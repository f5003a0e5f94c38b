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

#include "qaoa/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace qaoa {

std::string_view to_string(ParamType type) {
    switch (type) {
        case ParamType::Standard: return "standard";
        case ParamType::StandardWithBias: return "standard_w_bias";
        case ParamType::Extended: return "extended";
        case ParamType::Fourier: return "fourier";
        case ParamType::Annealing: return "annealing";
    }
    return "unknown";
}

std::string_view to_string(InitType type) {
    switch (type) {
        case InitType::Ramp: return "ramp";
        case InitType::Rand: return "rand";
        case InitType::Custom: return "custom";
    }
    return "unknown";
}

std::string_view to_string(MixerKind kind) { return kind == MixerKind::X ? "x" : "xy"; }

ParamType parse_param_type(std::string_view name) {
    if (name == "standard") return ParamType::Standard;
    if (name == "standard_w_bias" || name == "standard_with_bias") return ParamType::StandardWithBias;
    if (name == "extended") return ParamType::Extended;
    if (name == "fourier") return ParamType::Fourier;
    if (name == "annealing") return ParamType::Annealing;
    fail(ErrorKind::Input, "unknown param_type '" + std::string(name) + "'");
}

InitType parse_init_type(std::string_view name) {
    if (name == "ramp") return InitType::Ramp;
    if (name == "rand") return InitType::Rand;
    if (name == "custom") return InitType::Custom;
    fail(ErrorKind::Input, "unknown init_type '" + std::string(name) + "'");
}

MixerKind parse_mixer_kind(std::string_view name) {
    if (name == "x") return MixerKind::X;
    if (name == "xy") return MixerKind::XY;
    fail(ErrorKind::Input, "unknown mixer_hamiltonian '" + std::string(name) + "'");
}

void MixerSpec::validate(int n) const {
    if (kind == MixerKind::X) {
        if (edges.has_value()) fail(ErrorKind::Input, "the X mixer takes no edge list");
        return;
    }
    if (!edges) return;
    for (auto [j, k] : *edges) {
        if (j < 0 || k < 0 || j >= n || k >= n) {
            fail(ErrorKind::Bounds, "XY mixer edge (" + std::to_string(j) + ", " + std::to_string(k) +
                                        ") outside [0, " + std::to_string(n) + ")");
        }
        if (j == k) fail(ErrorKind::Input, "XY mixer edge (" + std::to_string(j) + ", " + std::to_string(k) + ") is a self-loop");
    }
}

std::vector<Edge> MixerSpec::resolved_edges(int n) const {
    std::vector<Edge> out;
    if (kind == MixerKind::X) return out;
    if (edges) {
        for (auto [j, k] : *edges) out.emplace_back(std::min(j, k), std::max(j, k));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    } else {
        for (int j = 0; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) out.emplace_back(j, k);
        }
    }
    return out;
}

std::size_t MixerSpec::term_count(int n) const {
    return kind == MixerKind::X ? static_cast<std::size_t>(n) : resolved_edges(n).size();
}

void AnsatzSpec::validate() const {
    if (p < 1) fail(ErrorKind::Input, "p must be at least 1, got " + std::to_string(p));
    if (param_type == ParamType::Fourier) {
        if (!fourier_q) fail(ErrorKind::Input, "fourier parametrisation requires fourier_q");
        if (*fourier_q < 1 || *fourier_q > p) {
            fail(ErrorKind::Input, "fourier_q must lie in [1, p], got " + std::to_string(*fourier_q));
        }
    } else if (fourier_q) {
        fail(ErrorKind::Input, "fourier_q is only meaningful for the fourier parametrisation");
    }
    if (total_annealing_time && !(*total_annealing_time > 0.0 && std::isfinite(*total_annealing_time))) {
        fail(ErrorKind::Input, "total_annealing_time must be positive");
    }
}

std::vector<double> PerLayerAngles::flatten() const {
    std::vector<double> out;
    for (const auto &l : layers) out.insert(out.end(), l.gamma_linear.begin(), l.gamma_linear.end());
    for (const auto &l : layers) out.insert(out.end(), l.gamma_quadratic.begin(), l.gamma_quadratic.end());
    for (const auto &l : layers) out.insert(out.end(), l.beta.begin(), l.beta.end());
    return out;
}

namespace {

struct Shape {
    std::size_t p, linear, quadratic, mixer;
    std::size_t per_layer() const { return linear + quadratic + mixer; }
};

Shape shape_of(const AnsatzSpec &spec, const IsingProblem &problem) {
    spec.validate();
    spec.mixer.validate(problem.n());
    return {static_cast<std::size_t>(spec.p), problem.linear().size(), problem.quadratic().size(),
            spec.mixer.term_count(problem.n())};
}

PerLayerAngles broadcast(const Shape &s, std::span<const double> gamma_linear, std::span<const double> gamma_pair,
                         std::span<const double> beta) {
    PerLayerAngles out;
    out.layers.resize(s.p);
    for (std::size_t l = 0; l < s.p; ++l) {
        out.layers[l].gamma_linear.assign(s.linear, gamma_linear[l]);
        out.layers[l].gamma_quadratic.assign(s.quadratic, gamma_pair[l]);
        out.layers[l].beta.assign(s.mixer, beta[l]);
    }
    return out;
}

}  // namespace

std::size_t param_count(const AnsatzSpec &spec, const IsingProblem &problem) {
    const Shape s = shape_of(spec, problem);
    switch (spec.param_type) {
        case ParamType::Standard: return 2 * s.p;
        case ParamType::StandardWithBias: return 3 * s.p;
        case ParamType::Extended: return s.p * s.per_layer();
        case ParamType::Fourier: return 2 * static_cast<std::size_t>(*spec.fourier_q);
        case ParamType::Annealing: return s.p;
    }
    fail(ErrorKind::Internal, "unhandled param_type");
}

std::size_t extended_param_count(const AnsatzSpec &spec, const IsingProblem &problem) {
    const Shape s = shape_of(spec, problem);
    return s.p * s.per_layer();
}

double fourier_sin(int k, int layer, int p) {
    return std::sin((k - 0.5) * (layer - 0.5) * std::numbers::pi / p);
}

double fourier_cos(int k, int layer, int p) {
    return std::cos((k - 0.5) * (layer - 0.5) * std::numbers::pi / p);
}

PerLayerAngles expand_params(const AnsatzSpec &spec, const VariationalParams &params, const IsingProblem &problem) {
    if (params.type != spec.param_type) {
        fail(ErrorKind::Input, "parameters are " + std::string(to_string(params.type)) + " but the ansatz is " +
                                   std::string(to_string(spec.param_type)));
    }
    const std::size_t expected = param_count(spec, problem);
    if (params.raw.size() != expected) {
        fail(ErrorKind::Input, "expected " + std::to_string(expected) + " raw parameters, got " + std::to_string(params.raw.size()));
    }
    const Shape s = shape_of(spec, problem);
    std::span<const double> raw(params.raw);
    const std::size_t p = s.p;

    switch (spec.param_type) {
        case ParamType::Standard:
            return broadcast(s, raw.subspan(0, p), raw.subspan(0, p), raw.subspan(p, p));
        case ParamType::StandardWithBias:
            return broadcast(s, raw.subspan(0, p), raw.subspan(p, p), raw.subspan(2 * p, p));
        case ParamType::Extended: {
            PerLayerAngles out;
            out.layers.resize(p);
            std::size_t offset = 0;
            for (std::size_t l = 0; l < p; ++l, offset += s.linear) {
                out.layers[l].gamma_linear.assign(raw.begin() + offset, raw.begin() + offset + s.linear);
            }
            for (std::size_t l = 0; l < p; ++l, offset += s.quadratic) {
                out.layers[l].gamma_quadratic.assign(raw.begin() + offset, raw.begin() + offset + s.quadratic);
            }
            for (std::size_t l = 0; l < p; ++l, offset += s.mixer) {
                out.layers[l].beta.assign(raw.begin() + offset, raw.begin() + offset + s.mixer);
            }
            return out;
        }
        case ParamType::Fourier: {
            const int q = *spec.fourier_q;
            std::vector<double> gamma(p, 0.0), beta(p, 0.0);
            for (std::size_t l = 0; l < p; ++l) {
                for (int k = 1; k <= q; ++k) {
                    gamma[l] += raw[k - 1] * fourier_sin(k, static_cast<int>(l) + 1, spec.p);
                    beta[l] += raw[q + k - 1] * fourier_cos(k, static_cast<int>(l) + 1, spec.p);
                }
            }
            return broadcast(s, gamma, gamma, beta);
        }
        case ParamType::Annealing: {
            const double dt = spec.annealing_time() / spec.p;
            std::vector<double> gamma(p), beta(p);
            for (std::size_t l = 0; l < p; ++l) {
                const double sl = raw[l];
                if (!(sl >= 0.0 && sl <= 1.0)) {
                    fail(ErrorKind::Domain, "annealing schedule value s_" + std::to_string(l + 1) + " = " +
                                                std::to_string(sl) + " outside [0, 1]");
                }
                gamma[l] = sl * dt;
                beta[l] = (1.0 - sl) * dt;
            }
            return broadcast(s, gamma, gamma, beta);
        }
    }
    fail(ErrorKind::Internal, "unhandled param_type");
}

std::vector<double> pullback_gradient(const AnsatzSpec &spec, const IsingProblem &problem,
                                      std::span<const double> extended_gradient) {
    const Shape s = shape_of(spec, problem);
    const std::size_t p = s.p;
    if (extended_gradient.size() != p * s.per_layer()) {
        fail(ErrorKind::Input, "extended gradient has the wrong length");
    }
    // Per-layer sums of the three extended blocks.
    std::vector<double> g_lin(p, 0.0), g_pair(p, 0.0), g_beta(p, 0.0);
    std::size_t offset = 0;
    for (std::size_t l = 0; l < p; ++l)
        for (std::size_t t = 0; t < s.linear; ++t) g_lin[l] += extended_gradient[offset++];
    for (std::size_t l = 0; l < p; ++l)
        for (std::size_t t = 0; t < s.quadratic; ++t) g_pair[l] += extended_gradient[offset++];
    for (std::size_t l = 0; l < p; ++l)
        for (std::size_t t = 0; t < s.mixer; ++t) g_beta[l] += extended_gradient[offset++];

    std::vector<double> out;
    switch (spec.param_type) {
        case ParamType::Standard:
            for (std::size_t l = 0; l < p; ++l) out.push_back(g_lin[l] + g_pair[l]);
            out.insert(out.end(), g_beta.begin(), g_beta.end());
            return out;
        case ParamType::StandardWithBias:
            out = g_lin;
            out.insert(out.end(), g_pair.begin(), g_pair.end());
            out.insert(out.end(), g_beta.begin(), g_beta.end());
            return out;
        case ParamType::Extended:
            return {extended_gradient.begin(), extended_gradient.end()};
        case ParamType::Fourier: {
            const int q = *spec.fourier_q;
            out.assign(2 * static_cast<std::size_t>(q), 0.0);
            for (int k = 1; k <= q; ++k) {
                for (std::size_t l = 0; l < p; ++l) {
                    const int layer = static_cast<int>(l) + 1;
                    out[k - 1] += (g_lin[l] + g_pair[l]) * fourier_sin(k, layer, spec.p);
                    out[q + k - 1] += g_beta[l] * fourier_cos(k, layer, spec.p);
                }
            }
            return out;
        }
        case ParamType::Annealing:
            fail(ErrorKind::Unsupported, "gradient pullback is not defined for the annealing parametrisation");
    }
    fail(ErrorKind::Internal, "unhandled param_type");
}

VariationalParams to_extended(const PerLayerAngles &angles) { return {ParamType::Extended, angles.flatten()}; }

VariationalParams init_params(const AnsatzSpec &spec, const IsingProblem &problem, const InitOptions &options) {
    const Shape s = shape_of(spec, problem);
    const std::size_t count = param_count(spec, problem);
    VariationalParams out{spec.param_type, {}};

    switch (spec.init_type) {
        case InitType::Custom:
            if (options.custom.size() != count) {
                fail(ErrorKind::Input, "custom initial parameters have length " + std::to_string(options.custom.size()) +
                                           ", expected " + std::to_string(count));
            }
            out.raw = options.custom;
            return out;

        case InitType::Rand: {
            std::mt19937_64 rng(options.seed);
            const double upper = spec.param_type == ParamType::Annealing ? 1.0 : std::numbers::pi;
            std::uniform_real_distribution<double> dist(0.0, upper);
            out.raw.resize(count);
            for (auto &v : out.raw) v = dist(rng);
            return out;
        }

        case InitType::Ramp: {
            const double dt = spec.annealing_time() / spec.p;
            const std::size_t p = s.p;
            std::vector<double> gamma(p), beta(p), fraction(p);
            for (std::size_t l = 0; l < p; ++l) {
                fraction[l] = (static_cast<double>(l) + 0.5) / static_cast<double>(p);
                gamma[l] = fraction[l] * dt;
                beta[l] = (1.0 - fraction[l]) * dt;
            }
            switch (spec.param_type) {
                case ParamType::Standard:
                    out.raw = gamma;
                    out.raw.insert(out.raw.end(), beta.begin(), beta.end());
                    break;
                case ParamType::StandardWithBias:
                    out.raw = gamma;
                    out.raw.insert(out.raw.end(), gamma.begin(), gamma.end());
                    out.raw.insert(out.raw.end(), beta.begin(), beta.end());
                    break;
                case ParamType::Extended:
                    out.raw = broadcast(s, gamma, gamma, beta).flatten();
                    break;
                case ParamType::Fourier:
                    out.raw.assign(count, 0.0);
                    out.raw[0] = dt / 2.0;
                    out.raw[count / 2] = dt / 2.0;
                    break;
                case ParamType::Annealing:
                    out.raw = fraction;
                    break;
            }
            return out;
        }
    }
    fail(ErrorKind::Internal, "unhandled init_type");
}

}  // namespace qaoa
