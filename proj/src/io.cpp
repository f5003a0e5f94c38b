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

#include "qaoa/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace qaoa {

namespace {

std::string join(const std::string &path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string type_name(const Json &j) { return j.type_name(); }

// Non-finite doubles are written as strings so they survive a round trip.
Json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

double read_number(const Json &j, const std::string &field) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw ConfigError(field, "expected a number, got " + type_name(j));
}

double read_finite(const Json &j, const std::string &field) {
    if (!j.is_number()) throw ConfigError(field, "expected a number, got " + type_name(j));
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(field, "expected a finite number");
    return v;
}

std::int64_t read_int(const Json &j, const std::string &field) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) return static_cast<std::int64_t>(v);
    }
    throw ConfigError(field, "expected an integer, got " + (j.is_number() ? j.dump() : type_name(j)));
}

int read_int32(const Json &j, const std::string &field) {
    const auto v = read_int(j, field);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw ConfigError(field, "integer out of range");
    }
    return static_cast<int>(v);
}

std::uint64_t read_uint(const Json &j, const std::string &field) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    const auto v = read_int(j, field);
    if (v < 0) throw ConfigError(field, "expected a non-negative integer");
    return static_cast<std::uint64_t>(v);
}

bool read_bool(const Json &j, const std::string &field) {
    if (!j.is_boolean()) throw ConfigError(field, "expected true or false, got " + type_name(j));
    return j.get<bool>();
}

std::string read_string(const Json &j, const std::string &field) {
    if (!j.is_string()) throw ConfigError(field, "expected a string, got " + type_name(j));
    return j.get<std::string>();
}

const Json &read_array(const Json &j, const std::string &field) {
    if (!j.is_array()) throw ConfigError(field, "expected an array, got " + type_name(j));
    return j;
}

std::vector<double> read_doubles(const Json &j, const std::string &field) {
    read_array(j, field);
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_number(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

// Wraps a JSON object, records which keys were read and rejects the rest.
class Fields {
   public:
    Fields(const Json &j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j.is_object()) throw ConfigError(path_, "expected an object, got " + type_name(j));
    }

    const Json *get(std::string_view key) {
        seen_.insert(std::string(key));
        auto it = j_.find(std::string(key));
        return it == j_.end() || it->is_null() ? nullptr : &*it;
    }
    const Json &require(std::string_view key) {
        const Json *v = get(key);
        if (!v) throw ConfigError(field(key), "required field is missing");
        return *v;
    }
    std::string field(std::string_view key) const { return join(path_, key); }
    bool has(std::string_view key) const { return j_.contains(std::string(key)) && !j_.at(std::string(key)).is_null(); }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) throw ConfigError(join(path_, it.key()), "unknown field");
        }
    }

   private:
    const Json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

// Maps an Error raised while interpreting a field to a ConfigError naming it.
template <typename Fn>
decltype(auto) as_field(const std::string &field, Fn &&fn) {
    try {
        return fn();
    } catch (const ConfigError &) {
        throw;
    } catch (const Error &e) {
        throw ConfigError(field, e.what());
    }
}

std::vector<Edge> read_edges(const Json &j, const std::string &field) {
    read_array(j, field);
    std::vector<Edge> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = field + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != 2) throw ConfigError(at, "expected a pair of spin indices");
        out.emplace_back(read_int32(j[i][0], at), read_int32(j[i][1], at));
    }
    return out;
}

AnsatzSpec read_circuit(const Json &j, const std::string &path, InitOptions &init) {
    Fields f(j, path);
    AnsatzSpec spec;
    if (auto *v = f.get("p")) spec.p = read_int32(*v, f.field("p"));
    if (auto *v = f.get("param_type")) {
        spec.param_type = as_field(f.field("param_type"), [&] { return parse_param_type(read_string(*v, f.field("param_type"))); });
    }
    if (auto *v = f.get("init_type")) {
        spec.init_type = as_field(f.field("init_type"), [&] { return parse_init_type(read_string(*v, f.field("init_type"))); });
    }
    if (auto *v = f.get("mixer_hamiltonian")) {
        spec.mixer.kind =
            as_field(f.field("mixer_hamiltonian"), [&] { return parse_mixer_kind(read_string(*v, f.field("mixer_hamiltonian"))); });
    }
    if (auto *v = f.get("mixer_edges")) spec.mixer.edges = read_edges(*v, f.field("mixer_edges"));
    if (auto *v = f.get("fourier_q")) spec.fourier_q = read_int32(*v, f.field("fourier_q"));
    if (auto *v = f.get("total_annealing_time")) spec.total_annealing_time = read_finite(*v, f.field("total_annealing_time"));
    if (auto *v = f.get("init_params")) init.custom = read_doubles(*v, f.field("init_params"));
    f.finish();

    if (spec.p < 1) throw ConfigError(f.field("p"), "must be at least 1");
    if (spec.param_type == ParamType::Fourier && !spec.fourier_q) {
        throw ConfigError(f.field("fourier_q"), "required when param_type is fourier");
    }
    if (spec.param_type != ParamType::Fourier && spec.fourier_q) {
        throw ConfigError(f.field("fourier_q"), "only allowed when param_type is fourier");
    }
    if (spec.init_type == InitType::Custom && init.custom.empty()) {
        throw ConfigError(f.field("init_params"), "required when init_type is custom");
    }
    if (spec.init_type != InitType::Custom && !init.custom.empty()) {
        throw ConfigError(f.field("init_params"), "only allowed when init_type is custom");
    }
    if (spec.mixer.edges && spec.mixer.kind != MixerKind::XY) {
        throw ConfigError(f.field("mixer_edges"), "only allowed with the xy mixer");
    }
    as_field(f.field("fourier_q"), [&] { spec.validate(); });
    return spec;
}

BackendConfig read_backend(const Json &j, const std::string &path) {
    Fields f(j, path);
    BackendConfig b;
    if (auto *v = f.get("n_shots")) b.n_shots = read_uint(*v, f.field("n_shots"));
    if (auto *v = f.get("cvar_alpha")) b.cvar_alpha = read_finite(*v, f.field("cvar_alpha"));
    if (auto *v = f.get("init_hadamard")) b.initial.init_hadamard = read_bool(*v, f.field("init_hadamard"));
    if (auto *v = f.get("prepend_state")) {
        const std::string field = f.field("prepend_state");
        read_array(*v, field);
        std::vector<Complex> amps;
        for (std::size_t i = 0; i < v->size(); ++i) {
            const auto &a = (*v)[i];
            const std::string at = field + "[" + std::to_string(i) + "]";
            if (a.is_number()) {
                amps.emplace_back(read_finite(a, at), 0.0);
            } else if (a.is_array() && a.size() == 2) {
                amps.emplace_back(read_finite(a[0], at), read_finite(a[1], at));
            } else {
                throw ConfigError(at, "expected a number or a [real, imag] pair");
            }
        }
        b.initial.prepend_state = std::move(amps);
    }
    if (auto *v = f.get("threads")) b.threads = read_int32(*v, f.field("threads"));
    if (auto *v = f.get("max_qubits")) b.max_qubits = read_int32(*v, f.field("max_qubits"));
    f.finish();
    if (!(b.cvar_alpha > 0.0 && b.cvar_alpha <= 1.0)) throw ConfigError(f.field("cvar_alpha"), "must lie in (0, 1]");
    if (b.threads < 1) throw ConfigError(f.field("threads"), "must be at least 1");
    as_field(f.field("max_qubits"), [&] { b.validate(); });
    return b;
}

OptimizerConfig read_optimizer(const Json &j, const std::string &path) {
    Fields f(j, path);
    OptimizerConfig c;
    if (auto *v = f.get("method")) {
        c.method = as_field(f.field("method"), [&] { return parse_optimizer_method(read_string(*v, f.field("method"))); });
    }
    if (auto *v = f.get("maxiter")) {
        c.maxiter = read_int32(*v, f.field("maxiter"));
        if (*c.maxiter < 1) throw ConfigError(f.field("maxiter"), "must be at least 1");
    }
    if (auto *v = f.get("jac")) {
        c.gradient_method = as_field(f.field("jac"), [&] { return parse_gradient_method(read_string(*v, f.field("jac"))); });
    }
    if (auto *v = f.get("fd_scheme")) {
        const auto s = read_string(*v, f.field("fd_scheme"));
        if (s == "central") {
            c.fd_scheme = FiniteDifferenceScheme::Central;
        } else if (s == "forward") {
            c.fd_scheme = FiniteDifferenceScheme::Forward;
        } else {
            throw ConfigError(f.field("fd_scheme"), "expected 'central' or 'forward', got '" + s + "'");
        }
    }
    if (auto *v = f.get("fd_eps")) c.fd_eps = read_finite(*v, f.field("fd_eps"));
    if (auto *v = f.get("step_size")) c.step_size = read_finite(*v, f.field("step_size"));
    if (auto *v = f.get("rmsprop_decay")) c.rmsprop_decay = read_finite(*v, f.field("rmsprop_decay"));
    if (auto *v = f.get("rmsprop_eps")) c.rmsprop_eps = read_finite(*v, f.field("rmsprop_eps"));
    if (auto *v = f.get("newton_lambda")) c.newton_lambda = read_finite(*v, f.field("newton_lambda"));
    if (auto *v = f.get("hessian_eps")) c.hessian_eps = read_finite(*v, f.field("hessian_eps"));
    if (auto *v = f.get("spsa")) {
        Fields g(*v, f.field("spsa"));
        if (auto *w = g.get("a")) c.spsa.a = read_finite(*w, g.field("a"));
        if (auto *w = g.get("c")) c.spsa.c = read_finite(*w, g.field("c"));
        if (auto *w = g.get("A")) c.spsa.A = read_finite(*w, g.field("A"));
        if (auto *w = g.get("alpha")) c.spsa.alpha = read_finite(*w, g.field("alpha"));
        if (auto *w = g.get("gamma")) c.spsa.gamma = read_finite(*w, g.field("gamma"));
        g.finish();
    }
    if (auto *v = f.get("ftol")) c.ftol = read_finite(*v, f.field("ftol"));
    if (auto *v = f.get("xtol")) c.xtol = read_finite(*v, f.field("xtol"));
    if (auto *v = f.get("optimization_progress")) c.optimization_progress = read_bool(*v, f.field("optimization_progress"));
    if (auto *v = f.get("cost_progress")) c.cost_progress = read_bool(*v, f.field("cost_progress"));
    if (auto *v = f.get("parameter_log")) c.parameter_log = read_bool(*v, f.field("parameter_log"));
    f.finish();
    as_field(path, [&] { c.validate(); });
    return c;
}

RQAOAConfig read_rqaoa(const Json &j, const std::string &path) {
    Fields f(j, path);
    RQAOAConfig c;
    if (auto *v = f.get("rqaoa_type")) {
        c.type = as_field(f.field("rqaoa_type"), [&] { return parse_rqaoa_type(read_string(*v, f.field("rqaoa_type"))); });
    }
    if (auto *v = f.get("steps")) c.steps = read_int32(*v, f.field("steps"));
    if (auto *v = f.get("n_max")) c.n_max = read_int32(*v, f.field("n_max"));
    if (auto *v = f.get("n_cutoff")) c.n_cutoff = read_int32(*v, f.field("n_cutoff"));
    f.finish();
    if (c.steps < 1) throw ConfigError(f.field("steps"), "must be at least 1");
    if (c.n_max < 1) throw ConfigError(f.field("n_max"), "must be at least 1");
    if (c.n_cutoff < 1) throw ConfigError(f.field("n_cutoff"), "must be at least 1");
    return c;
}

ResultOptions read_result_options(const Json &j, const std::string &path) {
    Fields f(j, path);
    ResultOptions r;
    if (auto *v = f.get("top_k")) r.top_k = read_int32(*v, f.field("top_k"));
    if (auto *v = f.get("record_intermediate")) r.record_intermediate = read_bool(*v, f.field("record_intermediate"));
    if (auto *v = f.get("max_distribution_entries")) {
        r.max_distribution_entries = read_uint(*v, f.field("max_distribution_entries"));
    }
    f.finish();
    if (r.top_k < 1) throw ConfigError(f.field("top_k"), "must be at least 1");
    if (r.max_distribution_entries < 1) throw ConfigError(f.field("max_distribution_entries"), "must be at least 1");
    return r;
}

GridAxis read_axis(const Json &j, const std::string &field) {
    if (!j.is_array() || j.size() != 3) throw ConfigError(field, "expected [low, high, points]");
    GridAxis a{read_finite(j[0], field + "[0]"), read_finite(j[1], field + "[1]"), read_int32(j[2], field + "[2]")};
    if (a.points < 1) throw ConfigError(field + "[2]", "must be at least 1");
    return a;
}

std::string line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

Json parse_json_text(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error &e) {
        std::string what = e.what();
        if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
        throw ConfigError("", line_column(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + what);
    }
}

IsingProblem problem_from_json(const Json &j, const std::string &path) {
    Fields f(j, path);
    if (f.has("edges")) {
        const std::string field = f.field("edges");
        const Json &edges = read_array(f.require("edges"), field);
        std::vector<WeightedEdge> list;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto &e = edges[i];
            const std::string at = field + "[" + std::to_string(i) + "]";
            if (!e.is_array() || (e.size() != 2 && e.size() != 3)) throw ConfigError(at, "expected [j, k] or [j, k, weight]");
            list.push_back({read_int32(e[0], at), read_int32(e[1], at), e.size() == 3 ? read_finite(e[2], at) : 1.0});
        }
        if (auto *v = f.get("type"); v && read_string(*v, f.field("type")) != "maxcut") {
            throw ConfigError(f.field("type"), "edges describe a maxcut problem");
        }
        f.finish();
        return as_field(field, [&] { return maxcut_to_ising(list); });
    }
    if (f.has("random")) {
        Fields g(f.require("random"), f.field("random"));
        const int n = read_int32(g.require("n"), g.field("n"));
        const double density = g.get("density") ? read_finite(*g.get("density"), g.field("density")) : 1.0;
        double low = -1.0, high = 1.0;
        if (auto *r = g.get("range")) {
            if (!r->is_array() || r->size() != 2) throw ConfigError(g.field("range"), "expected [low, high]");
            low = read_finite((*r)[0], g.field("range"));
            high = read_finite((*r)[1], g.field("range"));
        }
        const std::uint64_t seed = g.get("seed") ? read_uint(*g.get("seed"), g.field("seed")) : 0;
        g.finish();
        f.finish();
        return as_field(f.field("random"), [&] { return random_ising(n, density, low, high, seed); });
    }
    if (f.has("regular_maxcut")) {
        Fields g(f.require("regular_maxcut"), f.field("regular_maxcut"));
        const int n = read_int32(g.require("n"), g.field("n"));
        const int degree = g.get("degree") ? read_int32(*g.get("degree"), g.field("degree")) : 3;
        const std::uint64_t seed = g.get("seed") ? read_uint(*g.get("seed"), g.field("seed")) : 0;
        g.finish();
        f.finish();
        return as_field(f.field("regular_maxcut"), [&] {
            const auto edges = random_regular_graph(n, degree, seed);
            return maxcut_to_ising(edges);
        });
    }

    if (auto *v = f.get("type"); v && read_string(*v, f.field("type")) != "ising") {
        throw ConfigError(f.field("type"), "expected 'ising' when terms are given");
    }
    const int n = read_int32(f.require("n"), f.field("n"));
    std::vector<TermIndices> terms;
    std::vector<double> coeffs;
    if (auto *t = f.get("terms")) {
        const std::string field = f.field("terms");
        read_array(*t, field);
        for (std::size_t i = 0; i < t->size(); ++i) {
            const auto &term = (*t)[i];
            const std::string at = field + "[" + std::to_string(i) + "]";
            read_array(term, at);
            TermIndices idx;
            for (const auto &x : term) idx.push_back(read_int32(x, at));
            terms.push_back(std::move(idx));
        }
    }
    if (auto *c = f.get("coeffs")) coeffs = read_doubles(*c, f.field("coeffs"));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (!std::isfinite(coeffs[i])) throw ConfigError(f.field("coeffs") + "[" + std::to_string(i) + "]", "must be finite");
    }
    const double constant = f.get("constant") ? read_finite(*f.get("constant"), f.field("constant")) : 0.0;
    f.finish();
    return as_field(path, [&] { return IsingProblem::from_terms(terms, coeffs, n, constant); });
}

Json problem_to_json(const IsingProblem &problem) {
    Json j;
    j["n"] = problem.n();
    const auto [terms, coeffs] = problem.terms();
    j["terms"] = terms;
    j["coeffs"] = coeffs;
    j["constant"] = problem.constant();
    return j;
}

void apply_seed(WorkflowConfig &config, std::uint64_t seed) {
    config.seed = seed;
    config.qaoa.backend.seed = seed;
    config.qaoa.optimizer.seed = seed;
    config.qaoa.init.seed = seed;
}

WorkflowConfig workflow_config_from_json(const Json &j) {
    Fields f(j, "");
    WorkflowConfig config;
    config.problem = problem_from_json(f.require("problem"), "problem");
    if (auto *v = f.get("circuit_properties")) config.qaoa.ansatz = read_circuit(*v, "circuit_properties", config.qaoa.init);
    if (auto *v = f.get("backend_properties")) config.qaoa.backend = read_backend(*v, "backend_properties");
    if (auto *v = f.get("classical_optimizer")) config.qaoa.optimizer = read_optimizer(*v, "classical_optimizer");
    if (auto *v = f.get("rqaoa")) config.rqaoa = read_rqaoa(*v, "rqaoa");
    if (auto *v = f.get("result_properties")) config.qaoa.result = read_result_options(*v, "result_properties");
    if (auto *v = f.get("landscape")) {
        Fields g(*v, "landscape");
        if (auto *w = g.get("first")) config.landscape_first = read_axis(*w, g.field("first"));
        if (auto *w = g.get("second")) config.landscape_second = read_axis(*w, g.field("second"));
        g.finish();
    }
    const std::uint64_t seed = f.get("seed") ? read_uint(*f.get("seed"), "seed") : 0;
    f.finish();
    apply_seed(config, seed);
    return config;
}

Json distribution_to_json(const Distribution &distribution, std::uint64_t n_shots, std::size_t max_entries) {
    std::vector<std::pair<std::uint64_t, double>> kept = distribution.entries;
    if (kept.size() > max_entries) {
        std::stable_sort(kept.begin(), kept.end(), [](const auto &a, const auto &b) { return a.second > b.second; });
        kept.resize(max_entries);
    }
    std::vector<std::pair<std::string, double>> rows;
    rows.reserve(kept.size());
    for (const auto &[index, prob] : kept) rows.emplace_back(index_to_bits(index, distribution.n), prob);
    std::sort(rows.begin(), rows.end());

    Json j;
    j["n"] = distribution.n;
    j["support"] = distribution.entries.size();
    j["truncated"] = kept.size() < distribution.entries.size();
    Json values = Json::object();
    for (const auto &[bits, prob] : rows) {
        if (n_shots > 0) {
            values[bits] = static_cast<std::uint64_t>(std::llround(prob * static_cast<double>(n_shots)));
        } else {
            values[bits] = prob;
        }
    }
    j[n_shots > 0 ? "counts" : "probabilities"] = std::move(values);
    return j;
}

namespace {

Distribution distribution_from_json(const Json &j, std::uint64_t n_shots, const std::string &path) {
    Fields f(j, path);
    Distribution d;
    d.n = read_int32(f.require("n"), f.field("n"));
    f.get("support");
    f.get("truncated");
    const char *key = n_shots > 0 ? "counts" : "probabilities";
    const Json &values = f.require(key);
    if (!values.is_object()) throw ConfigError(f.field(key), "expected an object");
    for (auto it = values.begin(); it != values.end(); ++it) {
        const std::string at = f.field(key) + "." + it.key();
        const double p = n_shots > 0 ? static_cast<double>(read_uint(it.value(), at)) / static_cast<double>(n_shots)
                                     : read_number(it.value(), at);
        d.entries.emplace_back(as_field(at, [&] { return bits_to_index(it.key()); }), p);
    }
    f.finish();
    std::sort(d.entries.begin(), d.entries.end());
    return d;
}

Json angles_to_json(const PerLayerAngles &angles) {
    Json layers = Json::array();
    for (const auto &l : angles.layers) {
        Json layer;
        layer["gamma_linear"] = l.gamma_linear;
        layer["gamma_quadratic"] = l.gamma_quadratic;
        layer["beta"] = l.beta;
        layers.push_back(std::move(layer));
    }
    return layers;
}

PerLayerAngles angles_from_json(const Json &j, const std::string &path) {
    read_array(j, path);
    PerLayerAngles out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        Fields f(j[i], path + "[" + std::to_string(i) + "]");
        LayerAngles l;
        l.gamma_linear = read_doubles(f.require("gamma_linear"), f.field("gamma_linear"));
        l.gamma_quadratic = read_doubles(f.require("gamma_quadratic"), f.field("gamma_quadratic"));
        l.beta = read_doubles(f.require("beta"), f.field("beta"));
        f.finish();
        out.layers.push_back(std::move(l));
    }
    return out;
}

}  // namespace

Json log_record_to_json(const IterationRecord &r) {
    Json j;
    j["iteration"] = r.iteration;
    j["cost"] = number(r.cost);
    j["best_cost"] = number(r.best_cost);
    j["function_evaluations"] = r.function_evaluations;
    j["gradient_evaluations"] = r.gradient_evaluations;
    j["circuit_evaluations"] = r.circuit_evaluations;
    j["shots"] = r.shots;
    if (!r.params.empty()) j["params"] = r.params;
    return j;
}

Json log_to_json(const OptimizationLog &log) {
    Json j;
    j["termination"] = log.termination;
    j["best_cost"] = number(log.best_cost);
    j["best_params"] = log.best_params;
    j["function_evaluations"] = log.function_evaluations;
    j["gradient_evaluations"] = log.gradient_evaluations;
    j["diagnostics"] = log.diagnostics;
    Json records = Json::array();
    for (const auto &r : log.records) records.push_back(log_record_to_json(r));
    j["history"] = std::move(records);
    return j;
}

Json qaoa_result_to_json(const QAOAResult &result, std::size_t max_distribution_entries) {
    Json j;
    j["optimal_params"] = {{"param_type", std::string(to_string(result.optimal_params.type))},
                           {"raw", result.optimal_params.raw}};
    j["optimal_angles"] = angles_to_json(result.optimal_angles);
    j["optimal_cost"] = number(result.optimal_cost);
    j["n_shots"] = result.n_shots;
    Json dist = distribution_to_json(result.final_distribution, result.n_shots, max_distribution_entries);
    dist["support"] = std::max(result.support_size, result.final_distribution.entries.size());
    dist["truncated"] = result.support_size > std::min(result.final_distribution.entries.size(), max_distribution_entries);
    j["distribution"] = std::move(dist);
    Json top = Json::array();
    for (const auto &t : result.top_k) top.push_back({{"bitstring", t.bits}, {"probability", t.probability}});
    j["top_k"] = std::move(top);
    if (result.lowest_cost) {
        j["lowest_cost"] = {{"bitstring", result.lowest_cost->bits}, {"energy", result.lowest_cost->energy}};
    } else {
        j["lowest_cost"] = nullptr;
    }
    j["counters"] = {{"circuit_evaluations", result.counters.circuit_evaluations},
                     {"shots", result.counters.shots},
                     {"function_evaluations", result.counters.function_evaluations},
                     {"gradient_evaluations", result.counters.gradient_evaluations}};
    j["optimization"] = log_to_json(result.log);
    if (!result.intermediate.empty()) {
        Json inter = Json::array();
        for (const auto &d : result.intermediate) {
            inter.push_back(distribution_to_json(d, result.n_shots, std::numeric_limits<std::size_t>::max()));
        }
        j["intermediate"] = std::move(inter);
    }
    return j;
}

QAOAResult qaoa_result_from_json(const Json &j) {
    Fields f(j, "result");
    QAOAResult r;
    {
        Fields p(f.require("optimal_params"), f.field("optimal_params"));
        r.optimal_params.type = as_field(p.field("param_type"), [&] {
            return parse_param_type(read_string(p.require("param_type"), p.field("param_type")));
        });
        r.optimal_params.raw = read_doubles(p.require("raw"), p.field("raw"));
        p.finish();
    }
    r.optimal_angles = angles_from_json(f.require("optimal_angles"), f.field("optimal_angles"));
    r.optimal_cost = read_number(f.require("optimal_cost"), f.field("optimal_cost"));
    r.n_shots = read_uint(f.require("n_shots"), f.field("n_shots"));
    const Json &dist = f.require("distribution");
    r.final_distribution = distribution_from_json(dist, r.n_shots, f.field("distribution"));
    r.support_size = read_uint(dist.at("support"), f.field("distribution.support"));
    for (const auto &t : read_array(f.require("top_k"), f.field("top_k"))) {
        r.top_k.push_back({read_string(t.at("bitstring"), f.field("top_k")), read_number(t.at("probability"), f.field("top_k"))});
    }
    if (auto *lc = f.get("lowest_cost")) {
        r.lowest_cost = LowestCost{read_string(lc->at("bitstring"), f.field("lowest_cost")),
                                   read_number(lc->at("energy"), f.field("lowest_cost"))};
    }
    {
        Fields c(f.require("counters"), f.field("counters"));
        r.counters.circuit_evaluations = read_uint(c.require("circuit_evaluations"), c.field("circuit_evaluations"));
        r.counters.shots = read_uint(c.require("shots"), c.field("shots"));
        r.counters.function_evaluations = read_uint(c.require("function_evaluations"), c.field("function_evaluations"));
        r.counters.gradient_evaluations = read_uint(c.require("gradient_evaluations"), c.field("gradient_evaluations"));
        c.finish();
    }
    {
        Fields o(f.require("optimization"), f.field("optimization"));
        auto &log = r.log;
        log.termination = read_string(o.require("termination"), o.field("termination"));
        log.best_cost = read_number(o.require("best_cost"), o.field("best_cost"));
        log.best_params = read_doubles(o.require("best_params"), o.field("best_params"));
        log.function_evaluations = read_uint(o.require("function_evaluations"), o.field("function_evaluations"));
        log.gradient_evaluations = read_uint(o.require("gradient_evaluations"), o.field("gradient_evaluations"));
        for (const auto &d : read_array(o.require("diagnostics"), o.field("diagnostics"))) {
            log.diagnostics.push_back(read_string(d, o.field("diagnostics")));
        }
        const auto &history = read_array(o.require("history"), o.field("history"));
        for (std::size_t i = 0; i < history.size(); ++i) {
            Fields h(history[i], o.field("history") + "[" + std::to_string(i) + "]");
            IterationRecord rec;
            rec.iteration = read_int32(h.require("iteration"), h.field("iteration"));
            rec.cost = read_number(h.require("cost"), h.field("cost"));
            rec.best_cost = read_number(h.require("best_cost"), h.field("best_cost"));
            rec.function_evaluations = read_uint(h.require("function_evaluations"), h.field("function_evaluations"));
            rec.gradient_evaluations = read_uint(h.require("gradient_evaluations"), h.field("gradient_evaluations"));
            rec.circuit_evaluations = read_uint(h.require("circuit_evaluations"), h.field("circuit_evaluations"));
            rec.shots = read_uint(h.require("shots"), h.field("shots"));
            if (auto *p = h.get("params")) rec.params = read_doubles(*p, h.field("params"));
            h.finish();
            log.records.push_back(std::move(rec));
        }
        o.finish();
    }
    if (auto *inter = f.get("intermediate")) {
        const auto &list = read_array(*inter, f.field("intermediate"));
        for (std::size_t i = 0; i < list.size(); ++i) {
            r.intermediate.push_back(distribution_from_json(list[i], r.n_shots, f.field("intermediate") + "[" + std::to_string(i) + "]"));
        }
    }
    f.finish();
    return r;
}

Json elimination_to_json(const EliminationRecord &record) {
    Json j;
    j["step"] = record.step;
    j["kind"] = std::string(to_string(record.kind));
    j["target"] = record.target;
    if (record.kind == EliminationKind::Pair) {
        j["reference"] = record.reference;
    } else {
        j["reference"] = nullptr;
    }
    j["sign"] = record.sign;
    j["correlation"] = record.correlation;
    return j;
}

Json rqaoa_result_to_json(const RQAOAResult &result, std::size_t max_distribution_entries) {
    Json j;
    j["bitstring"] = result.solution.bits();
    j["energy"] = result.energy;
    j["sizes"] = result.sizes;
    Json records = Json::array();
    for (const auto &r : result.records) records.push_back(elimination_to_json(r));
    j["eliminations"] = std::move(records);
    Json steps = Json::array();
    for (std::size_t s = 0; s < result.steps.size(); ++s) {
        Json step;
        step["size"] = result.steps[s].size_before;
        step["index_map"] = result.steps[s].index_map;
        step["qaoa"] = qaoa_result_to_json(result.qaoa_results[s], max_distribution_entries);
        steps.push_back(std::move(step));
    }
    j["steps"] = std::move(steps);
    j["cutoff"] = brute_force_to_json(result.cutoff_solution);
    j["warnings"] = result.warnings;
    return j;
}

Json brute_force_to_json(const BruteForceSolution &solution) {
    Json j;
    j["energy"] = solution.energy;
    Json bits = Json::array();
    for (const auto &m : solution.minimizers) bits.push_back(m.bits());
    j["bitstrings"] = std::move(bits);
    return j;
}

}  // namespace qaoa
