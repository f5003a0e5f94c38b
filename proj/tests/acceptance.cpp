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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "qaoa/io.hpp"
#include "qaoa/optimizers.hpp"
#include "qaoa/rqaoa.hpp"
#include "qaoa/workflows.hpp"

#ifndef QAOA_CLI_PATH
#error "QAOA_CLI_PATH must point at the qaoa_cli executable"
#endif

using namespace qaoa;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &why) {
        if (!ok && pass) detail = why;
        pass = pass && ok;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char *format, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

IsingProblem single_edge() { return IsingProblem::from_terms(std::vector<TermIndices>{{0, 1}}, std::vector<double>{1.0}, 2); }

Outcome analytic_fixture() {
    Outcome out;
    const auto start = Clock::now();
    QAOABackend backend(single_edge(), AnsatzSpec{}, BackendConfig{});
    double worst = 0.0;
    for (int a = 0; a < 20; ++a) {
        for (int b = 0; b < 20; ++b) {
            const double gamma = std::numbers::pi * a / 19, beta = std::numbers::pi * b / 19;
            const double e = backend.expectation(VariationalParams{ParamType::Standard, {gamma, beta}});
            worst = std::max(worst, std::abs(e + std::sin(4 * beta) * std::sin(2 * gamma)));
        }
    }
    const double t = seconds_since(start);
    out.require(worst <= 1e-9, fmt("max error %.3g", worst));
    out.require(t < 1.0, fmt("took %.3f s", t));
    if (out.pass) out.detail = fmt("400 grid points, max error %.2g, %.3f s", worst, t);
    return out;
}

Outcome oracle_equivalence() {
    Outcome out;
    const auto start = Clock::now();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + trial % 8;
        const auto problem = oracle::random_problem(n, 0.7, rng);
        AnsatzSpec spec;
        spec.p = 1 + trial % 3;
        std::vector<double> raw(param_count(spec, problem));
        for (auto &x : raw) x = angle(rng);
        const auto state = run_circuit(problem, spec, {ParamType::Standard, raw});
        double expected = 0.0;
        for (std::uint64_t z = 0; z < state.dim(); ++z) expected += std::norm(state[z]) * oracle::energy(problem, z);
        worst = std::max(worst, std::abs(expectation_exact(state, precompute_diagonal(problem)) - expected));
    }
    const double t = seconds_since(start);
    out.require(worst <= 1e-9, fmt("max error %.3g", worst));
    out.require(t < 10.0, fmt("took %.3f s", t));
    if (out.pass) out.detail = fmt("50 instances, max error %.2g, %.3f s", worst, t);
    return out;
}

Outcome gradient_correctness() {
    Outcome out;
    const auto start = Clock::now();
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const ParamType families[] = {ParamType::Standard, ParamType::StandardWithBias, ParamType::Extended,
                                  ParamType::Fourier};
    double worst = 0.0;
    int components = 0;
    for (const auto family : families) {
        for (int trial = 0; trial < 20; ++trial) {
            const int n = 2 + trial % 5;
            const auto problem = oracle::random_problem(n, 0.7, rng);
            AnsatzSpec spec;
            spec.p = 1 + trial % 3;
            spec.param_type = family;
            if (family == ParamType::Fourier) spec.fourier_q = 1 + trial % spec.p;
            if (trial % 4 == 3) spec.mixer = MixerSpec::xy();
            QAOABackend backend(problem, spec, BackendConfig{});
            std::vector<double> raw(param_count(spec, problem));
            for (auto &x : raw) x = u(rng);
            const auto shift = grad_parameter_shift(backend, {family, raw});
            CostEvaluator cost([&](std::span<const double> x) {
                return backend.expectation(VariationalParams{family, {x.begin(), x.end()}});
            });
            const auto fd = grad_finite_difference(cost, raw, 1e-5);
            for (std::size_t i = 0; i < fd.size(); ++i) worst = std::max(worst, std::abs(shift[i] - fd[i]));
            components += static_cast<int>(fd.size());
        }
    }
    const double t = seconds_since(start);
    out.require(worst <= 1e-6, fmt("max disagreement %.3g", worst));
    out.require(t < 60.0, fmt("took %.3f s", t));
    if (out.pass) out.detail = fmt("80 instances, %d components, max disagreement %.2g, %.3f s", components, worst, t);
    return out;
}

Outcome parametrisation_algebra() {
    Outcome out;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    double tied = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 6;
        const auto problem = oracle::random_problem(n, 0.7, rng);
        AnsatzSpec standard;
        standard.p = 1 + trial % 4;
        std::vector<double> raw(2 * static_cast<std::size_t>(standard.p));
        for (auto &x : raw) x = u(rng);
        const VariationalParams params{ParamType::Standard, raw};
        AnsatzSpec extended = standard;
        extended.param_type = ParamType::Extended;
        const auto a = run_circuit(problem, standard, params);
        const auto b = run_circuit(problem, extended, to_extended(expand_params(standard, params, problem)));
        for (std::size_t i = 0; i < a.dim(); ++i) tied = std::max(tied, std::abs(a[i] - b[i]));
    }
    out.require(tied <= 1e-12, fmt("extended-tied state differs by %.3g", tied));

    // Fourier with q = p is a change of basis: solve for u, v from target angles and expand back.
    double fourier = 0.0;
    const auto problem = oracle::random_problem(4, 0.8, rng);
    for (int p = 1; p <= 8; ++p) {
        std::vector<double> gammas(static_cast<std::size_t>(p)), betas(static_cast<std::size_t>(p));
        for (auto &g : gammas) g = u(rng);
        for (auto &b : betas) b = u(rng);
        Eigen::MatrixXd S(p, p), C(p, p);
        for (int layer = 0; layer < p; ++layer) {
            for (int k = 0; k < p; ++k) {
                S(layer, k) = std::sin((k + 0.5) * (layer + 0.5) * std::numbers::pi / p);
                C(layer, k) = std::cos((k + 0.5) * (layer + 0.5) * std::numbers::pi / p);
            }
        }
        const Eigen::VectorXd uvec = S.fullPivLu().solve(Eigen::Map<Eigen::VectorXd>(gammas.data(), p));
        const Eigen::VectorXd vvec = C.fullPivLu().solve(Eigen::Map<Eigen::VectorXd>(betas.data(), p));
        std::vector<double> raw(uvec.data(), uvec.data() + p);
        raw.insert(raw.end(), vvec.data(), vvec.data() + p);
        AnsatzSpec spec;
        spec.p = p;
        spec.param_type = ParamType::Fourier;
        spec.fourier_q = p;
        const auto angles = expand_params(spec, {ParamType::Fourier, raw}, problem);
        for (int layer = 0; layer < p; ++layer) {
            const auto &l = angles.layers[static_cast<std::size_t>(layer)];
            for (double g : l.gamma_quadratic) fourier = std::max(fourier, std::abs(g - gammas[static_cast<std::size_t>(layer)]));
            for (double b : l.beta) fourier = std::max(fourier, std::abs(b - betas[static_cast<std::size_t>(layer)]));
        }
    }
    out.require(fourier <= 1e-9, fmt("fourier round trip off by %.3g", fourier));

    bool counts = true;
    for (int p = 1; p <= 20; ++p) {
        AnsatzSpec spec;
        spec.p = p;
        counts = counts && param_count(spec, problem) == static_cast<std::size_t>(2 * p);
    }
    out.require(counts, "param_count(standard) != 2p");
    if (out.pass) out.detail = fmt("tied %.2g, fourier %.2g, 2p for p in [1,20]", tied, fourier);
    return out;
}

Outcome rqaoa_exactness() {
    Outcome out;
    QAOAConfig exact;

    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> mag(0.5, 2.0);
    std::bernoulli_distribution coin(0.5);
    std::vector<TermIndices> terms;
    std::vector<double> coeffs;
    for (int j = 0; j < 10; ++j) {
        terms.push_back({j});
        coeffs.push_back(coin(rng) ? mag(rng) : -mag(rng));
    }
    const auto uncoupled = IsingProblem::from_terms(terms, coeffs, 10);
    RQAOAConfig cutoff2;
    cutoff2.n_cutoff = 2;
    const auto r1 = run_rqaoa(uncoupled, exact, cutoff2);
    const double minimum = brute_force_solve(uncoupled).energy;
    out.require(r1.energy == minimum, fmt("uncoupled energy %.17g vs minimum %.17g", r1.energy, minimum));

    const auto triangle = IsingProblem::from_terms(std::vector<TermIndices>{{0, 1}, {1, 2}, {0, 2}},
                                                   std::vector<double>{1, 1, 1}, 3);
    const auto r2 = run_rqaoa(triangle, exact, cutoff2);
    out.require(r2.energy == -1.0, fmt("triangle energy %.17g", r2.energy));

    // Energy lift: random acyclic records, every reduced assignment, n up to 10.
    double worst = 0.0;
    long checks = 0;
    for (int n = 2; n <= 10; ++n) {
        for (int trial = 0; trial < 4; ++trial) {
            const auto problem = oracle::random_problem(n, 0.6, rng);
            std::vector<int> order(static_cast<std::size_t>(n));
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            std::uniform_int_distribution<int> how_many(1, n - 1);
            std::vector<EliminationRecord> records;
            for (int i = 0, count = how_many(rng); i < count; ++i) {
                const int t = order[static_cast<std::size_t>(i)];
                const int sign = coin(rng) ? 1 : -1;
                if (t == 0 || coin(rng)) {
                    records.push_back({EliminationKind::Single, t, -1, sign, 0, 0.0});
                } else {
                    std::uniform_int_distribution<int> below(0, t - 1);
                    records.push_back({EliminationKind::Pair, t, below(rng), sign, 0, 0.0});
                }
            }
            const auto reduced = reduce_problem(problem, records);
            const std::vector<ReductionStep> steps{{n, records, reduced.index_map}};
            for (std::uint64_t i = 0; i < (std::uint64_t{1} << reduced.problem.n()); ++i) {
                const auto full = reconstruct_solution(steps, SpinAssignment::from_index(i, reduced.problem.n()));
                const double scale = std::max(1.0, std::abs(oracle::energy(problem, full.index())));
                worst = std::max(worst, std::abs(oracle::energy(problem, full.index()) - oracle::energy(reduced.problem, i)) / scale);
                ++checks;
            }
        }
    }
    out.require(worst <= 8 * std::numeric_limits<double>::epsilon() * 16, fmt("lift error %.3g", worst));
    if (out.pass) out.detail = fmt("uncoupled %.6g = minimum, triangle -1, %ld lifts max rel error %.2g", r1.energy, checks, worst);
    return out;
}

Outcome rqaoa_quality() {
    Outcome out;
    const auto start = Clock::now();
    QAOAConfig config;
    config.ansatz.p = 2;
    RQAOAConfig rq;
    rq.n_cutoff = 4;
    int beat = 0;
    std::mt19937_64 rng(99);
    for (std::uint64_t instance = 0; instance < 20; ++instance) {
        const auto problem = maxcut_to_ising(random_regular_graph(10, 3, 1000 + instance));
        const auto r = run_rqaoa(problem, config, rq);
        std::uniform_int_distribution<std::uint64_t> draw(0, 1023);
        std::vector<double> energies(1000);
        for (auto &e : energies) e = problem.energy(draw(rng));
        std::nth_element(energies.begin(), energies.begin() + 500, energies.end());
        const double upper = energies[500];
        std::nth_element(energies.begin(), energies.begin() + 499, energies.begin() + 500);
        const double median = 0.5 * (energies[499] + upper);
        const double minimum = brute_force_solve(problem).energy;
        out.require(r.energy <= median, fmt("instance %d: energy %.6g above median %.6g", static_cast<int>(instance), r.energy, median));
        out.require(r.energy >= minimum, fmt("instance %d: energy %.6g below minimum %.6g", static_cast<int>(instance), r.energy, minimum));
        beat += r.energy == minimum ? 1 : 0;
    }
    const double t = seconds_since(start);
    out.require(t < 300.0, fmt("took %.1f s", t));
    if (out.pass) out.detail = fmt("20/20 at or below the random median, %d/20 optimal, %.2f s", beat, t);
    return out;
}

Outcome cvar_reduction() {
    Outcome out;
    DiagonalCost cost;
    cost.n = 2;
    cost.energies = {1, 2, 3, 4};
    const MeasurementOutcomes fixture{2, {{0, 1}, {1, 1}, {2, 1}, {3, 1}}, 4};
    const double half = expectation_from_samples(fixture, cost, 0.5);
    out.require(half == 1.5, fmt("alpha 0.5 gave %.17g", half));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto problem = oracle::random_problem(5, 0.8, rng);
        const auto diag = precompute_diagonal(problem);
        const auto state = run_circuit(problem, AnsatzSpec{}, {ParamType::Standard, {0.3 * trial, 0.2}});
        const auto samples = sample(state, 777, static_cast<std::uint64_t>(trial));
        double sum = 0.0;
        for (const auto &[index, count] : samples.counts) sum += static_cast<double>(count) * diag.energies[index];
        const double mean = sum / 777.0;
        const double cvar = expectation_from_samples(samples, diag, 1.0);
        out.require(cvar == mean, fmt("alpha 1 gave %.17g, mean %.17g", cvar, mean));
    }
    if (out.pass) out.detail = "alpha 1 equals sample mean on 20 draws, fixture alpha 0.5 = 1.5";
    return out;
}

std::string slurp(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_cli(const std::string &args) {
    const std::string command = std::string("\"") + QAOA_CLI_PATH + "\" " + args + " --quiet > /dev/null 2>&1";
    return std::system(command.c_str());
}

Outcome determinism() {
    Outcome out;
    const fs::path root = fs::temp_directory_path() / ("qaoa_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);
    {
        std::ofstream(root / "qaoa.json") << R"({
          "problem": {"random": {"n": 14, "density": 0.4, "seed": 3}},
          "circuit_properties": {"p": 2},
          "backend_properties": {"n_shots": 0},
          "classical_optimizer": {"method": "nelder_mead", "maxiter": 60, "cost_progress": true},
          "seed": 11
        })";
        std::ofstream(root / "qaoa_shots.json") << R"({
          "problem": {"random": {"n": 13, "density": 0.5, "seed": 4}},
          "circuit_properties": {"p": 1, "init_type": "rand"},
          "backend_properties": {"n_shots": 300, "cvar_alpha": 0.4},
          "classical_optimizer": {"method": "spsa", "maxiter": 30},
          "seed": 12
        })";
        std::ofstream(root / "rqaoa.json") << R"({
          "problem": {"regular_maxcut": {"n": 13, "degree": 4, "seed": 5}},
          "circuit_properties": {"p": 1},
          "classical_optimizer": {"maxiter": 40},
          "rqaoa": {"n_cutoff": 9},
          "seed": 13
        })";
    }
    struct Job {
        std::string command, config;
        std::vector<std::string> artifacts;
    };
    const std::vector<Job> jobs{{"qaoa", "qaoa.json", {"result.json", "cost_history.csv"}},
                                {"qaoa", "qaoa_shots.json", {"result.json", "cost_history.csv"}},
                                {"rqaoa", "rqaoa.json", {"result.json", "trace.jsonl"}}};
    int compared = 0;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const auto &job = jobs[j];
        std::vector<fs::path> dirs;
        const int threads[] = {1, 1, 4};
        for (int run = 0; run < 3; ++run) {
            const auto dir = root / ("job" + std::to_string(j) + "_run" + std::to_string(run));
            dirs.push_back(dir);
            const int rc = run_cli("--config \"" + (root / job.config).string() + "\" --out \"" + dir.string() + "\" " + job.command +
                                   " --threads " + std::to_string(threads[run]));
            out.require(rc == 0, job.command + " " + job.config + " exited with " + std::to_string(rc));
        }
        for (const auto &artifact : job.artifacts) {
            const auto reference = slurp(dirs[0] / artifact);
            out.require(!reference.empty(), artifact + " missing for " + job.config);
            for (int run = 1; run < 3; ++run) {
                out.require(slurp(dirs[static_cast<std::size_t>(run)] / artifact) == reference,
                            artifact + " differs for " + job.config + " (run " + std::to_string(run) + ")");
                ++compared;
            }
        }
    }
    fs::remove_all(root);
    if (out.pass) out.detail = fmt("%d artifact comparisons byte-identical (repeat runs and 1 vs 4 threads)", compared);
    return out;
}

Outcome optimizer_sanity() {
    Outcome out;
    const std::vector<double> target{1.0, -2.0, 0.5, 3.0};
    const Objective bowl = [&](std::span<const double> x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - target[i]) * (x[i] - target[i]);
        return s;
    };
    auto monotone = [](const OptimizationLog &log) {
        for (std::size_t i = 1; i < log.records.size(); ++i)
            if (log.records[i].best_cost > log.records[i - 1].best_cost) return false;
        return true;
    };
    std::string summary;
    for (const auto method : {OptimizerMethod::GradientDescent, OptimizerMethod::RMSProp, OptimizerMethod::Newton,
                              OptimizerMethod::SPSA, OptimizerMethod::NelderMead}) {
        OptimizerConfig config;
        config.method = method;
        const auto r = minimize(bowl, std::vector<double>(4, 0.0), config);
        const std::string name(to_string(method));
        out.require(r.log.best_cost <= 1e-3, name + fmt(" best cost %.3g", r.log.best_cost));
        out.require(static_cast<int>(r.log.records.size()) <= config.effective_maxiter(), name + " exceeded its budget");
        out.require(monotone(r.log), name + " best-so-far increased");
        summary += fmt("%s %.1e/%d ", name.c_str(), r.log.best_cost, config.effective_maxiter());
    }
    // Monotonicity on QAOA runs under shot noise.
    const auto problem = random_ising(6, 0.6, -1, 1, 21);
    for (const auto method : {OptimizerMethod::GradientDescent, OptimizerMethod::RMSProp, OptimizerMethod::Newton,
                              OptimizerMethod::SPSA, OptimizerMethod::NelderMead}) {
        QAOAConfig config;
        config.backend.n_shots = 128;
        config.backend.seed = 2;
        config.optimizer.method = method;
        config.optimizer.maxiter = 25;
        out.require(monotone(run_qaoa(problem, config).log), std::string(to_string(method)) + " QAOA best-so-far increased");
    }
    if (out.pass) out.detail = summary + "(best/budget), monotone on all logs";
    return out;
}

Outcome scale_smoke() {
    Outcome out;
    const auto start = Clock::now();
    const auto problem = random_ising(20, 0.2, -1, 1, 20);
    QAOAConfig config;
    config.ansatz.p = 2;
    config.optimizer.method = OptimizerMethod::NelderMead;
    config.optimizer.maxiter = 50;
    config.optimizer.ftol = 1e-300;
    config.optimizer.xtol = 1e-300;
    const auto r = run_qaoa(problem, config);
    const double t = seconds_since(start);
    out.require(r.log.records.size() == 50, fmt("ran %zu iterations", r.log.records.size()));
    out.require(t < 120.0, fmt("took %.1f s", t));
    if (out.pass) {
        out.detail = fmt("n=20 p=2, 50 iterations, %llu circuit evaluations, %.2f s",
                         static_cast<unsigned long long>(r.counters.circuit_evaluations), t);
    }
    return out;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
        {"analytic fixture", analytic_fixture},
        {"oracle equivalence", oracle_equivalence},
        {"gradient correctness", gradient_correctness},
        {"parametrisation algebra", parametrisation_algebra},
        {"rqaoa exactness", rqaoa_exactness},
        {"rqaoa quality", rqaoa_quality},
        {"cvar reduction", cvar_reduction},
        {"determinism", determinism},
        {"optimizer sanity", optimizer_sanity},
        {"scale smoke test", scale_smoke},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s  %2zu  %-24s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
