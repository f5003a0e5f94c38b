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

// qaoa_cli: run QAOA / RQAOA workflows, exhaustive solves and landscape scans
// from a JSON configuration file.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qaoa/io.hpp"

namespace fs = std::filesystem;
using qaoa::Json;

namespace {

struct GlobalOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

struct Overrides {
    std::optional<int> p;
    std::optional<std::uint64_t> n_shots;
    std::optional<int> threads;
    std::optional<int> maxiter;
    std::optional<std::string> method;
    std::optional<int> n_cutoff;
};

struct GridFlags {
    std::vector<double> gamma_range;
    std::vector<double> beta_range;
    std::optional<int> points;
    std::optional<int> gamma_points;
    std::optional<int> beta_points;
};

// Failure in a named phase; becomes exit code 1.
struct RunFailure {
    std::string phase;
    std::string message;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qaoa::ConfigError("--config", "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

qaoa::WorkflowConfig load_config(const GlobalOptions &global, const Overrides &o) {
    auto config = qaoa::workflow_config_from_json(qaoa::parse_json_text(read_file(global.config_path)));
    if (global.seed) qaoa::apply_seed(config, *global.seed);
    if (o.p) {
        if (*o.p < 1) throw qaoa::ConfigError("--p", "must be at least 1");
        config.qaoa.ansatz.p = *o.p;
        try {
            config.qaoa.ansatz.validate();
        } catch (const qaoa::Error &e) {
            throw qaoa::ConfigError("--p", e.what());
        }
    }
    if (o.n_shots) config.qaoa.backend.n_shots = *o.n_shots;
    if (o.threads) {
        if (*o.threads < 1) throw qaoa::ConfigError("--threads", "must be at least 1");
        config.qaoa.backend.threads = *o.threads;
    }
    if (o.maxiter) {
        if (*o.maxiter < 1) throw qaoa::ConfigError("--maxiter", "must be at least 1");
        config.qaoa.optimizer.maxiter = *o.maxiter;
    }
    if (o.method) {
        try {
            config.qaoa.optimizer.method = qaoa::parse_optimizer_method(*o.method);
        } catch (const qaoa::Error &e) {
            throw qaoa::ConfigError("--method", e.what());
        }
    }
    if (o.n_cutoff) {
        if (*o.n_cutoff < 1) throw qaoa::ConfigError("--n-cutoff", "must be at least 1");
        config.rqaoa.n_cutoff = *o.n_cutoff;
    }
    return config;
}

class Artifacts {
   public:
    explicit Artifacts(const GlobalOptions &global) : global_(global) {
        std::error_code ec;
        fs::create_directories(global.out_dir, ec);
        if (ec) throw RunFailure{"output", "cannot create output directory '" + global.out_dir + "': " + ec.message()};
    }

    void write(const std::string &name, const std::string &content) {
        const fs::path path = fs::path(global_.out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        out << content;
        if (!out) throw RunFailure{"output", "cannot write '" + path.string() + "'"};
        names_.push_back(name);
    }

    void write_json(const std::string &name, const Json &j) { write(name, j.dump(2) + "\n"); }

    void finish(std::chrono::steady_clock::time_point start, std::uint64_t seed) {
        Json manifest;
        manifest["config"] = global_.config_path;
        manifest["output_dir"] = global_.out_dir;
        manifest["artifacts"] = names_;
        manifest["duration_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        manifest["seed"] = seed;
        const fs::path path = fs::path(global_.out_dir) / "manifest.json";
        std::ofstream out(path, std::ios::binary);
        out << manifest.dump(2) << "\n";
        if (!out) throw RunFailure{"output", "cannot write '" + path.string() + "'"};
    }

   private:
    const GlobalOptions &global_;
    std::vector<std::string> names_;
};

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename Fn>
auto run_phase(const char *phase, Fn &&fn) {
    try {
        return fn();
    } catch (const qaoa::PhaseError &e) {
        throw RunFailure{e.phase(), e.what()};
    } catch (const qaoa::ConfigError &) {
        throw;
    } catch (const qaoa::Error &e) {
        throw RunFailure{phase, e.what()};
    }
}

int cmd_qaoa(const GlobalOptions &global, const Overrides &overrides) {
    const auto start = std::chrono::steady_clock::now();
    const auto config = load_config(global, overrides);
    const auto result = run_phase("run", [&] { return qaoa::run_qaoa(config.problem, config.qaoa); });
    Artifacts out(global);
    out.write_json("result.json", qaoa::qaoa_result_to_json(result, config.qaoa.result.max_distribution_entries));
    if (config.qaoa.optimizer.cost_progress) out.write("cost_history.csv", result.log.to_csv());
    out.finish(start, config.seed);
    if (!global.quiet) {
        std::cout << "optimal cost " << format_double(result.optimal_cost);
        if (result.lowest_cost) std::cout << ", lowest-cost bitstring " << result.lowest_cost->bits << " (" << result.lowest_cost->energy << ")";
        std::cout << ", " << result.log.records.size() << " iterations, stopped on " << result.log.termination << "\n";
    }
    return 0;
}

int cmd_rqaoa(const GlobalOptions &global, const Overrides &overrides) {
    const auto start = std::chrono::steady_clock::now();
    const auto config = load_config(global, overrides);
    const auto result = run_phase("run", [&] { return qaoa::run_rqaoa(config.problem, config.qaoa, config.rqaoa); });
    Artifacts out(global);
    out.write_json("result.json", qaoa::rqaoa_result_to_json(result, config.qaoa.result.max_distribution_entries));
    std::string trace;
    for (const auto &r : result.records) trace += qaoa::elimination_to_json(r).dump() + "\n";
    out.write("trace.jsonl", trace);
    out.finish(start, config.seed);
    for (const auto &w : result.warnings) std::cerr << "warning: " << w << "\n";
    if (!global.quiet) {
        std::cout << "bitstring " << result.solution.bits() << ", energy " << format_double(result.energy) << ", "
                  << result.records.size() << " eliminations\n";
    }
    return 0;
}

int cmd_brute_force(const GlobalOptions &global, int limit, bool write_file) {
    const auto start = std::chrono::steady_clock::now();
    const auto config = load_config(global, {});
    const auto solution = run_phase("solve", [&] { return qaoa::brute_force_solve(config.problem, limit); });
    const Json j = qaoa::brute_force_to_json(solution);
    if (write_file) {
        Artifacts out(global);
        out.write_json("result.json", j);
        out.finish(start, config.seed);
    }
    if (!global.quiet) std::cout << j.dump() << "\n";
    return 0;
}

int cmd_landscape(const GlobalOptions &global, const Overrides &overrides, const GridFlags &grid) {
    const auto start = std::chrono::steady_clock::now();
    auto config = load_config(global, overrides);
    auto axis = [](qaoa::GridAxis &a, const std::vector<double> &range, std::optional<int> points, const char *points_flag) {
        if (!range.empty()) {
            a.low = range[0];
            a.high = range[1];
        }
        if (points) {
            if (*points < 1) throw qaoa::ConfigError(points_flag, "must be at least 1");
            a.points = *points;
        }
    };
    axis(config.landscape_first, grid.gamma_range, grid.gamma_points ? grid.gamma_points : grid.points,
         grid.gamma_points ? "--gamma-points" : "--points");
    axis(config.landscape_second, grid.beta_range, grid.beta_points ? grid.beta_points : grid.points,
         grid.beta_points ? "--beta-points" : "--points");

    const std::size_t count = run_phase("preparation", [&] {
        config.qaoa.ansatz.validate();
        return qaoa::param_count(config.qaoa.ansatz, config.problem);
    });
    if (count != 2) {
        throw qaoa::ConfigError("circuit_properties", "a landscape scan needs exactly 2 raw parameters, this circuit has " +
                                                          std::to_string(count) + " (use param_type standard with p = 1)");
    }
    const auto landscape = run_phase("run", [&] {
        return qaoa::landscape_scan(config.problem, config.qaoa.ansatz, config.qaoa.backend, config.landscape_first,
                                    config.landscape_second);
    });
    std::string csv = "gamma,beta,cost\n";
    for (std::size_t r = 0; r < landscape.first_values.size(); ++r) {
        for (std::size_t c = 0; c < landscape.second_values.size(); ++c) {
            csv += format_double(landscape.first_values[r]) + "," + format_double(landscape.second_values[c]) + "," +
                   format_double(landscape.at(r, c)) + "\n";
        }
    }
    Artifacts out(global);
    out.write("landscape.csv", csv);
    out.finish(start, config.seed);
    if (!global.quiet) std::cout << "wrote " << landscape.costs.size() << " grid points\n";
    return 0;
}

void report(const std::string &message, const std::string &phase, const std::string &field = {}) {
    Json j;
    j["error"] = message;
    j["phase"] = phase;
    if (!field.empty()) j["field"] = field;
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"QAOA and RQAOA workflows on a statevector simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--config", global.config_path, "Workflow configuration (JSON)")->required();
    app.add_option("--out", global.out_dir, "Output directory for artifacts")->capture_default_str();
    app.add_option("--seed", global.seed, "Seed for sampling, optimizer and initialization (overrides the file)");
    app.add_flag("--quiet", global.quiet, "Suppress the summary on standard output");

    Overrides overrides;
    auto add_run_flags = [&](CLI::App *cmd) {
        cmd->add_option("--p", overrides.p, "Number of layers");
        cmd->add_option("--n-shots", overrides.n_shots, "Shots per evaluation (0 = exact)");
        cmd->add_option("--threads", overrides.threads, "Simulator threads");
        cmd->add_option("--maxiter", overrides.maxiter, "Optimizer iteration budget");
        cmd->add_option("--method", overrides.method, "Optimizer method");
    };

    auto *qaoa_cmd = app.add_subcommand("qaoa", "Optimize a QAOA circuit and write result.json");
    add_run_flags(qaoa_cmd);
    auto *rqaoa_cmd = app.add_subcommand("rqaoa", "Run recursive QAOA and write result.json and trace.jsonl");
    add_run_flags(rqaoa_cmd);
    rqaoa_cmd->add_option("--n-cutoff", overrides.n_cutoff, "Problem size solved exhaustively");

    int limit = qaoa::kDefaultExhaustiveLimit;
    auto *brute_cmd = app.add_subcommand("brute-force", "Exhaustively minimize the problem energy");
    brute_cmd->add_option("--limit", limit, "Largest spin count to enumerate")->capture_default_str();

    GridFlags grid;
    auto *landscape_cmd = app.add_subcommand("landscape", "Scan the cost over a grid of two parameters");
    add_run_flags(landscape_cmd);
    landscape_cmd->add_option("--gamma-range", grid.gamma_range, "LOW HIGH of the first parameter")->expected(2);
    landscape_cmd->add_option("--beta-range", grid.beta_range, "LOW HIGH of the second parameter")->expected(2);
    landscape_cmd->add_option("--points", grid.points, "Grid points per axis");
    landscape_cmd->add_option("--gamma-points", grid.gamma_points, "Grid points along the first parameter");
    landscape_cmd->add_option("--beta-points", grid.beta_points, "Grid points along the second parameter");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        report(e.what(), "arguments");
        return 2;
    }

    try {
        if (qaoa_cmd->parsed()) return cmd_qaoa(global, overrides);
        if (rqaoa_cmd->parsed()) return cmd_rqaoa(global, overrides);
        if (brute_cmd->parsed()) return cmd_brute_force(global, limit, app.count("--out") > 0);
        if (landscape_cmd->parsed()) return cmd_landscape(global, overrides, grid);
    } catch (const qaoa::ConfigError &e) {
        report(e.what(), "config", e.field());
        return 2;
    } catch (const RunFailure &e) {
        report(e.message, e.phase);
        return 1;
    } catch (const qaoa::Error &e) {
        report(e.what(), "run");
        return 1;
    } catch (const std::exception &e) {
        report(e.what(), "internal");
        return 1;
    }
    return 1;
}
