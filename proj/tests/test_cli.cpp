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

// End-to-end checks of qaoa_cli: exit codes, artifacts and error lines.

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qaoa/problems.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

std::string slurp(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) out.push_back(line);
    return out;
}

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("qaoa_cli_" + std::to_string(::getpid()) + "_" + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path config(const std::string &name, const std::string &body) {
        const auto path = dir_ / name;
        std::ofstream(path) << body;
        return path;
    }

    // Runs the CLI and returns its exit status; stdout and stderr land in out_ and err_.
    int run(const std::string &args) {
        const auto out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
        const std::string command =
            std::string("\"") + QAOA_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2> \"" + err.string() + "\"";
        const int status = std::system(command.c_str());
        out_ = slurp(out);
        err_ = slurp(err);
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string in_dir(const std::string &name) const { return "\"" + (dir_ / name).string() + "\""; }

    // Every failure prints a JSON object with error and phase on stderr.
    void expect_error_line() const {
        const auto all = lines(err_);
        ASSERT_FALSE(all.empty());
        const auto j = Json::parse(all.back());
        EXPECT_TRUE(j.contains("error"));
        EXPECT_TRUE(j.contains("phase"));
    }

    fs::path dir_;
    std::string out_, err_;
};

constexpr const char *kSingleEdge = R"({"problem": {"n": 2, "terms": [[0, 1]], "coeffs": [1.0]}})";
constexpr const char *kFiveSpinProblem =
    R"({"problem": {"n": 5, "terms": [[1, 2], [2, 3], [0, 3], [4, 0], [1], [3]], "coeffs": [1, 2, 3, 4, 3, 5]}})";

TEST_F(Cli, minimal_config_runs_on_defaults) {
    const auto cfg = config("c.json", kSingleEdge);
    ASSERT_EQ(run("--config " + cfg.string() + " --out " + in_dir("o") + " --quiet qaoa"), 0) << err_;
    const auto result = Json::parse(slurp(dir_ / "o" / "result.json"));
    EXPECT_TRUE(result.contains("optimal_params"));
    EXPECT_TRUE(result.contains("lowest_cost"));
    const auto manifest = Json::parse(slurp(dir_ / "o" / "manifest.json"));
    for (const auto &artifact : manifest["artifacts"]) EXPECT_TRUE(fs::exists(dir_ / "o" / artifact.get<std::string>()));
    EXPECT_TRUE(out_.empty());
}

TEST_F(Cli, seed_flag_gives_identical_results) {
    const auto cfg = config("c.json", R"({"problem": {"random": {"n": 6, "density": 0.6, "seed": 1}},
        "backend_properties": {"n_shots": 200}, "classical_optimizer": {"method": "spsa", "maxiter": 20}})");
    ASSERT_EQ(run("--config " + cfg.string() + " --out " + in_dir("a") + " --seed 5 --quiet qaoa"), 0) << err_;
    ASSERT_EQ(run("--config " + cfg.string() + " --out " + in_dir("b") + " --seed 5 --quiet qaoa"), 0) << err_;
    ASSERT_EQ(run("--config " + cfg.string() + " --out " + in_dir("c") + " --seed 6 --quiet qaoa"), 0) << err_;
    const auto a = slurp(dir_ / "a" / "result.json");
    EXPECT_EQ(a, slurp(dir_ / "b" / "result.json"));
    EXPECT_NE(a, slurp(dir_ / "c" / "result.json"));
    EXPECT_EQ(Json::parse(slurp(dir_ / "a" / "manifest.json"))["seed"], 5);
}

TEST_F(Cli, flag_overrides_beat_file_values) {
    const auto cfg = config("c.json", R"({"problem": {"n": 3, "terms": [[0, 1], [1, 2]], "coeffs": [1, 1]},
        "circuit_properties": {"p": 1}, "classical_optimizer": {"maxiter": 50}})");
    ASSERT_EQ(run("--config " + cfg.string() + " --out " + in_dir("o") + " --quiet qaoa --p 3 --maxiter 4 --n-shots 64"), 0)
        << err_;
    const auto result = Json::parse(slurp(dir_ / "o" / "result.json"));
    EXPECT_EQ(result["optimal_params"]["raw"].size(), 6u);
    EXPECT_EQ(result["n_shots"], 64);
    EXPECT_LE(result["optimization"]["history"].size(), 4u);
}

TEST_F(Cli, fourier_without_q_names_the_field) {
    const auto cfg = config("c.json", R"({"problem": {"n": 2, "terms": [[0, 1]], "coeffs": [1]},
        "circuit_properties": {"param_type": "fourier"}})");
    EXPECT_EQ(run("--config " + cfg.string() + " --out " + in_dir("o") + " qaoa"), 2);
    expect_error_line();
    EXPECT_NE(err_.find("fourier_q"), std::string::npos) << err_;
}

TEST_F(Cli, malformed_json_reports_line) {
    const auto cfg = config("c.json", "{\n  \"problem\": ,\n}");
    EXPECT_EQ(run("--config " + cfg.string() + " qaoa"), 2);
    expect_error_line();
    EXPECT_NE(err_.find("line 2"), std::string::npos) << err_;
}

TEST_F(Cli, missing_config_and_bad_flags_exit_2) {
    EXPECT_EQ(run("--config " + in_dir("absent.json") + " qaoa"), 2);
    expect_error_line();
    const auto cfg = config("c.json", kSingleEdge);
    EXPECT_EQ(run("--config " + cfg.string() + " qaoa --p notanumber"), 2);
    expect_error_line();
    EXPECT_EQ(run("--config " + cfg.string()), 2);
}

TEST_F(Cli, runtime_failure_exits_1_with_phase) {
    const auto cfg = config("c.json", R"({"problem": {"random": {"n": 25, "density": 0.1, "seed": 1}}})");
    EXPECT_EQ(run("--config " + cfg.string() + " brute-force --limit 24"), 1);
    expect_error_line();
    EXPECT_NE(err_.find("24"), std::string::npos) << err_;
}

TEST_F(Cli, rqaoa_trace_has_one_line_per_elimination) {
    const auto cfg = config("c.json", R"({"problem": {"regular_maxcut": {"n": 6, "degree": 3, "seed": 1}},
        "rqaoa": {"n_cutoff": 3}})");
    ASSERT_EQ(run("--config " + cfg.string() + " --out " + in_dir("o") + " --quiet rqaoa"), 0) << err_;
    const auto trace = lines(slurp(dir_ / "o" / "trace.jsonl"));
    EXPECT_EQ(trace.size(), 3u);
    for (const auto &line : trace) EXPECT_TRUE(Json::parse(line).contains("sign"));

    // The reported energy re-evaluates under the input problem.
    const auto result = Json::parse(slurp(dir_ / "o" / "result.json"));
    const auto problem = qaoa::maxcut_to_ising(qaoa::random_regular_graph(6, 3, 1));
    std::uint64_t index = 0;
    const auto bits = result["bitstring"].get<std::string>();
    for (std::size_t j = 0; j < bits.size(); ++j)
        if (bits[j] == '1') index |= std::uint64_t{1} << j;
    EXPECT_NEAR(problem.energy(index), result["energy"].get<double>(), 1e-12);
    EXPECT_EQ(result["sizes"], Json::parse("[6, 5, 4, 3]"));
}

TEST_F(Cli, rqaoa_at_cutoff_is_brute_force) {
    const auto cfg = config("c.json", R"({"problem": {"n": 3, "terms": [[0, 1], [1, 2], [0, 2]], "coeffs": [1, 1, 1]},
        "rqaoa": {"n_cutoff": 3}})");
    ASSERT_EQ(run("--config " + cfg.string() + " --out " + in_dir("o") + " --quiet rqaoa"), 0) << err_;
    EXPECT_TRUE(slurp(dir_ / "o" / "trace.jsonl").empty());
    EXPECT_EQ(Json::parse(slurp(dir_ / "o" / "result.json"))["energy"], -1.0);
}

TEST_F(Cli, brute_force_fixtures) {
    const auto one = config("one.json", R"({"problem": {"n": 1, "terms": [[0]], "coeffs": [1]}})");
    ASSERT_EQ(run("--config " + one.string() + " brute-force"), 0) << err_;
    EXPECT_EQ(Json::parse(out_), Json::parse(R"({"energy": -1.0, "bitstrings": ["1"]})"));

    // Regression fixture, cross-checked by a direct enumeration here.
    const auto cfg = config("c.json", kFiveSpinProblem);
    ASSERT_EQ(run("--config " + cfg.string() + " brute-force"), 0) << err_;
    const auto got = Json::parse(out_);
    EXPECT_EQ(got, Json::parse(R"({"energy": -18.0, "bitstrings": ["01011"]})"));
    double best = INFINITY;
    for (int i = 0; i < 32; ++i) {
        auto z = [&](int j) { return (i >> j & 1) ? -1.0 : 1.0; };
        const double e = z(1) * z(2) + 2 * z(2) * z(3) + 3 * z(0) * z(3) + 4 * z(4) * z(0) + 3 * z(1) + 5 * z(3);
        best = std::min(best, e);
    }
    EXPECT_EQ(got["energy"].get<double>(), best);
}

TEST_F(Cli, landscape_grid_matches_single_edge_formula) {
    const auto cfg = config("c.json", kSingleEdge);
    ASSERT_EQ(run("--config " + cfg.string() + " --out " + in_dir("o") +
                  " --quiet landscape --points 3 --gamma-range 0 3.14159 --beta-range 0 1.5"),
              0)
        << err_;
    const auto rows = lines(slurp(dir_ / "o" / "landscape.csv"));
    ASSERT_EQ(rows.size(), 10u);
    EXPECT_EQ(rows[0], "gamma,beta,cost");
    for (std::size_t r = 1; r < rows.size(); ++r) {
        double gamma = 0, beta = 0, cost = 0;
        ASSERT_EQ(std::sscanf(rows[r].c_str(), "%lf,%lf,%lf", &gamma, &beta, &cost), 3);
        EXPECT_NEAR(cost, -std::sin(4 * beta) * std::sin(2 * gamma), 1e-9);
    }
}

TEST_F(Cli, landscape_rejects_non_two_parameter_circuits) {
    const auto cfg = config("c.json", R"({"problem": {"n": 2, "terms": [[0, 1]], "coeffs": [1]},
        "circuit_properties": {"p": 2}})");
    EXPECT_EQ(run("--config " + cfg.string() + " --out " + in_dir("o") + " landscape"), 2);
    expect_error_line();
    EXPECT_NE(err_.find("2 raw parameters"), std::string::npos) << err_;
}

}  // namespace
