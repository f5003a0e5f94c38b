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

#include "qaoa/problems.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

namespace qaoa {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Input: return "input";
        case ErrorKind::Bounds: return "bounds";
        case ErrorKind::UnsupportedTerm: return "unsupported-term";
        case ErrorKind::Capacity: return "capacity";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Unsupported: return "unsupported";
        case ErrorKind::Config: return "config";
        case ErrorKind::Internal: return "internal";
    }
    return "unknown";
}

IsingProblem IsingProblem::from_terms(std::span<const TermIndices> terms, std::span<const double> coeffs, int n,
                                      double constant) {
    if (n < 1) fail(ErrorKind::Input, "spin count must be at least 1, got " + std::to_string(n));
    if (terms.size() != coeffs.size()) {
        fail(ErrorKind::Input, "got " + std::to_string(terms.size()) + " terms but " + std::to_string(coeffs.size()) +
                                   " coefficients");
    }
    if (!std::isfinite(constant)) fail(ErrorKind::Input, "constant offset must be finite");

    std::map<int, double> linear;
    std::map<std::pair<int, int>, double> quadratic;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const auto &term = terms[t];
        const double c = coeffs[t];
        if (!std::isfinite(c)) fail(ErrorKind::Input, "coefficient of term " + std::to_string(t) + " is not finite");
        if (term.empty() || term.size() > 2) {
            fail(ErrorKind::UnsupportedTerm,
                 "term " + std::to_string(t) + " has arity " + std::to_string(term.size()) + "; only 1 and 2 are supported");
        }
        for (int idx : term) {
            if (idx < 0 || idx >= n) {
                fail(ErrorKind::Bounds,
                     "term " + std::to_string(t) + " index " + std::to_string(idx) + " outside [0, " + std::to_string(n) + ")");
            }
        }
        if (term.size() == 1) {
            linear[term[0]] += c;
        } else {
            if (term[0] == term[1]) {
                fail(ErrorKind::Input, "term " + std::to_string(t) + " repeats spin " + std::to_string(term[0]));
            }
            quadratic[{std::min(term[0], term[1]), std::max(term[0], term[1])}] += c;
        }
    }

    IsingProblem problem;
    problem.n_ = n;
    problem.constant_ = constant;
    for (const auto &[j, c] : linear) {
        if (c != 0.0) problem.linear_.push_back({j, c});
    }
    for (const auto &[jk, c] : quadratic) {
        if (c != 0.0) problem.quadratic_.push_back({jk.first, jk.second, c});
    }
    return problem;
}

IsingProblem IsingProblem::empty(int n, double constant) { return from_terms({}, {}, n, constant); }

double IsingProblem::energy(std::uint64_t index) const {
    double e = 0.0;
    for (const auto &t : linear_) {
        e += ((index >> t.index) & 1U) ? -t.coeff : t.coeff;
    }
    for (const auto &t : quadratic_) {
        const bool odd = (((index >> t.first) ^ (index >> t.second)) & 1U) != 0;
        e += odd ? -t.coeff : t.coeff;
    }
    return e + constant_;
}

double IsingProblem::energy(std::span<const int> spins) const {
    if (static_cast<int>(spins.size()) != n_) {
        fail(ErrorKind::Input, "assignment has " + std::to_string(spins.size()) + " spins, problem has " + std::to_string(n_));
    }
    // Same summation order as the index overload so both agree bit for bit.
    double e = 0.0;
    for (const auto &t : linear_) {
        e += spins[t.index] > 0 ? t.coeff : -t.coeff;
    }
    for (const auto &t : quadratic_) {
        e += spins[t.first] * spins[t.second] > 0 ? t.coeff : -t.coeff;
    }
    return e + constant_;
}

std::pair<std::vector<TermIndices>, std::vector<double>> IsingProblem::terms() const {
    std::pair<std::vector<TermIndices>, std::vector<double>> out;
    for (const auto &t : linear_) {
        out.first.push_back({t.index});
        out.second.push_back(t.coeff);
    }
    for (const auto &t : quadratic_) {
        out.first.push_back({t.first, t.second});
        out.second.push_back(t.coeff);
    }
    return out;
}

std::string index_to_bits(std::uint64_t index, int n) {
    std::string bits(static_cast<std::size_t>(n), '0');
    for (int j = 0; j < n; ++j) {
        if ((index >> j) & 1U) bits[static_cast<std::size_t>(j)] = '1';
    }
    return bits;
}

std::uint64_t bits_to_index(std::string_view bits) {
    if (bits.size() > 63) fail(ErrorKind::Capacity, "bitstring longer than 63 spins");
    std::uint64_t index = 0;
    for (std::size_t j = 0; j < bits.size(); ++j) {
        if (bits[j] == '1') {
            index |= std::uint64_t{1} << j;
        } else if (bits[j] != '0') {
            fail(ErrorKind::Input, "bitstring contains '" + std::string(1, bits[j]) + "'");
        }
    }
    return index;
}

SpinAssignment SpinAssignment::from_bits(std::string bits) {
    for (char c : bits) {
        if (c != '0' && c != '1') fail(ErrorKind::Input, "bitstring contains '" + std::string(1, c) + "'");
    }
    SpinAssignment a;
    a.bits_ = std::move(bits);
    return a;
}

SpinAssignment SpinAssignment::from_index(std::uint64_t index, int n) {
    SpinAssignment a;
    a.bits_ = index_to_bits(index, n);
    return a;
}

SpinAssignment SpinAssignment::from_spins(std::span<const int> spins) {
    SpinAssignment a;
    a.bits_.reserve(spins.size());
    for (int z : spins) {
        if (z != 1 && z != -1) fail(ErrorKind::Input, "spin values must be +1 or -1");
        a.bits_.push_back(z > 0 ? '0' : '1');
    }
    return a;
}

std::vector<int> SpinAssignment::spins() const {
    std::vector<int> z(bits_.size());
    for (std::size_t j = 0; j < bits_.size(); ++j) z[j] = spin_of_bit(bits_[j] - '0');
    return z;
}

std::uint64_t SpinAssignment::index() const { return bits_to_index(bits_); }

IsingProblem maxcut_to_ising(std::span<const WeightedEdge> edges) {
    if (edges.empty()) fail(ErrorKind::Input, "MaxCut graph has no edges");
    int max_index = -1;
    std::vector<TermIndices> terms;
    std::vector<double> coeffs;
    double constant = 0.0;
    for (const auto &e : edges) {
        if (e.first < 0 || e.second < 0) fail(ErrorKind::Input, "MaxCut edge has a negative vertex index");
        if (e.first == e.second) fail(ErrorKind::Input, "MaxCut edge (" + std::to_string(e.first) + ", " +
                                                            std::to_string(e.second) + ") is a self-loop");
        max_index = std::max({max_index, e.first, e.second});
        terms.push_back({e.first, e.second});
        coeffs.push_back(e.weight / 2.0);
        constant -= e.weight / 2.0;
    }
    return IsingProblem::from_terms(terms, coeffs, max_index + 1, constant);
}

IsingProblem random_ising(int n, double density, double low, double high, std::uint64_t seed) {
    if (n < 1) fail(ErrorKind::Input, "spin count must be at least 1");
    if (!(density > 0.0 && density <= 1.0)) fail(ErrorKind::Input, "density must lie in (0, 1]");
    if (!(low <= high) || !std::isfinite(low) || !std::isfinite(high)) {
        fail(ErrorKind::Input, "coefficient range is empty");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_real_distribution<double> coeff(low, high);
    auto draw = [&] { return low == high ? low : coeff(rng); };

    std::vector<TermIndices> terms;
    std::vector<double> coeffs;
    for (int j = 0; j < n; ++j) {
        if (coin(rng) < density) {
            terms.push_back({j});
            coeffs.push_back(draw());
        }
    }
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            if (coin(rng) < density) {
                terms.push_back({j, k});
                coeffs.push_back(draw());
            }
        }
    }
    return IsingProblem::from_terms(terms, coeffs, n);
}

std::vector<WeightedEdge> random_regular_graph(int n, int degree, std::uint64_t seed) {
    if (n < 1 || degree < 0 || degree >= n || (n * degree) % 2 != 0) {
        fail(ErrorKind::Input, "no simple " + std::to_string(degree) + "-regular graph on " + std::to_string(n) + " vertices");
    }
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<int> stubs;
        for (int v = 0; v < n; ++v) stubs.insert(stubs.end(), static_cast<std::size_t>(degree), v);
        std::shuffle(stubs.begin(), stubs.end(), rng);
        std::vector<std::pair<int, int>> pairs;
        bool ok = true;
        for (std::size_t s = 0; s + 1 < stubs.size(); s += 2) {
            auto a = std::min(stubs[s], stubs[s + 1]);
            auto b = std::max(stubs[s], stubs[s + 1]);
            if (a == b || std::find(pairs.begin(), pairs.end(), std::pair{a, b}) != pairs.end()) {
                ok = false;
                break;
            }
            pairs.emplace_back(a, b);
        }
        if (!ok) continue;
        std::sort(pairs.begin(), pairs.end());
        std::vector<WeightedEdge> edges;
        for (auto [a, b] : pairs) edges.push_back({a, b, 1.0});
        return edges;
    }
    fail(ErrorKind::Internal, "failed to sample a regular graph");
}

BruteForceSolution brute_force_solve(const IsingProblem &problem, int limit) {
    const int n = problem.n();
    if (n > limit) {
        fail(ErrorKind::Capacity, "exhaustive solve limited to " + std::to_string(limit) + " spins, problem has " +
                                      std::to_string(n) + "; reduce the problem first");
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    double best = problem.energy(std::uint64_t{0});
    for (std::uint64_t i = 1; i < dim; ++i) best = std::min(best, problem.energy(i));

    // Ties within rounding noise of the summation count as minimizers.
    double scale = std::abs(problem.constant());
    for (const auto &t : problem.linear()) scale += std::abs(t.coeff);
    for (const auto &t : problem.quadratic()) scale += std::abs(t.coeff);
    const double tol = 1e-12 * (1.0 + scale);

    BruteForceSolution out;
    out.energy = best;
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (problem.energy(i) <= best + tol) out.minimizers.push_back(SpinAssignment::from_index(i, n));
    }
    std::sort(out.minimizers.begin(), out.minimizers.end());
    return out;
}

}  // namespace qaoa
