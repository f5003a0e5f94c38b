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

#include "qaoa/rqaoa.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <set>

namespace qaoa {

std::string_view to_string(RQAOAType type) { return type == RQAOAType::Custom ? "custom" : "adaptive"; }
std::string_view to_string(EliminationKind kind) { return kind == EliminationKind::Pair ? "pair" : "single"; }

RQAOAType parse_rqaoa_type(std::string_view name) {
    if (name == "custom") return RQAOAType::Custom;
    if (name == "adaptive") return RQAOAType::Adaptive;
    fail(ErrorKind::Input, "unknown rqaoa_type '" + std::string(name) + "'");
}

void RQAOAConfig::validate() const {
    if (steps < 1) fail(ErrorKind::Input, "steps must be at least 1");
    if (n_max < 1) fail(ErrorKind::Input, "n_max must be at least 1");
    if (n_cutoff < 1) fail(ErrorKind::Input, "n_cutoff must be at least 1");
}

std::vector<Correlation> compute_correlations(const Distribution &distribution, const IsingProblem &problem) {
    if (distribution.entries.empty()) fail(ErrorKind::Input, "cannot read correlations from an empty distribution");
    if (distribution.n != problem.n()) {
        fail(ErrorKind::Input, "distribution covers " + std::to_string(distribution.n) + " spins, problem has " +
                                   std::to_string(problem.n()));
    }
    const double total = distribution.total();
    if (std::abs(total - 1.0) > 1e-8) fail(ErrorKind::Input, "distribution is not normalized (total " + std::to_string(total) + ")");

    std::vector<Correlation> out;
    out.reserve(problem.term_count());
    auto z = [](std::uint64_t index, int j) { return ((index >> j) & 1U) ? -1.0 : 1.0; };
    for (const auto &t : problem.linear()) {
        double m = 0.0;
        for (const auto &[index, prob] : distribution.entries) m += prob * z(index, t.index);
        out.push_back({{t.index}, m});
    }
    for (const auto &t : problem.quadratic()) {
        const std::uint64_t mask = (std::uint64_t{1} << t.first) | (std::uint64_t{1} << t.second);
        double m = 0.0;
        for (const auto &[index, prob] : distribution.entries) m += (std::popcount(index & mask) & 1) ? -prob : prob;
        out.push_back({{t.first, t.second}, m});
    }
    return out;
}

namespace {

EliminationRecord record_for(const Correlation &c, int step, bool force_positive) {
    EliminationRecord r;
    r.step = step;
    r.correlation = c.value;
    r.sign = force_positive || c.value >= 0.0 ? 1 : -1;
    if (c.indices.size() == 1) {
        r.kind = EliminationKind::Single;
        r.target = c.indices[0];
    } else {
        r.kind = EliminationKind::Pair;
        r.target = std::max(c.indices[0], c.indices[1]);
        r.reference = std::min(c.indices[0], c.indices[1]);
    }
    return r;
}

}  // namespace

Selection select_eliminations(std::span<const Correlation> correlations, const RQAOAConfig &config, int step, int n) {
    config.validate();
    Selection out;
    const int room = n - config.n_cutoff;
    if (room < 1) return out;

    if (correlations.empty()) {
        // No terms left: every assignment is optimal, drop the highest spin.
        out.warnings.push_back("step " + std::to_string(step) + ": problem has no terms, fixing spin " +
                               std::to_string(n - 1) + " to +1");
        out.records.push_back(EliminationRecord{EliminationKind::Single, n - 1, -1, 1, step, 0.0});
        return out;
    }

    std::vector<const Correlation *> ranked;
    ranked.reserve(correlations.size());
    for (const auto &c : correlations) {
        if (c.indices.empty() || c.indices.size() > 2) fail(ErrorKind::Input, "correlations must cover one or two spins");
        ranked.push_back(&c);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const Correlation *a, const Correlation *b) {
        const double ma = std::abs(a->value), mb = std::abs(b->value);
        return ma != mb ? ma > mb : a->indices < b->indices;
    });

    if (std::abs(ranked.front()->value) == 0.0) {
        const Correlation *pick = nullptr;
        for (const auto *c : ranked) {
            if (c->indices.size() == 2 && (!pick || c->indices < pick->indices)) pick = c;
        }
        if (!pick) pick = ranked.front();
        out.records.push_back(record_for(*pick, step, true));
        out.warnings.push_back("step " + std::to_string(step) + ": all correlations are zero, eliminating spin " +
                               std::to_string(out.records.back().target) + " with sign +1");
        return out;
    }

    int limit = 0;
    if (config.type == RQAOAType::Custom) {
        limit = config.steps;
    } else {
        double mean = 0.0;
        for (const auto *c : ranked) mean += std::abs(c->value);
        mean /= static_cast<double>(ranked.size());
        double var = 0.0;
        for (const auto *c : ranked) var += (std::abs(c->value) - mean) * (std::abs(c->value) - mean);
        const double threshold = mean + std::sqrt(var / static_cast<double>(ranked.size()));
        for (const auto *c : ranked) limit += std::abs(c->value) >= threshold ? 1 : 0;
        limit = std::clamp(limit, 1, config.n_max);
    }
    limit = std::min(limit, room);

    std::set<int> targets, references;
    for (const auto *c : ranked) {
        if (static_cast<int>(out.records.size()) >= limit) break;
        auto r = record_for(*c, step, false);
        if (targets.count(r.target) || references.count(r.target)) continue;
        targets.insert(r.target);
        if (r.kind == EliminationKind::Pair) references.insert(r.reference);
        out.records.push_back(r);
    }
    return out;
}

namespace {

// A spin after substitution: either sign * spin `root`, or the constant `sign` when root < 0.
struct Resolved {
    int root;
    int sign;
};

std::vector<Resolved> resolve(int n, std::span<const EliminationRecord> records) {
    std::vector<std::optional<EliminationRecord>> rule(static_cast<std::size_t>(n));
    for (const auto &r : records) {
        if (r.target < 0 || r.target >= n) fail(ErrorKind::Bounds, "elimination target " + std::to_string(r.target) + " out of range");
        if (r.sign != 1 && r.sign != -1) fail(ErrorKind::Input, "elimination sign must be +1 or -1");
        if (r.kind == EliminationKind::Pair) {
            if (r.reference < 0 || r.reference >= n) {
                fail(ErrorKind::Bounds, "elimination reference " + std::to_string(r.reference) + " out of range");
            }
            if (r.reference == r.target) fail(ErrorKind::Input, "elimination target equals its reference");
        }
        if (rule[static_cast<std::size_t>(r.target)]) fail(ErrorKind::Input, "spin " + std::to_string(r.target) + " is eliminated twice");
        rule[static_cast<std::size_t>(r.target)] = r;
    }
    std::vector<Resolved> out(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        int sign = 1, at = j, hops = 0;
        while (rule[static_cast<std::size_t>(at)]) {
            const auto &r = *rule[static_cast<std::size_t>(at)];
            sign *= r.sign;
            if (r.kind == EliminationKind::Single) {
                at = -1;
                break;
            }
            at = r.reference;
            if (++hops > n) fail(ErrorKind::Internal, "cyclic substitution involving spin " + std::to_string(j));
        }
        out[static_cast<std::size_t>(j)] = {at, sign};
    }
    return out;
}

}  // namespace

Reduction reduce_problem(const IsingProblem &problem, std::span<const EliminationRecord> records) {
    const int n = problem.n();
    const auto resolved = resolve(n, records);

    Reduction out{IsingProblem::empty(1), std::vector<int>(static_cast<std::size_t>(n), -1)};
    int survivors = 0;
    for (int j = 0; j < n; ++j) {
        if (resolved[static_cast<std::size_t>(j)].root == j) out.index_map[static_cast<std::size_t>(j)] = survivors++;
    }
    if (survivors == 0) fail(ErrorKind::Input, "eliminations would remove every spin");

    std::vector<TermIndices> terms;
    std::vector<double> coeffs;
    double constant = problem.constant();
    auto new_index = [&](int root) { return out.index_map[static_cast<std::size_t>(root)]; };

    for (const auto &t : problem.linear()) {
        const auto r = resolved[static_cast<std::size_t>(t.index)];
        if (r.root < 0) {
            constant += r.sign * t.coeff;
        } else {
            terms.push_back({new_index(r.root)});
            coeffs.push_back(r.sign * t.coeff);
        }
    }
    for (const auto &t : problem.quadratic()) {
        const auto a = resolved[static_cast<std::size_t>(t.first)];
        const auto b = resolved[static_cast<std::size_t>(t.second)];
        const double c = a.sign * b.sign * t.coeff;
        if (a.root < 0 && b.root < 0) {
            constant += c;
        } else if (a.root < 0) {
            terms.push_back({new_index(b.root)});
            coeffs.push_back(c);
        } else if (b.root < 0) {
            terms.push_back({new_index(a.root)});
            coeffs.push_back(c);
        } else if (a.root == b.root) {
            constant += c;
        } else {
            terms.push_back({new_index(a.root), new_index(b.root)});
            coeffs.push_back(c);
        }
    }
    out.problem = IsingProblem::from_terms(terms, coeffs, survivors, constant);
    return out;
}

SpinAssignment reconstruct_solution(std::span<const ReductionStep> steps, const SpinAssignment &cutoff_solution) {
    std::vector<int> current = cutoff_solution.spins();
    for (auto step = steps.rbegin(); step != steps.rend(); ++step) {
        const auto n = static_cast<std::size_t>(step->size_before);
        if (step->index_map.size() != n) fail(ErrorKind::Internal, "reduction step has a malformed index map");
        std::vector<int> lifted(n, 0);
        std::size_t survivors = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const int to = step->index_map[j];
            if (to < 0) continue;
            if (static_cast<std::size_t>(to) >= current.size()) fail(ErrorKind::Internal, "index map points past the reduced problem");
            lifted[j] = current[static_cast<std::size_t>(to)];
            ++survivors;
        }
        if (survivors != current.size()) {
            fail(ErrorKind::Input, "solution has " + std::to_string(current.size()) + " spins, expected " + std::to_string(survivors));
        }
        // A reference may itself be a target of the same step, so sweep until every target is known.
        std::vector<const EliminationRecord *> pending;
        for (const auto &r : step->records) pending.push_back(&r);
        while (!pending.empty()) {
            std::vector<const EliminationRecord *> waiting;
            for (const auto *r : pending) {
                if (r->kind == EliminationKind::Single) {
                    lifted[static_cast<std::size_t>(r->target)] = r->sign;
                } else if (lifted.at(static_cast<std::size_t>(r->reference)) != 0) {
                    lifted[static_cast<std::size_t>(r->target)] = r->sign * lifted[static_cast<std::size_t>(r->reference)];
                } else {
                    waiting.push_back(r);
                }
            }
            if (waiting.size() == pending.size()) fail(ErrorKind::Internal, "missing reference value while lifting a solution");
            pending = std::move(waiting);
        }
        for (int z : lifted) {
            if (z == 0) fail(ErrorKind::Internal, "a spin was left unassigned while lifting a solution");
        }
        current = std::move(lifted);
    }
    return SpinAssignment::from_spins(current);
}

namespace {

template <typename Fn>
decltype(auto) at_step(int step, Fn &&fn) {
    try {
        return fn();
    } catch (const PhaseError &e) {
        throw PhaseError(e.phase(), e.kind(), "rqaoa step " + std::to_string(step) + ": " + e.what());
    } catch (const Error &e) {
        throw PhaseError("rqaoa", e.kind(), "rqaoa step " + std::to_string(step) + ": " + e.what());
    }
}

}  // namespace

RQAOAResult run_rqaoa(const IsingProblem &problem, const QAOAConfig &qaoa, const RQAOAConfig &config) {
    try {
        config.validate();
        if (qaoa.ansatz.mixer.edges) fail(ErrorKind::Unsupported, "RQAOA does not support explicit mixer edges");
        if (qaoa.backend.initial.prepend_state) fail(ErrorKind::Unsupported, "RQAOA does not support a prepended state");
    } catch (const Error &e) {
        throw PhaseError(std::string(kPhasePreparation), e.kind(), e.what());
    }

    RQAOAResult out;
    IsingProblem current = problem;
    int step = 0;
    while (current.n() > config.n_cutoff) {
        out.sizes.push_back(current.n());
        QAOAConfig step_config = qaoa;
        const auto stream = static_cast<std::uint64_t>(step);
        step_config.backend.seed = mix_seed(qaoa.backend.seed, stream);
        step_config.optimizer.seed = mix_seed(qaoa.optimizer.seed, stream);
        step_config.init.seed = mix_seed(qaoa.init.seed, stream);

        auto result = at_step(step, [&] { return run_qaoa(current, step_config); });
        auto selection = at_step(step, [&] {
            const auto correlations = compute_correlations(result.final_distribution, current);
            return select_eliminations(correlations, config, step, current.n());
        });
        if (selection.records.empty()) {
            throw PhaseError("rqaoa", ErrorKind::Internal, "rqaoa step " + std::to_string(step) + ": no elimination selected");
        }
        auto reduction = at_step(step, [&] { return reduce_problem(current, selection.records); });

        out.records.insert(out.records.end(), selection.records.begin(), selection.records.end());
        out.warnings.insert(out.warnings.end(), selection.warnings.begin(), selection.warnings.end());
        out.steps.push_back(ReductionStep{current.n(), std::move(selection.records), std::move(reduction.index_map)});
        out.qaoa_results.push_back(std::move(result));
        current = std::move(reduction.problem);
        ++step;
    }
    out.sizes.push_back(current.n());

    at_step(step, [&] {
        out.cutoff_solution = brute_force_solve(current);
        out.solution = reconstruct_solution(out.steps, out.cutoff_solution.minimizers.front());
        out.energy = problem.energy(out.solution.spins());
        return 0;
    });
    return out;
}

}  // namespace qaoa
