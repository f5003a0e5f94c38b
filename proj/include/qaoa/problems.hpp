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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qaoa/error.hpp"

namespace qaoa {

/// Spin index convention used everywhere in the library:
///   bit b_j in {0, 1}  <->  eigenvalue z_j = 1 - 2 b_j   (bit 0 is spin up, +1).
/// Basis index i stores spin j in bit j (spin 0 is the least significant bit).
/// Bitstrings are written spin 0 first, so index 2 on two spins is "01".
inline int spin_of_bit(int bit) { return 1 - 2 * bit; }

struct LinearTerm {
    int index;
    double coeff;
    friend bool operator==(const LinearTerm &, const LinearTerm &) = default;
};

/// Pair term with first < second.
struct QuadraticTerm {
    int first;
    int second;
    double coeff;
    friend bool operator==(const QuadraticTerm &, const QuadraticTerm &) = default;
};

/// A raw term before canonicalization: one or two spin indices.
using TermIndices = std::vector<int>;

/// Weighted undirected edge (j, k, w).
struct WeightedEdge {
    int first;
    int second;
    double weight = 1.0;
};

/// Ising cost Hamiltonian
///   H = sum_j h_j Z_j + sum_{j<k} J_jk Z_j Z_k + constant
/// held in canonical form: linear terms sorted by index, pair terms sorted
/// lexicographically, no duplicates, no zero coefficients.
class IsingProblem {
   public:
    /// Builds a canonical problem from a bag of terms. Duplicates merge by
    /// addition, terms whose merged coefficient is zero are dropped.
    static IsingProblem from_terms(std::span<const TermIndices> terms, std::span<const double> coeffs, int n,
                                   double constant = 0.0);

    /// Empty Hamiltonian on n spins with the given offset.
    static IsingProblem empty(int n, double constant = 0.0);

    int n() const noexcept { return n_; }
    const std::vector<LinearTerm> &linear() const noexcept { return linear_; }
    const std::vector<QuadraticTerm> &quadratic() const noexcept { return quadratic_; }
    double constant() const noexcept { return constant_; }
    std::size_t term_count() const noexcept { return linear_.size() + quadratic_.size(); }

    /// Energy of the assignment encoded by a basis index (spin j in bit j).
    double energy(std::uint64_t index) const;
    /// Energy of an explicit spin vector with entries in {+1, -1}.
    double energy(std::span<const int> spins) const;

    /// Terms and coefficients in canonical order (linear first, then pairs).
    std::pair<std::vector<TermIndices>, std::vector<double>> terms() const;

    friend bool operator==(const IsingProblem &, const IsingProblem &) = default;

   private:
    IsingProblem() = default;

    int n_ = 0;
    std::vector<LinearTerm> linear_;
    std::vector<QuadraticTerm> quadratic_;
    double constant_ = 0.0;
};

/// A full assignment of the n spins, stored as a bitstring (spin 0 first).
class SpinAssignment {
   public:
    SpinAssignment() = default;
    static SpinAssignment from_bits(std::string bits);
    static SpinAssignment from_index(std::uint64_t index, int n);
    static SpinAssignment from_spins(std::span<const int> spins);

    int size() const noexcept { return static_cast<int>(bits_.size()); }
    const std::string &bits() const noexcept { return bits_; }
    int spin(int j) const { return spin_of_bit(bits_.at(static_cast<std::size_t>(j)) - '0'); }
    std::vector<int> spins() const;
    std::uint64_t index() const;

    friend auto operator<=>(const SpinAssignment &, const SpinAssignment &) = default;

   private:
    std::string bits_;
};

/// Bitstring of a basis index on n spins (spin 0 first).
std::string index_to_bits(std::uint64_t index, int n);
std::uint64_t bits_to_index(std::string_view bits);

/// MaxCut on a weighted graph as an Ising problem:
///   H = sum_{(j,k)} w_jk (Z_j Z_k - 1) / 2,
/// so the minimum energy equals minus the maximum cut weight.
IsingProblem maxcut_to_ising(std::span<const WeightedEdge> edges);

/// Random problem: each linear term and each pair is present independently
/// with probability `density`, coefficients uniform in [low, high).
IsingProblem random_ising(int n, double density, double low, double high, std::uint64_t seed);

/// Random d-regular simple graph on n vertices (pairing model with restarts), unit weights.
std::vector<WeightedEdge> random_regular_graph(int n, int degree, std::uint64_t seed);

inline constexpr int kDefaultExhaustiveLimit = 24;

struct BruteForceSolution {
    double energy = 0.0;
    std::vector<SpinAssignment> minimizers;  // ascending bitstring order
};

/// Exhaustive minimum over all 2^n assignments.
BruteForceSolution brute_force_solve(const IsingProblem &problem, int limit = kDefaultExhaustiveLimit);

}  // namespace qaoa
