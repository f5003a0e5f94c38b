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

// Reference implementations used only by tests. Everything here is written
// from the operator definitions with dense matrices, without touching the
// library kernels.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "qaoa/ansatz.hpp"
#include "qaoa/problems.hpp"

namespace oracle {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline int spin(std::uint64_t index, int j) { return ((index >> j) & 1U) ? -1 : 1; }

/// Energy straight from the term lists, spin j = 1 - 2 * bit j.
inline double energy(const qaoa::IsingProblem &problem, std::uint64_t index) {
    double e = problem.constant();
    for (const auto &t : problem.linear()) e += t.coeff * spin(index, t.index);
    for (const auto &t : problem.quadratic()) e += t.coeff * spin(index, t.first) * spin(index, t.second);
    return e;
}

/// Exhaustive minimum by a plain loop.
inline double minimum_energy(const qaoa::IsingProblem &problem) {
    double best = INFINITY;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << problem.n()); ++i) best = std::min(best, energy(problem, i));
    return best;
}

inline Mat pauli_x(int n, int j) {
    const auto dim = Eigen::Index{1} << n;
    Mat m = Mat::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) m(i ^ (Eigen::Index{1} << j), i) = 1.0;
    return m;
}

inline Mat pauli_y(int n, int j) {
    const auto dim = Eigen::Index{1} << n;
    Mat m = Mat::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const bool one = (i >> j) & 1;
        m(i ^ (Eigen::Index{1} << j), i) = one ? Cx(0, -1) : Cx(0, 1);
    }
    return m;
}

inline Mat pauli_z(int n, int j) {
    const auto dim = Eigen::Index{1} << n;
    Mat m = Mat::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) m(i, i) = spin(static_cast<std::uint64_t>(i), j);
    return m;
}

inline Mat hadamard_all(int n) {
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    Mat m = Mat::Identity(1, 1);
    for (int j = 0; j < n; ++j) {
        // qubit j is bit j, so later qubits are more significant: kron(h, m).
        Mat next(m.rows() * 2, m.cols() * 2);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) next.block(a * m.rows(), b * m.cols(), m.rows(), m.cols()) = h(a, b) * m;
        m = next;
    }
    return m;
}

/// Dense circuit: exp(-i sum gamma_t c_t P_t) then the mixer product, per layer.
inline Vec run(const qaoa::IsingProblem &problem, const qaoa::MixerSpec &mixer, const qaoa::PerLayerAngles &angles,
               bool hadamard = true) {
    const int n = problem.n();
    const auto dim = Eigen::Index{1} << n;
    Vec psi = Vec::Zero(dim);
    psi(0) = 1.0;
    if (hadamard) psi = hadamard_all(n) * psi;
    const Cx I(0, 1);
    for (const auto &layer : angles.layers) {
        Mat gen = Mat::Zero(dim, dim);
        for (std::size_t t = 0; t < problem.linear().size(); ++t) {
            const auto &term = problem.linear()[t];
            gen += layer.gamma_linear[t] * term.coeff * pauli_z(n, term.index);
        }
        for (std::size_t t = 0; t < problem.quadratic().size(); ++t) {
            const auto &term = problem.quadratic()[t];
            gen += layer.gamma_quadratic[t] * term.coeff * pauli_z(n, term.first) * pauli_z(n, term.second);
        }
        psi = Mat((-I * gen).exp()) * psi;
        if (mixer.kind == qaoa::MixerKind::X) {
            Mat mix = Mat::Zero(dim, dim);
            for (int j = 0; j < n; ++j) mix += layer.beta[static_cast<std::size_t>(j)] * pauli_x(n, j);
            psi = Mat((I * mix).exp()) * psi;
        } else {
            const auto edges = mixer.resolved_edges(n);
            for (std::size_t e = 0; e < edges.size(); ++e) {
                const auto [a, b] = edges[e];
                Mat hop = 0.5 * (pauli_x(n, a) * pauli_x(n, b) + pauli_y(n, a) * pauli_y(n, b));
                psi = Mat((I * layer.beta[e] * hop).exp()) * psi;
            }
        }
    }
    return psi;
}

inline double expectation(const qaoa::IsingProblem &problem, const Vec &psi) {
    double e = 0.0;
    for (Eigen::Index i = 0; i < psi.size(); ++i) e += std::norm(psi(i)) * energy(problem, static_cast<std::uint64_t>(i));
    return e;
}

/// Uniformly random problem with every coefficient drawn from [-1, 1).
inline qaoa::IsingProblem random_problem(int n, double density, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::bernoulli_distribution keep(density);
    std::vector<qaoa::TermIndices> terms;
    std::vector<double> coeffs;
    for (int j = 0; j < n; ++j)
        if (keep(rng)) {
            terms.push_back({j});
            coeffs.push_back(coeff(rng));
        }
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
            if (keep(rng)) {
                terms.push_back({j, k});
                coeffs.push_back(coeff(rng));
            }
    return qaoa::IsingProblem::from_terms(terms, coeffs, n, coeff(rng));
}

}  // namespace oracle
