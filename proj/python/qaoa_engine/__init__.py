# Copyright 2026 The QAOA Engine Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Statevector QAOA and recursive QAOA on Ising cost Hamiltonians.

Configuration dicts use the same sections as the CLI config file
(circuit_properties, backend_properties, classical_optimizer, rqaoa, seed);
the problem is passed separately.
"""

import json

from ._core import (
    Backend as _Backend,
    ConfigError,
    Problem,
    QAOAError,
    brute_force,
    maxcut,
    random_ising,
    random_regular_graph,
)
from . import _core

__all__ = [
    "Backend",
    "ConfigError",
    "Problem",
    "QAOAError",
    "brute_force",
    "landscape",
    "maxcut",
    "random_ising",
    "random_regular_graph",
    "run_qaoa",
    "run_rqaoa",
]


def _dump(config):
    return json.dumps(config or {})


def Backend(problem, config=None):
    """Compiled circuit with expectation, wavefunction and gradient methods."""
    return _Backend(problem, _dump(config))


def run_qaoa(problem, config=None):
    """Optimize a QAOA circuit; returns the result document as a dict."""
    return json.loads(_core.run_qaoa_json(problem, _dump(config)))


def run_rqaoa(problem, config=None):
    """Recursive QAOA down to the cutoff; returns the result document as a dict."""
    return json.loads(_core.run_rqaoa_json(problem, _dump(config)))


def landscape(problem, first, second, config=None):
    """Cost over a grid of the two raw parameters.

    first and second are (low, high, points). Returns the two axes and a
    (len(first), len(second)) array of costs.
    """
    return _core.landscape(problem, _dump(config), tuple(first), tuple(second))
