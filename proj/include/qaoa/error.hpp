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

#include <stdexcept>
#include <string>
#include <string_view>

namespace qaoa {

enum class ErrorKind {
    Input,            // malformed or inconsistent arguments
    Bounds,           // spin/qubit index out of range
    UnsupportedTerm,  // term arity outside {1, 2}
    Capacity,         // problem too large for an exhaustive routine
    Domain,           // parameter outside its admissible domain
    Unsupported,      // operation not defined for this configuration
    Config,           // malformed workflow configuration
    Internal,         // broken internal invariant
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

/// Configuration error that names the offending field (e.g. "circuit_properties.fourier_q").
class ConfigError : public Error {
   public:
    ConfigError(std::string field, const std::string &what)
        : Error(ErrorKind::Config, field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
    const std::string &field() const noexcept { return field_; }

   private:
    std::string field_;
};

/// Error raised inside a workflow, tagged with the phase it surfaced in.
class PhaseError : public Error {
   public:
    PhaseError(std::string phase, ErrorKind kind, const std::string &what)
        : Error(kind, phase + ": " + what), phase_(std::move(phase)) {}
    const std::string &phase() const noexcept { return phase_; }

   private:
    std::string phase_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what) { throw Error(kind, what); }

}  // namespace qaoa
