// Copyright 2026 The fcs-witness Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fcs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree (dimension mismatch, wrong vector length).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A precondition on an argument value was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Raised when an eigen- or linear solver fails; carries the residual norm
/// of the best available answer.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double residual)
        : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class DegenerateSteadyState : public Error {
public:
    explicit DegenerateSteadyState(std::size_t multiplicity)
        : Error("degenerate steady state: zero eigenvalue has multiplicity "
                + std::to_string(multiplicity)),
          multiplicity_(multiplicity) {}

    std::size_t multiplicity() const noexcept { return multiplicity_; }

private:
    std::size_t multiplicity_;
};

/// The minimiser of a Legendre-Fenchel transform hit the edge of its search interval.
class BracketTooSmall : public Error {
public:
    using Error::Error;
};

}  // namespace fcs
