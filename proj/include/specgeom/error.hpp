// Copyright 2026 The Authors.
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

#ifndef SPECGEOM_ERROR_HPP_
#define SPECGEOM_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace specgeom {

// Argument outside the domain of a formula (e.g. t > pi/sqrt(delta)).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A documented precondition of an algorithm does not hold for the input.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Iteration cap or tolerance not reached (quadrature, eigensolvers).
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A constructed object failed its own re-verification.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive enumeration would exceed its work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed configuration or input file.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace specgeom

#endif  // SPECGEOM_ERROR_HPP_
