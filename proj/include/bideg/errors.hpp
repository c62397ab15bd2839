// Copyright 2026 The bideg Authors
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

#include <stdexcept>

namespace bideg {

// Malformed or out-of-range arguments (bad vertex index, unequal degree sums,
// non-positive parameters).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A request exceeds a hard size budget (simple process past L*R edges,
// oracle enumeration past its branching budget).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// An iterative computation failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Conditioning on an event of zero probability.
class ConditioningError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An operation is undefined for a degenerate law (for example size-biasing a
// point mass at zero).
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace bideg
