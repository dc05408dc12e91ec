// Copyright 2026 The homogenizer developers
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
#include <string>

namespace homog {

/**
 * Thrown when a numerical contract is violated: an input matrix fails a
 * semantic requirement (hermiticity, positivity, unit trace, unitarity,
 * isometry, ...) beyond the library tolerances, or an internal computation
 * leaves its accuracy envelope.
 *
 * Structurally malformed arguments (dimension mismatches, empty operands,
 * out-of-range wire indices, unparsable text) throw std::invalid_argument
 * instead; the distinction maps onto the CLI exit codes (1 for usage or
 * validation errors, 2 for numerical-contract violations).
 */
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& message)
      : std::runtime_error(message) {}
};

}  // namespace homog
