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

#include <optional>
#include <string>

#include "homog/gates.hpp"

namespace homog {

/**
 * Serializes a circuit as OpenQASM 2.0 with the qelib1.inc gate set.  Every
 * op must carry one of the mnemonics "cx", "u1", "ry", "rz" (as produced by
 * the circuit builders in this library).  Gate angles are written with 17
 * significant digits so the round trip is bit-faithful.
 *
 * When @p measure_wire is set, a one-bit classical register and a terminal
 * measurement of that wire are appended.
 *
 * @throws std::invalid_argument if an op has no QASM mnemonic or
 *   measure_wire is out of range.
 */
std::string emit_qasm(const QuantumCircuit& circuit,
                      std::optional<int> measure_wire = std::nullopt);

/** Result of parsing an OpenQASM 2.0 program. */
struct ParsedQasm {
  QuantumCircuit circuit;
  bool has_measurement = false;
};

/**
 * Parses the subset of OpenQASM 2.0 emitted by this library: a version
 * header, qelib1.inc include, one quantum register, an optional classical
 * register, the gates cx / u1 / ry / rz with arithmetic angle expressions
 * (numbers, pi, + - * /, parentheses), and measure statements.
 *
 * @throws std::invalid_argument on any malformed or unsupported statement.
 */
ParsedQasm parse_qasm(const std::string& text);

}  // namespace homog
