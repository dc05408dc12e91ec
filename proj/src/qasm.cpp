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

#include "homog/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <vector>

namespace homog {

namespace {

std::string format_angle(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

// --- tiny recursive-descent evaluator for angle expressions ----------------

class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : text_(text) {}

  double parse() {
    const double value = sum();
    skip_space();
    if (pos_ != text_.size()) {
      throw std::invalid_argument("qasm: trailing characters in expression '" +
                                  text_ + "'");
    }
    return value;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double sum() {
    double value = product();
    while (true) {
      if (consume('+')) {
        value += product();
      } else if (consume('-')) {
        value -= product();
      } else {
        return value;
      }
    }
  }

  double product() {
    double value = atom();
    while (true) {
      if (consume('*')) {
        value *= atom();
      } else if (consume('/')) {
        const double divisor = atom();
        if (divisor == 0.0) {
          throw std::invalid_argument("qasm: division by zero in expression");
        }
        value /= divisor;
      } else {
        return value;
      }
    }
  }

  double atom() {
    skip_space();
    if (consume('-')) return -atom();
    if (consume('+')) return atom();
    if (consume('(')) {
      const double value = sum();
      if (!consume(')')) {
        throw std::invalid_argument("qasm: missing ')' in expression");
      }
      return value;
    }
    if (text_.size() - pos_ >= 2 && text_.compare(pos_, 2, "pi") == 0) {
      pos_ += 2;
      return std::numbers::pi;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E' ||
            ((text_[pos_] == '+' || text_[pos_] == '-') && pos_ > start &&
             (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
      ++pos_;
    }
    if (pos_ == start) {
      throw std::invalid_argument("qasm: malformed expression '" + text_ + "'");
    }
    try {
      return std::stod(text_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      throw std::invalid_argument("qasm: malformed number in expression '" +
                                  text_ + "'");
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

double eval_angle(const std::string& text) { return ExprParser(text).parse(); }

// --- statement-level helpers ------------------------------------------------

std::string strip(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

// Splits "name[index]" and checks the register name.
int parse_reference(const std::string& token, const std::string& reg_name) {
  const std::size_t open = token.find('[');
  const std::size_t close = token.find(']');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw std::invalid_argument("qasm: malformed register reference '" + token + "'");
  }
  if (strip(token.substr(0, open)) != reg_name) {
    throw std::invalid_argument("qasm: unknown register in '" + token + "'");
  }
  const std::string index = strip(token.substr(open + 1, close - open - 1));
  try {
    return std::stoi(index);
  } catch (const std::exception&) {
    throw std::invalid_argument("qasm: malformed register index '" + token + "'");
  }
}

struct RegisterDecl {
  std::string name;
  int size = 0;
};

RegisterDecl parse_register_decl(const std::string& body) {
  const std::size_t open = body.find('[');
  const std::size_t close = body.find(']');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw std::invalid_argument("qasm: malformed register declaration '" + body + "'");
  }
  RegisterDecl decl;
  decl.name = strip(body.substr(0, open));
  try {
    decl.size = std::stoi(strip(body.substr(open + 1, close - open - 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("qasm: malformed register size '" + body + "'");
  }
  if (decl.name.empty() || decl.size < 1) {
    throw std::invalid_argument("qasm: invalid register declaration '" + body + "'");
  }
  return decl;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(strip(s.substr(start)));
      return parts;
    }
    parts.push_back(strip(s.substr(start, pos - start)));
    start = pos + 1;
  }
}

}  // namespace

std::string emit_qasm(const QuantumCircuit& circuit,
                      std::optional<int> measure_wire) {
  if (measure_wire.has_value() &&
      (*measure_wire < 0 || *measure_wire >= circuit.num_qubits())) {
    throw std::invalid_argument("emit_qasm: measure wire out of range");
  }
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  out << "qreg q[" << circuit.num_qubits() << "];\n";
  if (measure_wire.has_value()) {
    out << "creg c[1];\n";
  }
  for (const GateOp& op : circuit.ops()) {
    if (op.name == "cx") {
      out << "cx q[" << op.wires[0] << "],q[" << op.wires[1] << "];\n";
    } else if (op.name == "u1" || op.name == "ry" || op.name == "rz") {
      if (op.params.size() != 1) {
        throw std::invalid_argument("emit_qasm: '" + op.name +
                                    "' requires exactly one angle");
      }
      out << op.name << "(" << format_angle(op.params[0]) << ") q["
          << op.wires[0] << "];\n";
    } else {
      throw std::invalid_argument(
          "emit_qasm: op without a supported QASM mnemonic");
    }
  }
  if (measure_wire.has_value()) {
    out << "measure q[" << *measure_wire << "] -> c[0];\n";
  }
  return out.str();
}

ParsedQasm parse_qasm(const std::string& text) {
  // Strip comments, then split the program into ';'-terminated statements.
  std::string cleaned;
  cleaned.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else {
      cleaned.push_back(text[i]);
      ++i;
    }
  }

  std::vector<std::string> statements;
  std::string current;
  for (char c : cleaned) {
    if (c == ';') {
      const std::string stmt = strip(current);
      if (!stmt.empty()) statements.push_back(stmt);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!strip(current).empty()) {
    throw std::invalid_argument("qasm: missing ';' after final statement");
  }
  if (statements.empty() || statements[0].rfind("OPENQASM", 0) != 0) {
    throw std::invalid_argument("qasm: missing OPENQASM version header");
  }
  if (strip(statements[0].substr(8)) != "2.0") {
    throw std::invalid_argument("qasm: unsupported OPENQASM version");
  }

  std::optional<RegisterDecl> qreg;
  std::optional<RegisterDecl> creg;
  bool has_measurement = false;
  struct PendingOp {
    std::string name;
    std::vector<double> params;
    std::vector<int> wires;
  };
  std::vector<PendingOp> pending;

  for (std::size_t i = 1; i < statements.size(); ++i) {
    const std::string& stmt = statements[i];
    if (stmt.rfind("include", 0) == 0) {
      continue;  // gate definitions are taken from the built-in qelib1 subset
    }
    if (stmt.rfind("qreg", 0) == 0) {
      if (qreg.has_value()) {
        throw std::invalid_argument("qasm: multiple quantum registers");
      }
      qreg = parse_register_decl(strip(stmt.substr(4)));
      continue;
    }
    if (stmt.rfind("creg", 0) == 0) {
      creg = parse_register_decl(strip(stmt.substr(4)));
      continue;
    }
    if (stmt.rfind("measure", 0) == 0) {
      if (!qreg.has_value() || !creg.has_value()) {
        throw std::invalid_argument("qasm: measure before register declarations");
      }
      const std::vector<std::string> sides = [&] {
        const std::size_t arrow = stmt.find("->");
        if (arrow == std::string::npos) {
          throw std::invalid_argument("qasm: malformed measure statement");
        }
        return std::vector<std::string>{strip(stmt.substr(7, arrow - 7)),
                                        strip(stmt.substr(arrow + 2))};
      }();
      const int wire = parse_reference(sides[0], qreg->name);
      const int bit = parse_reference(sides[1], creg->name);
      if (wire < 0 || wire >= qreg->size || bit < 0 || bit >= creg->size) {
        throw std::invalid_argument("qasm: measure index out of range");
      }
      has_measurement = true;
      continue;
    }

    // Gate application: name[(params)] operands
    std::size_t name_end = 0;
    while (name_end < stmt.size() &&
           (std::isalnum(static_cast<unsigned char>(stmt[name_end])) ||
            stmt[name_end] == '_')) {
      ++name_end;
    }
    const std::string name = stmt.substr(0, name_end);
    std::string rest = strip(stmt.substr(name_end));
    std::vector<double> params;
    if (!rest.empty() && rest[0] == '(') {
      const std::size_t close = rest.rfind(')');
      if (close == std::string::npos) {
        throw std::invalid_argument("qasm: missing ')' in gate parameters");
      }
      for (const std::string& piece :
           split_on(rest.substr(1, close - 1), ',')) {
        params.push_back(eval_angle(piece));
      }
      rest = strip(rest.substr(close + 1));
    }
    if (!qreg.has_value()) {
      throw std::invalid_argument("qasm: gate before the qreg declaration");
    }
    std::vector<int> wires;
    for (const std::string& operand : split_on(rest, ',')) {
      const int wire = parse_reference(operand, qreg->name);
      if (wire < 0 || wire >= qreg->size) {
        throw std::invalid_argument("qasm: wire index out of range");
      }
      wires.push_back(wire);
    }

    if (name == "cx") {
      if (!params.empty() || wires.size() != 2) {
        throw std::invalid_argument("qasm: malformed cx statement");
      }
    } else if (name == "u1" || name == "ry" || name == "rz") {
      if (params.size() != 1 || wires.size() != 1) {
        throw std::invalid_argument("qasm: malformed " + name + " statement");
      }
    } else {
      throw std::invalid_argument("qasm: unsupported statement '" + stmt + "'");
    }
    pending.push_back(PendingOp{name, std::move(params), std::move(wires)});
  }

  if (!qreg.has_value()) {
    throw std::invalid_argument("qasm: missing qreg declaration");
  }

  QuantumCircuit circuit(qreg->size);
  for (PendingOp& op : pending) {
    if (op.name == "cx") {
      circuit.append(cnot_gate(), std::move(op.wires), "cx");
      continue;
    }
    // Read the angle before std::move(op.params) can empty the vector (the
    // evaluation order of function arguments is unspecified).
    const double angle = op.params[0];
    if (op.name == "u1") {
      circuit.append(u1_gate(angle), std::move(op.wires), "u1",
                     std::move(op.params));
    } else if (op.name == "ry") {
      circuit.append(ry_gate(angle), std::move(op.wires), "ry",
                     std::move(op.params));
    } else {
      circuit.append(rz_gate(angle), std::move(op.wires), "rz",
                     std::move(op.params));
    }
  }
  return ParsedQasm{std::move(circuit), has_measurement};
}

}  // namespace homog
