// Copyright 2026 The qvbench Authors
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

#include <filesystem>
#include <string>
#include <string_view>

#include "qvbench/circuit.hpp"
#include "qvbench/errors.hpp"

namespace qvb {

enum class QasmErrorKind {
    Syntax,
    UndeclaredRegister,
    IndexOutOfRange,
    Arity,
    Unsupported,
};

std::string_view qasm_error_kind_name(QasmErrorKind kind);

class QasmError : public InvalidInput {
   public:
    QasmError(QasmErrorKind kind, int line, int column, const std::string &message);

    QasmErrorKind kind() const { return kind_; }
    int line() const { return line_; }
    int column() const { return column_; }

   private:
    QasmErrorKind kind_;
    int line_;
    int column_;
};

/// Parses the OpenQASM 2.0 subset understood by the IR: qreg/creg
/// declarations, the qelib1 gates of GateKind (plus U and CX), measure and
/// barrier. Registers are flattened in declaration order; whole-register
/// operands broadcast. Parameters accept literals, pi, + - * / and parens.
Circuit parse_qasm(std::string_view text);

Circuit read_qasm_file(const std::filesystem::path &path);

/// Emits a single `q`/`c` register program. Parameters are printed with
/// shortest round-trip precision so parse_qasm(emit_qasm(c)) == c for any
/// su4-free circuit; su4 gates are written as their three-cx decomposition.
std::string emit_qasm(const Circuit &circuit);

}  // namespace qvb
