// Copyright 2026 The qrsim authors
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

#include <string>
#include <vector>

#include "qrsim/circuit.hpp"

namespace qrsim {

// Circuit text format:
//
//   circuit  := line*
//   line     := stmt? comment? NEWLINE
//   stmt     := "qubits" INT | gate | meas
//   gate     := ID ( "(" SIGNED_FLOAT ")" )? qref ( "," qref )*
//   qref     := "q[" INT "]"
//   meas     := "measure" qref "->" "c[" INT "]"
//   comment  := "//" any-to-EOL
//
// IDs: h, x, y, z, s, sdg, u1, cx. u1 takes exactly one parameter in
// radians ("pi" is accepted as a literal); cx takes two qrefs (control,
// target); everything else one qref and no parameter. "qubits N" must
// precede all gates. All problems are reported in a single pass.

struct SourceSpan {
    int line = 1;
    int column = 1;
};

enum class DiagnosticKind { Syntax, Semantic };

struct ParseDiagnostic {
    SourceSpan span;
    std::string message;  // names the offending token
    DiagnosticKind kind = DiagnosticKind::Syntax;
};

struct ParseResult {
    Circuit circuit;
    std::vector<ParseDiagnostic> diagnostics;
    bool ok() const { return diagnostics.empty(); }
};

ParseResult parse_circuit(const std::string& source);

/// Canonical text: one statement per line, lowercase mnemonics, parameters
/// at up to 12 significant digits, ", " between qubit references.
/// parse(serialize(c)) is structurally equal to c.
std::string serialize_circuit(const Circuit& circuit);

std::string format_diagnostic(const ParseDiagnostic& diagnostic);

}  // namespace qrsim
