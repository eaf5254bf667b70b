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

#include "qrsim/dsl.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include "qrsim/state.hpp"

namespace qrsim {

namespace {

enum class TokenKind { Ident, Number, LParen, RParen, LBracket, RBracket, Comma, Arrow, Sign, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    int column = 1;
};

std::vector<Token> lex_line(const std::string& line, std::vector<std::string>& bad_chars) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        const int column = static_cast<int>(i) + 1;
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < line.size() && line[i + 1] == '/') break;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) ||
                                       line[j] == '_')) {
                ++j;
            }
            tokens.push_back({TokenKind::Ident, line.substr(i, j - i), column});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t j = i;
            bool seen_exp = false;
            while (j < line.size()) {
                const char d = line[j];
                if (std::isdigit(static_cast<unsigned char>(d)) || d == '.') {
                    ++j;
                } else if ((d == 'e' || d == 'E') && !seen_exp) {
                    seen_exp = true;
                    ++j;
                    if (j < line.size() && (line[j] == '+' || line[j] == '-')) ++j;
                } else {
                    break;
                }
            }
            tokens.push_back({TokenKind::Number, line.substr(i, j - i), column});
            i = j;
            continue;
        }
        switch (c) {
            case '(': tokens.push_back({TokenKind::LParen, "(", column}); break;
            case ')': tokens.push_back({TokenKind::RParen, ")", column}); break;
            case '[': tokens.push_back({TokenKind::LBracket, "[", column}); break;
            case ']': tokens.push_back({TokenKind::RBracket, "]", column}); break;
            case ',': tokens.push_back({TokenKind::Comma, ",", column}); break;
            case '+':
            case '-':
                if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
                    tokens.push_back({TokenKind::Arrow, "->", column});
                    ++i;
                } else {
                    tokens.push_back({TokenKind::Sign, std::string(1, c), column});
                }
                break;
            default:
                bad_chars.push_back(std::string(1, c) + "@" + std::to_string(column));
                break;
        }
        ++i;
    }
    return tokens;
}

// Per-line recursive-descent parser; every failure is recorded and the rest
// of the line abandoned, so one pass collects all diagnostics.
class Parser {
  public:
    ParseResult run(const std::string& source) {
        std::vector<std::string> lines;
        std::string current;
        for (char c : source) {
            if (c == '\n') {
                lines.push_back(current);
                current.clear();
            } else {
                current.push_back(c);
            }
        }
        if (!current.empty()) lines.push_back(current);

        for (std::size_t n = 0; n < lines.size(); ++n) {
            line_number_ = static_cast<int>(n) + 1;
            parse_line(lines[n]);
        }
        if (!saw_qubits_) {
            semantic({1, 1}, "missing 'qubits' declaration");
        }
        ParseResult result;
        result.diagnostics = std::move(diagnostics_);
        if (result.diagnostics.empty()) result.circuit = std::move(circuit_);
        return result;
    }

  private:
    void parse_line(const std::string& line) {
        std::vector<std::string> bad_chars;
        tokens_ = lex_line(line, bad_chars);
        pos_ = 0;
        line_length_ = static_cast<int>(line.size());
        for (const std::string& bad : bad_chars) {
            const std::size_t at = bad.find('@');
            syntax({line_number_, std::stoi(bad.substr(at + 1))},
                   "unexpected character '" + bad.substr(0, at) + "'");
        }
        if (!bad_chars.empty() || tokens_.empty()) return;

        const Token& head = peek();
        if (head.kind != TokenKind::Ident) {
            syntax(span(head), "expected a statement, found '" + head.text + "'");
            return;
        }
        bool ok;
        if (head.text == "qubits") {
            ok = parse_qubits();
        } else if (head.text == "measure") {
            ok = parse_measure();
        } else {
            ok = parse_gate();
        }
        if (ok && pos_ < tokens_.size()) {
            syntax(span(peek()), "unexpected trailing token '" + peek().text + "'");
        }
    }

    bool parse_qubits() {
        const Token decl = advance();
        const std::optional<long> n = expect_integer("qubit count");
        if (!n) return false;
        if (saw_qubits_) {
            semantic(span(decl), "duplicate 'qubits' declaration");
            return false;
        }
        saw_qubits_ = true;
        if (circuit_has_content_) {
            semantic(span(decl), "'qubits' must precede all gates and measurements");
            return false;
        }
        if (*n < 1 || *n > kMaxQubits) {
            semantic(span(decl), "qubit count must be between 1 and " +
                                     std::to_string(kMaxQubits) + ", got " + std::to_string(*n));
            return false;
        }
        circuit_.num_qubits = static_cast<int>(*n);
        return true;
    }

    bool parse_measure() {
        const Token decl = advance();
        circuit_has_content_ = true;
        const std::optional<int> qubit = parse_qref();
        if (!qubit) return false;
        if (!expect(TokenKind::Arrow, "'->'")) return false;
        if (peek().kind != TokenKind::Ident || peek().text != "c") {
            syntax(span(peek()), "expected classical bit reference 'c[...]'");
            return false;
        }
        advance();
        if (!expect(TokenKind::LBracket, "'['")) return false;
        const std::optional<long> cbit = expect_integer("classical bit index");
        if (!cbit) return false;
        if (!expect(TokenKind::RBracket, "']'")) return false;

        if (!check_qubit_declared(span(decl))) return false;
        // num_qubits == 0 means the declaration itself was diagnosed; skip
        // range errors that would only echo it.
        if (circuit_.num_qubits > 0 && *qubit >= circuit_.num_qubits) {
            semantic(span(decl), "q[" + std::to_string(*qubit) + "] out of range");
            return false;
        }
        for (const Measurement& m : circuit_.measurements) {
            if (m.cbit == *cbit) {
                semantic(span(decl), "classical bit c[" + std::to_string(*cbit) +
                                         "] assigned twice");
                return false;
            }
            if (m.qubit == *qubit) {
                semantic(span(decl), "q[" + std::to_string(*qubit) + "] measured twice");
                return false;
            }
        }
        circuit_.measurements.push_back({*qubit, static_cast<int>(*cbit)});
        return true;
    }

    bool parse_gate() {
        const Token name = advance();
        circuit_has_content_ = true;
        const std::optional<GateKind> kind = gate_from_name(name.text);

        std::optional<double> param;
        if (peek().kind == TokenKind::LParen) {
            advance();
            param = parse_signed_float();
            if (!param) return false;
            if (!expect(TokenKind::RParen, "')'")) return false;
        }

        std::vector<int> qubits;
        std::optional<int> q = parse_qref();
        if (!q) return false;
        qubits.push_back(*q);
        while (peek().kind == TokenKind::Comma) {
            advance();
            q = parse_qref();
            if (!q) return false;
            qubits.push_back(*q);
        }

        if (!kind) {
            semantic(span(name), "unknown gate '" + name.text + "'");
            return false;
        }
        if (*kind == GateKind::U1 && !param) {
            semantic(span(name), "gate 'u1' requires a parameter");
            return false;
        }
        if (*kind != GateKind::U1 && param) {
            semantic(span(name), "gate '" + name.text + "' takes no parameter");
            return false;
        }
        const int arity = gate_arity(*kind);
        if (static_cast<int>(qubits.size()) != arity) {
            semantic(span(name), "gate '" + name.text + "' expects " + std::to_string(arity) +
                                     " qubit reference(s), got " +
                                     std::to_string(qubits.size()));
            return false;
        }
        if (!check_qubit_declared(span(name))) return false;
        for (int qubit : qubits) {
            if (circuit_.num_qubits > 0 && qubit >= circuit_.num_qubits) {
                semantic(span(name), "q[" + std::to_string(qubit) + "] out of range");
                return false;
            }
            for (const Measurement& m : circuit_.measurements) {
                if (m.qubit == qubit) {
                    semantic(span(name), "gate '" + name.text + "' on q[" +
                                             std::to_string(qubit) + "] after it was measured");
                    return false;
                }
            }
        }
        if (*kind == GateKind::Cx && qubits[0] == qubits[1]) {
            semantic(span(name), "cx control and target must be distinct qubits");
            return false;
        }

        GateOp op;
        op.kind = *kind;
        op.theta = param.value_or(0.0);
        op.targets = qubits;
        circuit_.ops.push_back(std::move(op));
        return true;
    }

    std::optional<int> parse_qref() {
        if (peek().kind != TokenKind::Ident || peek().text != "q") {
            syntax(span(peek()), "expected qubit reference 'q[...]', found '" + describe(peek()) +
                                     "'");
            return std::nullopt;
        }
        advance();
        if (!expect(TokenKind::LBracket, "'['")) return std::nullopt;
        const std::optional<long> index = expect_integer("qubit index");
        if (!index) return std::nullopt;
        if (!expect(TokenKind::RBracket, "']'")) return std::nullopt;
        if (*index < 0 || *index > kMaxQubits) {
            semantic(span(tokens_[pos_ - 2]), "qubit index " + std::to_string(*index) +
                                                  " out of supported range");
            return std::nullopt;
        }
        return static_cast<int>(*index);
    }

    std::optional<double> parse_signed_float() {
        double sign = 1.0;
        if (peek().kind == TokenKind::Sign) {
            if (advance().text == "-") sign = -1.0;
        }
        const Token& tok = peek();
        if (tok.kind == TokenKind::Ident && tok.text == "pi") {
            advance();
            return sign * std::numbers::pi;
        }
        if (tok.kind != TokenKind::Number) {
            syntax(span(tok), "expected a number or 'pi', found '" + describe(tok) + "'");
            return std::nullopt;
        }
        advance();
        try {
            std::size_t used = 0;
            const double value = std::stod(tok.text, &used);
            if (used != tok.text.size()) throw std::invalid_argument(tok.text);
            return sign * value;
        } catch (const std::exception&) {
            syntax(span(tok), "malformed number '" + tok.text + "'");
            return std::nullopt;
        }
    }

    std::optional<long> expect_integer(const std::string& what) {
        const Token& tok = peek();
        if (tok.kind != TokenKind::Number ||
            tok.text.find_first_not_of("0123456789") != std::string::npos) {
            syntax(span(tok), "expected " + what + ", found '" + describe(tok) + "'");
            return std::nullopt;
        }
        advance();
        try {
            return std::stol(tok.text);
        } catch (const std::out_of_range&) {
            syntax(span(tok), "integer '" + tok.text + "' out of range");
            return std::nullopt;
        }
    }

    bool check_qubit_declared(SourceSpan at) {
        if (!saw_qubits_) {
            semantic(at, "statement before 'qubits' declaration");
            return false;
        }
        return true;
    }

    bool expect(TokenKind kind, const std::string& what) {
        if (peek().kind != kind) {
            syntax(span(peek()), "expected " + what + ", found '" + describe(peek()) + "'");
            return false;
        }
        advance();
        return true;
    }

    const Token& peek() {
        if (pos_ < tokens_.size()) return tokens_[pos_];
        end_of_line_.kind = TokenKind::End;
        end_of_line_.text = "end of line";
        end_of_line_.column = line_length_ + 1;
        return end_of_line_;
    }

    Token advance() {
        const Token tok = peek();
        if (pos_ < tokens_.size()) ++pos_;
        return tok;
    }

    static std::string describe(const Token& tok) {
        return tok.kind == TokenKind::End ? "end of line" : tok.text;
    }

    SourceSpan span(const Token& tok) const { return {line_number_, tok.column}; }

    void syntax(SourceSpan at, const std::string& message) {
        diagnostics_.push_back({at, message, DiagnosticKind::Syntax});
    }
    void semantic(SourceSpan at, const std::string& message) {
        diagnostics_.push_back({at, message, DiagnosticKind::Semantic});
    }

    Circuit circuit_;
    std::vector<ParseDiagnostic> diagnostics_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int line_number_ = 1;
    int line_length_ = 0;
    bool saw_qubits_ = false;
    bool circuit_has_content_ = false;
    Token end_of_line_;
};

std::string format_param(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

}  // namespace

ParseResult parse_circuit(const std::string& source) {
    Parser parser;
    return parser.run(source);
}

std::string serialize_circuit(const Circuit& circuit) {
    std::ostringstream out;
    out << "qubits " << circuit.num_qubits << "\n";
    for (const GateOp& op : circuit.ops) {
        out << gate_name(op.kind);
        if (op.kind == GateKind::U1) out << "(" << format_param(op.theta) << ")";
        out << " q[" << op.targets[0] << "]";
        for (std::size_t i = 1; i < op.targets.size(); ++i) {
            out << ", q[" << op.targets[i] << "]";
        }
        out << "\n";
    }
    for (const Measurement& m : circuit.measurements) {
        out << "measure q[" << m.qubit << "] -> c[" << m.cbit << "]\n";
    }
    return out.str();
}

std::string format_diagnostic(const ParseDiagnostic& diagnostic) {
    std::ostringstream out;
    out << "line " << diagnostic.span.line << ", column " << diagnostic.span.column << ": "
        << (diagnostic.kind == DiagnosticKind::Syntax ? "syntax" : "semantic") << " error: "
        << diagnostic.message;
    return out.str();
}

}  // namespace qrsim
