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

#include "qvbench/qasm.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "qvbench/synthesis.hpp"

namespace qvb {

std::string_view qasm_error_kind_name(QasmErrorKind kind) {
    switch (kind) {
        case QasmErrorKind::Syntax:
            return "syntax error";
        case QasmErrorKind::UndeclaredRegister:
            return "undeclared register";
        case QasmErrorKind::IndexOutOfRange:
            return "index out of range";
        case QasmErrorKind::Arity:
            return "arity error";
        case QasmErrorKind::Unsupported:
            return "unsupported construct";
    }
    return "error";
}

QasmError::QasmError(QasmErrorKind kind, int line, int column, const std::string &message)
    : InvalidInput(std::string(qasm_error_kind_name(kind)) + " at line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { End, Ident, Number, String, Symbol };

struct Token {
    Tok type = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
   public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments();
            Token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            const char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                t.type = Tok::Ident;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                    t.text += advance();
                }
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                t.type = Tok::Number;
                while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
                    t.text += advance();
                }
                if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                    t.text += advance();
                    if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                        t.text += advance();
                    }
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                        t.text += advance();
                    }
                }
            } else if (c == '"') {
                t.type = Tok::String;
                advance();
                while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
                    t.text += advance();
                }
                if (pos_ >= src_.size() || src_[pos_] != '"') {
                    throw QasmError(QasmErrorKind::Syntax, t.line, t.column, "unterminated string");
                }
                advance();
            } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
                t.type = Tok::Symbol;
                t.text = "->";
                advance();
                advance();
            } else if (c == '=' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
                t.type = Tok::Symbol;
                t.text = "==";
                advance();
                advance();
            } else if (std::string_view(";,()[]{}+-*/^").find(c) != std::string_view::npos) {
                t.type = Tok::Symbol;
                t.text = std::string(1, advance());
            } else {
                throw QasmError(QasmErrorKind::Syntax, t.line, t.column,
                                std::string("unexpected character '") + c + "'");
            }
            out.push_back(std::move(t));
        }
    }

   private:
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
                advance();
                advance();
                while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) {
                    advance();
                }
                if (pos_ + 1 >= src_.size()) {
                    throw QasmError(QasmErrorKind::Syntax, line_, col_, "unterminated block comment");
                }
                advance();
                advance();
            } else {
                return;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct Register {
    int offset = 0;
    int size = 0;
};

// One operand: a single index, or a whole register when index < 0.
struct Operand {
    const Register *reg = nullptr;
    int index = -1;
    Token where;
};

class Parser {
   public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Circuit run() {
        expect_ident("OPENQASM");
        const Token version = next();
        if (version.type != Tok::Number) {
            fail(QasmErrorKind::Syntax, version, "expected version number");
        }
        if (version.text != "2.0" && version.text != "2") {
            fail(QasmErrorKind::Unsupported, version, "OpenQASM version " + version.text);
        }
        expect_symbol(";");
        while (peek().type != Tok::End) {
            statement();
        }
        Circuit circuit(num_qubits_, num_clbits_);
        for (auto &[gate, where] : gates_) {
            try {
                circuit.append(std::move(gate));
            } catch (const InvalidInput &e) {
                fail(QasmErrorKind::Syntax, where, e.what());
            }
        }
        return circuit;
    }

   private:
    [[noreturn]] void fail(QasmErrorKind kind, const Token &t, const std::string &msg) {
        throw QasmError(kind, t.line, t.column, msg);
    }

    const Token &peek() const { return toks_[pos_]; }
    Token next() {
        Token t = toks_[pos_];
        if (t.type != Tok::End) {
            ++pos_;
        }
        return t;
    }
    bool is_symbol(std::string_view s) const { return peek().type == Tok::Symbol && peek().text == s; }

    void expect_symbol(std::string_view s) {
        Token t = next();
        if (t.type != Tok::Symbol || t.text != s) {
            fail(QasmErrorKind::Syntax, t,
                 "expected '" + std::string(s) + "'" + (t.type == Tok::End ? " before end of input" : ", found '" + t.text + "'"));
        }
    }
    void expect_ident(std::string_view s) {
        Token t = next();
        if (t.type != Tok::Ident || t.text != s) {
            fail(QasmErrorKind::Syntax, t, "expected '" + std::string(s) + "'");
        }
    }
    Token expect_ident_any() {
        Token t = next();
        if (t.type != Tok::Ident) {
            fail(QasmErrorKind::Syntax, t, "expected identifier");
        }
        return t;
    }
    int expect_int() {
        Token t = next();
        int value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (t.type != Tok::Number || ec != std::errc() || ptr != t.text.data() + t.text.size()) {
            fail(QasmErrorKind::Syntax, t, "expected integer");
        }
        return value;
    }

    void statement() {
        const Token head = peek();
        if (head.type != Tok::Ident) {
            fail(QasmErrorKind::Syntax, head, "expected statement, found '" + head.text + "'");
        }
        const std::string &kw = head.text;
        if (kw == "include") {
            next();
            Token file = next();
            if (file.type != Tok::String) {
                fail(QasmErrorKind::Syntax, file, "expected file name string");
            }
            if (file.text != "qelib1.inc") {
                fail(QasmErrorKind::Unsupported, file, "include of '" + file.text + "'");
            }
            expect_symbol(";");
        } else if (kw == "qreg" || kw == "creg") {
            next();
            declare(kw == "qreg");
        } else if (kw == "measure") {
            next();
            measure(head);
        } else if (kw == "barrier") {
            next();
            barrier(head);
        } else if (kw == "gate" || kw == "opaque" || kw == "if" || kw == "reset") {
            fail(QasmErrorKind::Unsupported, head, "'" + kw + "' statements");
        } else {
            gate_call();
        }
    }

    void declare(bool quantum) {
        const Token name = expect_ident_any();
        expect_symbol("[");
        const Token size_tok = peek();
        const int size = expect_int();
        if (size <= 0) {
            fail(QasmErrorKind::Syntax, size_tok, "register size must be positive");
        }
        expect_symbol("]");
        expect_symbol(";");
        if (qregs_.count(name.text) || cregs_.count(name.text)) {
            fail(QasmErrorKind::Syntax, name, "register '" + name.text + "' redeclared");
        }
        if (quantum) {
            qregs_[name.text] = Register{num_qubits_, size};
            num_qubits_ += size;
        } else {
            cregs_[name.text] = Register{num_clbits_, size};
            num_clbits_ += size;
        }
    }

    Operand operand(bool quantum) {
        const Token name = expect_ident_any();
        const auto &regs = quantum ? qregs_ : cregs_;
        auto it = regs.find(name.text);
        if (it == regs.end()) {
            fail(QasmErrorKind::UndeclaredRegister, name,
                 std::string(quantum ? "quantum" : "classical") + " register '" + name.text + "' is not declared");
        }
        Operand op{&it->second, -1, name};
        if (is_symbol("[")) {
            next();
            const Token idx_tok = peek();
            op.index = expect_int();
            expect_symbol("]");
            if (op.index < 0 || op.index >= it->second.size) {
                fail(QasmErrorKind::IndexOutOfRange, idx_tok,
                     "index " + std::to_string(op.index) + " out of range for '" + name.text + "[" +
                         std::to_string(it->second.size) + "]'");
            }
        }
        return op;
    }

    std::vector<Operand> operand_list() {
        std::vector<Operand> ops{operand(true)};
        while (is_symbol(",")) {
            next();
            ops.push_back(operand(true));
        }
        return ops;
    }

    // Resolves broadcast: every whole-register operand must share one size.
    std::vector<std::vector<int>> expand(const std::vector<Operand> &ops, const Token &where) {
        int width = 1;
        bool any_register = false;
        for (const auto &op : ops) {
            if (op.index < 0) {
                if (any_register && op.reg->size != width) {
                    fail(QasmErrorKind::Arity, where, "broadcast over registers of different sizes");
                }
                width = op.reg->size;
                any_register = true;
            }
        }
        std::vector<std::vector<int>> out(width);
        for (int k = 0; k < width; ++k) {
            for (const auto &op : ops) {
                out[k].push_back(op.reg->offset + (op.index < 0 ? k : op.index));
            }
        }
        return out;
    }

    void measure(const Token &head) {
        const Operand q = operand(true);
        expect_symbol("->");
        const Operand c = operand(false);
        expect_symbol(";");
        const int qw = q.index < 0 ? q.reg->size : 1;
        const int cw = c.index < 0 ? c.reg->size : 1;
        if ((q.index < 0) != (c.index < 0) || qw != cw) {
            fail(QasmErrorKind::Arity, head, "measure operands have mismatched widths");
        }
        for (int k = 0; k < qw; ++k) {
            const int qi = q.reg->offset + (q.index < 0 ? k : q.index);
            const int ci = c.reg->offset + (c.index < 0 ? k : c.index);
            gates_.emplace_back(Gate::measure(qi, ci), head);
        }
    }

    void barrier(const Token &head) {
        std::vector<Operand> ops = operand_list();
        expect_symbol(";");
        std::vector<int> qubits;
        for (const auto &op : ops) {
            if (op.index < 0) {
                for (int k = 0; k < op.reg->size; ++k) {
                    qubits.push_back(op.reg->offset + k);
                }
            } else {
                qubits.push_back(op.reg->offset + op.index);
            }
        }
        gates_.emplace_back(Gate::barrier(std::move(qubits)), head);
    }

    void gate_call() {
        const Token name = next();
        std::optional<GateKind> kind;
        if (name.text == "U") {
            kind = GateKind::U3;
        } else if (name.text == "CX") {
            kind = GateKind::CX;
        } else {
            kind = gate_kind_from_name(name.text);
        }
        if (!kind || *kind == GateKind::SU4 || *kind == GateKind::Measure || *kind == GateKind::Barrier) {
            fail(QasmErrorKind::Unsupported, name, "gate '" + name.text + "'");
        }
        std::vector<double> params;
        if (is_symbol("(")) {
            next();
            if (!is_symbol(")")) {
                params.push_back(expr());
                while (is_symbol(",")) {
                    next();
                    params.push_back(expr());
                }
            }
            expect_symbol(")");
        }
        if (params.size() != gate_param_count(*kind)) {
            fail(QasmErrorKind::Arity, name,
                 "gate '" + name.text + "' takes " + std::to_string(gate_param_count(*kind)) + " parameter(s), got " +
                     std::to_string(params.size()));
        }
        std::vector<Operand> ops = operand_list();
        expect_symbol(";");
        if (ops.size() != gate_arity(*kind)) {
            fail(QasmErrorKind::Arity, name,
                 "gate '" + name.text + "' takes " + std::to_string(gate_arity(*kind)) + " qubit(s), got " +
                     std::to_string(ops.size()));
        }
        for (auto &qubits : expand(ops, name)) {
            for (std::size_t i = 0; i < qubits.size(); ++i) {
                for (std::size_t j = 0; j < i; ++j) {
                    if (qubits[i] == qubits[j]) {
                        fail(QasmErrorKind::Syntax, name, "repeated qubit operand");
                    }
                }
            }
            Gate g;
            g.kind = *kind;
            g.qubits = std::move(qubits);
            g.params = params;
            gates_.emplace_back(std::move(g), name);
        }
    }

    double expr() {
        double v = term();
        while (is_symbol("+") || is_symbol("-")) {
            const bool plus = next().text == "+";
            const double rhs = term();
            v = plus ? v + rhs : v - rhs;
        }
        return v;
    }

    double term() {
        double v = unary();
        while (is_symbol("*") || is_symbol("/")) {
            const bool mul = next().text == "*";
            const double rhs = unary();
            v = mul ? v * rhs : v / rhs;
        }
        return v;
    }

    double unary() {
        if (is_symbol("-")) {
            next();
            return -unary();
        }
        if (is_symbol("+")) {
            next();
            return unary();
        }
        return primary();
    }

    double primary() {
        Token t = next();
        if (t.type == Tok::Number) {
            double v = 0;
            auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
                fail(QasmErrorKind::Syntax, t, "malformed number '" + t.text + "'");
            }
            return v;
        }
        if (t.type == Tok::Ident && t.text == "pi") {
            return std::numbers::pi;
        }
        if (t.type == Tok::Symbol && t.text == "(") {
            double v = expr();
            expect_symbol(")");
            return v;
        }
        if (t.type == Tok::Ident && is_symbol("(")) {
            fail(QasmErrorKind::Unsupported, t, "function '" + t.text + "' in parameter expression");
        }
        if (t.type == Tok::Symbol && t.text == "^") {
            fail(QasmErrorKind::Unsupported, t, "power operator in parameter expression");
        }
        fail(QasmErrorKind::Syntax, t, "expected parameter expression");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::unordered_map<std::string, Register> qregs_;
    std::unordered_map<std::string, Register> cregs_;
    int num_qubits_ = 0;
    int num_clbits_ = 0;
    std::vector<std::pair<Gate, Token>> gates_;
};

std::string format_param(double v) {
    char buf[64];
    auto ptr = std::to_chars(buf, buf + sizeof(buf), v).ptr;
    return std::string(buf, ptr);
}

void write_gate(std::ostream &out, const Gate &g) {
    out << gate_name(g.kind);
    if (!g.params.empty()) {
        out << '(';
        for (std::size_t i = 0; i < g.params.size(); ++i) {
            out << (i ? "," : "") << format_param(g.params[i]);
        }
        out << ')';
    }
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
        out << (i ? "," : " ") << "q[" << g.qubits[i] << ']';
    }
    if (g.kind == GateKind::Measure) {
        out << " -> c[" << g.clbit << ']';
    }
    out << ";\n";
}

}  // namespace

Circuit parse_qasm(std::string_view text) {
    Lexer lexer(text);
    Parser parser(lexer.run());
    return parser.run();
}

Circuit read_qasm_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open QASM file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    Circuit c = parse_qasm(buf.str());
    c.set_name(path.stem().string());
    return c;
}

std::string emit_qasm(const Circuit &circuit) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    if (circuit.num_qubits() > 0) {
        out << "qreg q[" << circuit.num_qubits() << "];\n";
    }
    if (circuit.num_clbits() > 0) {
        out << "creg c[" << circuit.num_clbits() << "];\n";
    }
    for (const auto &g : circuit) {
        if (g.kind == GateKind::SU4) {
            for (const auto &d : decompose_two_qubit(*g.matrix, g.qubits[0], g.qubits[1])) {
                write_gate(out, d);
            }
        } else {
            write_gate(out, g);
        }
    }
    return out.str();
}

}  // namespace qvb
