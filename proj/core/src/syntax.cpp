/*
   Copyright 2026 The difftower Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "difftower/syntax.hpp"

#include <cctype>
#include <climits>
#include <optional>
#include <utility>

#include "difftower/error.hpp"
#include "difftower/format.hpp"

namespace difftower {

namespace {

struct Token {
    enum class Kind { integer, ident, symbol, end };
    Kind kind;
    std::string text;
    unsigned primes = 0;
    int line;
    int column;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view s, int line, int column) {
    std::vector<Token> out;
    const int first_column = column;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (c == '\n') {
            ++line;
            column = first_column;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            ++column;
            continue;
        }
        const std::size_t start = i;
        Token t{Token::Kind::symbol, "", 0, line, column};
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            t.kind = Token::Kind::integer;
        } else if (ident_start(c)) {
            while (i < s.size() && ident_char(s[i])) ++i;
            t.kind = Token::Kind::ident;
        } else if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
            ++i;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, column);
        }
        t.text = std::string(s.substr(start, i - start));
        if (t.kind == Token::Kind::ident)
            while (i < s.size() && s[i] == '\'') {
                ++t.primes;
                ++i;
            }
        column += static_cast<int>(i - start);
        out.push_back(std::move(t));
    }
    out.push_back({Token::Kind::end, "", 0, line, column});
    return out;
}

class Parser {
   public:
    explicit Parser(std::vector<Token> tokens) : t_(std::move(tokens)) {}

    Expr parse() {
        Expr e = expr();
        if (peek().kind != Token::Kind::end) fail("unexpected '" + peek().text + "'");
        return e;
    }

   private:
    std::vector<Token> t_;
    std::size_t pos_ = 0;

    const Token& peek() const { return t_[pos_]; }
    bool at(const char* sym) const { return peek().kind == Token::Kind::symbol && peek().text == sym; }
    [[noreturn]] void fail(const std::string& what) const {
        const std::string msg = peek().kind == Token::Kind::end ? "unexpected end of input" : what;
        throw ParseError(msg, peek().line, peek().column);
    }

    static Expr node(Expr::Kind kind, const Token& at, std::vector<Expr> args) {
        Expr e;
        e.kind = kind;
        e.line = at.line;
        e.column = at.column;
        e.args = std::move(args);
        return e;
    }

    Expr expr() {
        Expr lhs = term();
        while (at("+") || at("-")) {
            const Token op = t_[pos_++];
            lhs = node(op.text == "+" ? Expr::Kind::add : Expr::Kind::sub, op, {std::move(lhs), term()});
        }
        return lhs;
    }

    Expr term() {
        Expr lhs = unary();
        while (at("*") || at("/")) {
            const Token op = t_[pos_++];
            lhs = node(op.text == "*" ? Expr::Kind::mul : Expr::Kind::div, op, {std::move(lhs), unary()});
        }
        return lhs;
    }

    Expr unary() {
        if (at("-")) {
            const Token op = t_[pos_++];
            return node(Expr::Kind::neg, op, {unary()});
        }
        if (at("+")) {
            ++pos_;
            return unary();
        }
        return power();
    }

    long exponent() {
        const bool paren = at("(");
        if (paren) ++pos_;
        const bool negative = at("-");
        if (negative) ++pos_;
        if (peek().kind != Token::Kind::integer) fail("expected an integer exponent");
        const mpz_class v(t_[pos_].text);
        if (!v.fits_slong_p() || v > 1000000) fail("exponent too large");
        ++pos_;
        if (paren) {
            if (!at(")")) fail("expected ')'");
            ++pos_;
        }
        return negative ? -v.get_si() : v.get_si();
    }

    Expr power() {
        Expr base = primary();
        if (at("^")) {
            const Token op = t_[pos_++];
            const long k = exponent();
            base = node(Expr::Kind::pow, op, {std::move(base)});
            base.exponent = k;
        }
        return base;
    }

    Expr primary() {
        const Token& tok = peek();
        if (tok.kind == Token::Kind::integer) {
            Expr e = node(Expr::Kind::integer, tok, {});
            e.value = mpz_class(tok.text);
            ++pos_;
            return e;
        }
        if (tok.kind == Token::Kind::ident) {
            Expr e = node(Expr::Kind::name, tok, {});
            e.name = tok.text;
            e.primes = tok.primes;
            ++pos_;
            return e;
        }
        if (at("(")) {
            ++pos_;
            Expr e = expr();
            if (!at(")")) fail("expected ')'");
            ++pos_;
            return e;
        }
        fail("unexpected '" + tok.text + "'");
    }
};

[[noreturn]] void fail_at(const Expr& e, const std::string& what) { throw ParseError(what, e.line, e.column); }

void no_primes(const Expr& e) {
    if (e.primes) fail_at(e, "derivative marks are only allowed on u in differential polynomials");
}

// Evaluation shared by the three value kinds: V supplies leaves, products and
// scalar division.
template <class V, class Leaf, class Mul, class Div, class Pow>
V evaluate(const Expr& e, Leaf leaf, Mul mul, Div div, Pow power) {
    auto rec = [&](const Expr& x) { return evaluate<V>(x, leaf, mul, div, power); };
    switch (e.kind) {
        case Expr::Kind::integer:
        case Expr::Kind::name:
            return leaf(e);
        case Expr::Kind::neg:
            return -rec(e.args[0]);
        case Expr::Kind::add:
            return rec(e.args[0]) + rec(e.args[1]);
        case Expr::Kind::sub:
            return rec(e.args[0]) - rec(e.args[1]);
        case Expr::Kind::mul:
            return mul(rec(e.args[0]), rec(e.args[1]));
        case Expr::Kind::div:
            return div(e, rec(e.args[0]));
        case Expr::Kind::pow:
            return power(e, rec(e.args[0]));
    }
    fail_at(e, "malformed expression");
}

Elem name_value(const Expr& e, const Scope& scope) {
    no_primes(e);
    if (auto k = scope.tower.find(e.name)) return Elem::generator(*k);
    if (auto it = scope.lets.find(e.name); it != scope.lets.end()) return it->second;
    fail_at(e, "unknown identifier '" + e.name + "'");
}

template <class V>
V nonnegative_power(const Expr& e, const V& base, V one, const auto& mul) {
    if (e.exponent < 0) fail_at(e, "negative exponent on a non-invertible expression");
    V r = std::move(one);
    for (long k = 0; k < e.exponent; ++k) r = mul(r, base);
    return r;
}

}  // namespace

Expr parse_expr(std::string_view text, int line, int column) { return Parser(tokenize(text, line, column)).parse(); }

std::string to_string(const Expr& e) {
    auto bin = [&](const char* op) { return "(" + to_string(e.args[0]) + " " + op + " " + to_string(e.args[1]) + ")"; };
    switch (e.kind) {
        case Expr::Kind::integer:
            return e.value.get_str();
        case Expr::Kind::name:
            return e.name + std::string(e.primes, '\'');
        case Expr::Kind::neg:
            return "(-" + to_string(e.args[0]) + ")";
        case Expr::Kind::add:
            return bin("+");
        case Expr::Kind::sub:
            return bin("-");
        case Expr::Kind::mul:
            return bin("*");
        case Expr::Kind::div:
            return bin("/");
        case Expr::Kind::pow:
            return "(" + to_string(e.args[0]) + "^" + std::to_string(e.exponent) + ")";
    }
    return "?";
}

bool Scope::defines(const std::string& name) const {
    return tower.find(name).has_value() || lets.count(name) || ops.count(name);
}

Elem eval_element(const Expr& e, const Scope& scope) {
    auto leaf = [&](const Expr& x) {
        if (x.kind == Expr::Kind::integer) return Elem(mpq_class(x.value));
        if (x.name == "D" && !scope.defines("D")) fail_at(x, "D is an operator, expected an element");
        return name_value(x, scope);
    };
    auto mul = [](const Elem& a, const Elem& b) { return a * b; };
    auto div = [&](const Expr& x, const Elem& a) {
        const Elem b = eval_element(x.args[1], scope);
        if (b.is_zero()) fail_at(x, "division by zero");
        return a / b;
    };
    auto power = [&](const Expr& x, const Elem& a) {
        if (a.is_zero() && x.exponent < 0) fail_at(x, "division by zero");
        return pow(a, x.exponent);
    };
    return evaluate<Elem>(e, leaf, mul, div, power);
}

LinDiffOp eval_operator(const Expr& e, const Scope& scope) {
    auto leaf = [&](const Expr& x) {
        if (x.kind == Expr::Kind::integer) return LinDiffOp::scalar(Elem(mpq_class(x.value)));
        no_primes(x);
        if (auto it = scope.ops.find(x.name); it != scope.ops.end()) return it->second;
        if (x.name == "D") return LinDiffOp::derivation();
        return LinDiffOp::scalar(name_value(x, scope));
    };
    auto mul = [&](const LinDiffOp& a, const LinDiffOp& b) { return difftower::mul(a, b, scope.tower); };
    // A / c is (1/c) A: the divisor must be an element.
    auto div = [&](const Expr& x, const LinDiffOp& a) {
        const Elem c = eval_element(x.args[1], scope);
        if (c.is_zero()) fail_at(x, "division by zero");
        return scale(c.inverse(), a);
    };
    auto power = [&](const Expr& x, const LinDiffOp& a) {
        if (a.order() == 0 && x.exponent < 0) {
            if (a.is_zero()) fail_at(x, "division by zero");
            return LinDiffOp::scalar(pow(a.coeff(0), x.exponent));
        }
        return nonnegative_power(x, a, LinDiffOp::scalar(1), mul);
    };
    return evaluate<LinDiffOp>(e, leaf, mul, div, power);
}

DiffPoly eval_differential(const Expr& e, const Scope& scope) {
    auto leaf = [&](const Expr& x) {
        if (x.kind == Expr::Kind::integer) return DiffPoly::constant(Elem(mpq_class(x.value)));
        if (x.name == "u") return DiffPoly::variable(x.primes);
        return DiffPoly::constant(name_value(x, scope));
    };
    auto mul = [](const DiffPoly& a, const DiffPoly& b) { return a * b; };
    auto div = [&](const Expr& x, const DiffPoly& a) {
        const Elem c = eval_element(x.args[1], scope);
        if (c.is_zero()) fail_at(x, "division by zero");
        return scale(c.inverse(), a);
    };
    auto power = [&](const Expr& x, const DiffPoly& a) {
        if (a.degree() <= 0 && x.exponent < 0) {
            if (a.is_zero()) fail_at(x, "division by zero");
            return DiffPoly::constant(pow(a.coeff({}), x.exponent));
        }
        return nonnegative_power(x, a, DiffPoly::constant(1), mul);
    };
    return evaluate<DiffPoly>(e, leaf, mul, div, power);
}

Elem parse_element(std::string_view text, const Scope& scope) { return eval_element(parse_expr(text), scope); }
LinDiffOp parse_operator(std::string_view text, const Scope& scope) { return eval_operator(parse_expr(text), scope); }
DiffPoly parse_differential(std::string_view text, const Scope& scope) {
    return eval_differential(parse_expr(text), scope);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::size_t leading_space(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return i;
}

bool valid_ident(std::string_view s) {
    if (s.empty() || !ident_start(s.front())) return false;
    for (char c : s)
        if (!ident_char(c)) return false;
    return true;
}

}  // namespace

Script parse_script(std::string_view text) {
    Script script;
    Scope& scope = script.scope;
    bool have_base = false, have_statement = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const std::size_t indent = leading_space(line);
        line = trim(line);
        if (line.empty()) continue;
        const int col0 = static_cast<int>(indent) + 1;

        const std::size_t sp = line.find_first_of(" \t");
        const std::string keyword(line.substr(0, sp));
        const std::string_view rest = sp == std::string_view::npos ? std::string_view() : line.substr(sp);
        const int rest_col = col0 + static_cast<int>(sp == std::string_view::npos ? line.size() : sp);

        if (keyword == "base") {
            const std::string name(trim(rest));
            if (have_base) throw ParseError("duplicate base statement", line_no, col0);
            if (have_statement) throw ParseError("base must be the first statement", line_no, col0);
            if (!valid_ident(name) || name == "D") throw ParseError("expected a base name", line_no, rest_col + 1);
            scope.tower = Tower::rational(name);
            have_base = true;
            have_statement = true;
            script.statements.push_back({Statement::Kind::base, name, "", line_no});
            continue;
        }
        Statement::Kind kind;
        if (keyword == "extend")
            kind = Statement::Kind::extend;
        else if (keyword == "let")
            kind = Statement::Kind::let;
        else if (keyword == "op")
            kind = Statement::Kind::op;
        else
            throw ParseError("unknown statement '" + keyword + "'", line_no, col0);
        if (!have_statement) script.statements.push_back({Statement::Kind::base, "x", "", 0});
        have_statement = true;

        const std::size_t eq = rest.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected '='", line_no, rest_col + static_cast<int>(rest.size()));
        const std::string name(trim(rest.substr(0, eq)));
        if (!valid_ident(name)) throw ParseError("expected a name", line_no, rest_col + 1);
        if (name == "D" || name == "u") throw ParseError("'" + name + "' is reserved", line_no, rest_col + 1);
        if (scope.defines(name)) throw ParseError("'" + name + "' is already defined", line_no, rest_col + 1);
        const std::string_view rhs_raw = rest.substr(eq + 1);
        const std::string_view rhs = trim(rhs_raw);
        const int rhs_col = rest_col + static_cast<int>(eq + 1 + leading_space(rhs_raw));
        if (rhs.empty()) throw ParseError("expected an expression", line_no, rhs_col);
        const Expr ast = parse_expr(rhs, line_no, rhs_col);
        switch (kind) {
            case Statement::Kind::extend: {
                Scope inner = scope;
                const int level = scope.tower.height() + 1;
                // The new indeterminate is visible to its own rule.
                inner.lets[name] = Elem::generator(level);
                const Elem rule = eval_element(ast, inner);
                try {
                    scope.tower = scope.tower.adjoin(name, rule);
                } catch (const DomainError& err) {
                    throw ParseError(err.what(), line_no, rhs_col);
                }
                break;
            }
            case Statement::Kind::let:
                scope.lets[name] = eval_element(ast, scope);
                break;
            case Statement::Kind::op:
                scope.ops[name] = eval_operator(ast, scope);
                break;
            case Statement::Kind::base:
                break;
        }
        script.statements.push_back({kind, name, std::string(rhs), line_no});
    }
    if (script.statements.empty()) script.statements.push_back({Statement::Kind::base, "x", "", 0});
    return script;
}

std::string format(const Script& script) {
    const Scope& s = script.scope;
    std::string out;
    for (const Statement& st : script.statements) {
        switch (st.kind) {
            case Statement::Kind::base:
                out += "base " + st.name + "\n";
                break;
            case Statement::Kind::extend: {
                const int k = *s.tower.find(st.name);
                out += "extend " + st.name + " = " + format(s.tower.level(k).rule.rule, s.tower) + "\n";
                break;
            }
            case Statement::Kind::let:
                out += "let " + st.name + " = " + format(s.lets.at(st.name), s.tower) + "\n";
                break;
            case Statement::Kind::op:
                out += "op " + st.name + " = " + format(s.ops.at(st.name), s.tower) + "\n";
                break;
        }
    }
    return out;
}

}  // namespace difftower
