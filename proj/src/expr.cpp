#include "retro/expr.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <optional>

namespace retro {

struct Expr::Node {
    Kind kind;
    std::int64_t value = 0;
    char symbol = 0;
    std::optional<Expr> lhs;
    std::optional<Expr> rhs;
};

std::string_view to_string(EvalError error) noexcept {
    switch (error) {
    case EvalError::DivByZero: return "DivByZero";
    case EvalError::UnboundVariable: return "UnboundVariable";
    case EvalError::StackUnderflow: return "StackUnderflow";
    }
    return "?";
}

Expr Expr::constant(std::int64_t value) {
    return Expr(std::make_shared<const Node>(Node{Kind::Const, value, 0, std::nullopt, std::nullopt}));
}

Expr Expr::variable(char name) {
    return Expr(std::make_shared<const Node>(Node{Kind::Var, 0, name, std::nullopt, std::nullopt}));
}

Expr Expr::binary(char op, Expr lhs, Expr rhs) {
    if (!is_operator(op)) throw std::invalid_argument(std::string("not an operator: ") + op);
    return Expr(std::make_shared<const Node>(Node{Kind::BinOp, 0, op, std::move(lhs), std::move(rhs)}));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }

std::int64_t Expr::value() const {
    if (kind() != Kind::Const) throw std::logic_error("Expr::value on non-constant");
    return node_->value;
}

char Expr::name() const {
    if (kind() != Kind::Var) throw std::logic_error("Expr::name on non-variable");
    return node_->symbol;
}

char Expr::op() const {
    if (kind() != Kind::BinOp) throw std::logic_error("Expr::op on leaf");
    return node_->symbol;
}

const Expr& Expr::lhs() const {
    if (kind() != Kind::BinOp) throw std::logic_error("Expr::lhs on leaf");
    return *node_->lhs;
}

const Expr& Expr::rhs() const {
    if (kind() != Kind::BinOp) throw std::logic_error("Expr::rhs on leaf");
    return *node_->rhs;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Expr::Kind::Const: return a.value() == b.value();
    case Expr::Kind::Var: return a.name() == b.name();
    case Expr::Kind::BinOp: return a.op() == b.op() && a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
    return false;
}

bool is_operator(char ch) noexcept { return ch == '+' || ch == '-' || ch == '*' || ch == '/'; }

SyntaxError::SyntaxError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Expr parse() {
        Expr e = expr();
        skip_ws();
        if (pos_ != src_.size()) throw SyntaxError(std::string("unexpected '") + src_[pos_] + "'", pos_);
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    Expr expr() {
        Expr lhs = term();
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            ++pos_;
            lhs = Expr::binary(c, std::move(lhs), term());
        }
        return lhs;
    }

    Expr term() {
        Expr lhs = factor();
        for (char c = peek(); c == '*' || c == '/'; c = peek()) {
            ++pos_;
            lhs = Expr::binary(c, std::move(lhs), factor());
        }
        return lhs;
    }

    Expr factor() {
        const char c = peek();
        if (c >= '0' && c <= '9') {
            ++pos_;
            return Expr::constant(c - '0');
        }
        if (c >= 'a' && c <= 'e') {
            ++pos_;
            return Expr::variable(c);
        }
        if (c == '(') {
            ++pos_;
            Expr inner = expr();
            if (peek() != ')') throw SyntaxError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (c == '\0') throw SyntaxError("unexpected end of input", pos_);
        throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

int precedence(char op) noexcept { return (op == '*' || op == '/') ? 2 : 1; }

int precedence_of(const Expr& e) noexcept { return e.kind() == Expr::Kind::BinOp ? precedence(e.op()) : 3; }

void print(const Expr& e, std::string& out) {
    switch (e.kind()) {
    case Expr::Kind::Const:
        out += std::to_string(e.value());
        return;
    case Expr::Kind::Var:
        out += e.name();
        return;
    case Expr::Kind::BinOp: break;
    }
    const int p = precedence(e.op());
    // Operators are left-associative, so a right operand of equal precedence
    // needs parentheses to keep its tree shape.
    const bool wrap_lhs = precedence_of(e.lhs()) < p;
    const bool wrap_rhs = precedence_of(e.rhs()) <= p;
    if (wrap_lhs) out += '(';
    print(e.lhs(), out);
    if (wrap_lhs) out += ')';
    out += e.op();
    if (wrap_rhs) out += '(';
    print(e.rhs(), out);
    if (wrap_rhs) out += ')';
}

void collect_vars(const Expr& e, std::set<char>& out) {
    switch (e.kind()) {
    case Expr::Kind::Const: return;
    case Expr::Kind::Var: out.insert(e.name()); return;
    case Expr::Kind::BinOp:
        collect_vars(e.lhs(), out);
        collect_vars(e.rhs(), out);
        return;
    }
}

} // namespace

Expr parse_infix(std::string_view source) { return Parser(source).parse(); }

std::string print_infix(const Expr& expr) {
    std::string out;
    print(expr, out);
    return out;
}

EvalResult apply_operator(char op, std::int64_t lhs, std::int64_t rhs) noexcept {
    const auto ul = static_cast<std::uint64_t>(lhs);
    const auto ur = static_cast<std::uint64_t>(rhs);
    switch (op) {
    case '+': return static_cast<std::int64_t>(ul + ur);
    case '-': return static_cast<std::int64_t>(ul - ur);
    case '*': return static_cast<std::int64_t>(ul * ur);
    case '/':
        if (rhs == 0) return EvalError::DivByZero;
        if (lhs == std::numeric_limits<std::int64_t>::min() && rhs == -1) return lhs;
        return lhs / rhs;
    }
    return EvalError::StackUnderflow;
}

EvalResult eval_ast(const Expr& expr, const Env& env) {
    switch (expr.kind()) {
    case Expr::Kind::Const: return expr.value();
    case Expr::Kind::Var: {
        const auto it = env.find(expr.name());
        if (it == env.end()) return EvalError::UnboundVariable;
        return it->second;
    }
    case Expr::Kind::BinOp: break;
    }
    const EvalResult lhs = eval_ast(expr.lhs(), env);
    if (std::holds_alternative<EvalError>(lhs)) return lhs;
    const EvalResult rhs = eval_ast(expr.rhs(), env);
    if (std::holds_alternative<EvalError>(rhs)) return rhs;
    return apply_operator(expr.op(), std::get<std::int64_t>(lhs), std::get<std::int64_t>(rhs));
}

std::set<char> variables_of(const Expr& expr) {
    std::set<char> out;
    collect_vars(expr, out);
    return out;
}

std::size_t depth(const Expr& expr) noexcept {
    if (expr.kind() != Expr::Kind::BinOp) return 1;
    return 1 + std::max(depth(expr.lhs()), depth(expr.rhs()));
}

} // namespace retro
