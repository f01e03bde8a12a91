#pragma once

// Integer expression language used by the compiler/decompiler suite.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := digit | var | '(' expr ')'
//   digit  := '0'..'9'      var := 'a'..'e'
//
// Arithmetic is on 64-bit integers with wrap-around on overflow; division
// truncates toward zero.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace retro {

enum class EvalError { DivByZero, UnboundVariable, StackUnderflow };

std::string_view to_string(EvalError error) noexcept;

using EvalResult = std::variant<std::int64_t, EvalError>;
using Env = std::map<char, std::int64_t>;

/// Immutable expression tree with value semantics; copies share nodes.
class Expr {
public:
    enum class Kind { Const, Var, BinOp };

    static Expr constant(std::int64_t value);
    static Expr variable(char name);
    static Expr binary(char op, Expr lhs, Expr rhs);

    Kind kind() const noexcept;
    std::int64_t value() const;   // Const only
    char name() const;            // Var only
    char op() const;              // BinOp only
    const Expr& lhs() const;      // BinOp only
    const Expr& rhs() const;      // BinOp only

    /// Structural equality.
    friend bool operator==(const Expr& a, const Expr& b);

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

bool is_operator(char ch) noexcept;

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string& what, std::size_t position);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Whitespace between tokens is ignored. Throws SyntaxError.
Expr parse_infix(std::string_view source);

/// Minimal parentheses such that parse_infix(print_infix(e)) == e.
std::string print_infix(const Expr& expr);

EvalResult eval_ast(const Expr& expr, const Env& env);

std::set<char> variables_of(const Expr& expr);

std::size_t depth(const Expr& expr) noexcept;

/// Wrapping integer arithmetic shared by the evaluator and the VM.
EvalResult apply_operator(char op, std::int64_t lhs, std::int64_t rhs) noexcept;

} // namespace retro
