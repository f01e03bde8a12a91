#pragma once

// Compile/decompile suite over a small stack machine.
//
// Source text is compiled to bytecode by a trusted compiler (forward program)
// and turned back into source by the decompiler under test (backward
// program). Both source texts are then evaluated on sampled environments and
// must agree on every result, where agreeing on the same error kind counts.

#include "retro/core.hpp"
#include "retro/expr.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace retro {

enum class OpCode { Push, Load, Add, Sub, Mul, Div };

struct Instruction {
    OpCode op = OpCode::Push;
    std::int64_t value = 0;  // Push
    char var = 0;            // Load

    static Instruction push(std::int64_t v) { return {OpCode::Push, v, 0}; }
    static Instruction load(char name) { return {OpCode::Load, 0, name}; }
    static Instruction arith(OpCode op) { return {op, 0, 0}; }

    bool operator==(const Instruction&) const = default;
};

using Bytecode = std::vector<Instruction>;

/// One instruction per line: "PUSH 3", "LOAD a", "ADD", "SUB", "MUL", "DIV".
std::string format_bytecode(const Bytecode& code);
/// Inverse of format_bytecode; blank lines are ignored. Throws std::invalid_argument.
Bytecode parse_bytecode(std::string_view text);

/// Compact single-line rendering used in transcripts: "PUSH 1; PUSH 2; ADD".
std::string render_bytecode_inline(const Bytecode& code);

/// Post-order code generation.
Bytecode compile(const Expr& ast);

EvalResult run_vm(const Bytecode& code, const Env& env);

enum class DecompilerVariant { Correct, SwapSub };

DecompilerVariant parse_decompiler_variant(std::string_view id);

/// Thrown by decompile on malformed (unbalanced) bytecode.
class StackUnderflow : public std::runtime_error {
public:
    StackUnderflow() : std::runtime_error("stack underflow") {}
};

/// Symbolic stack execution back to an AST.
/// SwapSub reverses the operands of SUB and DIV.
Expr decompile_ast(const Bytecode& code, DecompilerVariant variant = DecompilerVariant::Correct);

/// print_infix(decompile_ast(code, variant)).
std::string decompile(const Bytecode& code, DecompilerVariant variant = DecompilerVariant::Correct);

inline constexpr int kVmEnvSamples = 8;
inline constexpr std::size_t kVmMaxDepth = 4;

using VmSuite = SuiteDefinition<std::string, Bytecode>;

/// Backward mode. Generator renders a random AST as source; an unparsable
/// decompiler output is a Violation.
std::shared_ptr<const VmSuite> vm_suite();

} // namespace retro
