#include "retro/vm.hpp"

#include "retro/generators.hpp"
#include "retro/text.hpp"

#include <sstream>
#include <stdexcept>

namespace retro {

namespace {

OpCode opcode_for(char op) {
    switch (op) {
    case '+': return OpCode::Add;
    case '-': return OpCode::Sub;
    case '*': return OpCode::Mul;
    case '/': return OpCode::Div;
    }
    throw std::invalid_argument(std::string("no opcode for '") + op + "'");
}

char operator_for(OpCode op) {
    switch (op) {
    case OpCode::Add: return '+';
    case OpCode::Sub: return '-';
    case OpCode::Mul: return '*';
    case OpCode::Div: return '/';
    default: break;
    }
    throw std::invalid_argument("not an arithmetic opcode");
}

std::string_view mnemonic(OpCode op) {
    switch (op) {
    case OpCode::Push: return "PUSH";
    case OpCode::Load: return "LOAD";
    case OpCode::Add: return "ADD";
    case OpCode::Sub: return "SUB";
    case OpCode::Mul: return "MUL";
    case OpCode::Div: return "DIV";
    }
    return "?";
}

std::string format_instruction(const Instruction& ins) {
    std::string out(mnemonic(ins.op));
    if (ins.op == OpCode::Push) out += " " + std::to_string(ins.value);
    if (ins.op == OpCode::Load) out += std::string(" ") + ins.var;
    return out;
}

void emit(const Expr& e, Bytecode& out) {
    switch (e.kind()) {
    case Expr::Kind::Const: out.push_back(Instruction::push(e.value())); return;
    case Expr::Kind::Var: out.push_back(Instruction::load(e.name())); return;
    case Expr::Kind::BinOp:
        emit(e.lhs(), out);
        emit(e.rhs(), out);
        out.push_back(Instruction::arith(opcode_for(e.op())));
        return;
    }
}

std::string describe(const EvalResult& r) {
    if (const auto* v = std::get_if<std::int64_t>(&r)) return std::to_string(*v);
    return std::string(to_string(std::get<EvalError>(r)));
}

} // namespace

std::string format_bytecode(const Bytecode& code) {
    std::string out;
    for (const auto& ins : code) out += format_instruction(ins) + "\n";
    return out;
}

std::string render_bytecode_inline(const Bytecode& code) {
    std::string out;
    for (std::size_t i = 0; i < code.size(); ++i) {
        if (i) out += "; ";
        out += format_instruction(code[i]);
    }
    return out;
}

Bytecode parse_bytecode(std::string_view text) {
    Bytecode code;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream words(line);
        std::string op, arg, extra;
        if (!(words >> op)) continue;
        const bool has_arg = static_cast<bool>(words >> arg);
        if (words >> extra) throw std::invalid_argument("line " + std::to_string(lineno) + ": trailing tokens");
        const auto bad = [&](const std::string& why) {
            return std::invalid_argument("line " + std::to_string(lineno) + ": " + why);
        };
        if (op == "PUSH") {
            if (!has_arg) throw bad("PUSH needs an integer operand");
            std::int64_t v = 0;
            try {
                std::size_t used = 0;
                v = std::stoll(arg, &used);
                if (used != arg.size()) throw bad("bad integer '" + arg + "'");
            } catch (const std::logic_error&) {
                throw bad("bad integer '" + arg + "'");
            }
            code.push_back(Instruction::push(v));
        } else if (op == "LOAD") {
            if (!has_arg || arg.size() != 1) throw bad("LOAD needs a single-letter variable");
            code.push_back(Instruction::load(arg[0]));
        } else {
            OpCode oc;
            if (op == "ADD") oc = OpCode::Add;
            else if (op == "SUB") oc = OpCode::Sub;
            else if (op == "MUL") oc = OpCode::Mul;
            else if (op == "DIV") oc = OpCode::Div;
            else throw bad("unknown mnemonic '" + op + "'");
            if (has_arg) throw bad(op + " takes no operand");
            code.push_back(Instruction::arith(oc));
        }
    }
    return code;
}

Bytecode compile(const Expr& ast) {
    Bytecode out;
    emit(ast, out);
    return out;
}

EvalResult run_vm(const Bytecode& code, const Env& env) {
    std::vector<std::int64_t> stack;
    for (const auto& ins : code) {
        switch (ins.op) {
        case OpCode::Push: stack.push_back(ins.value); break;
        case OpCode::Load: {
            const auto it = env.find(ins.var);
            if (it == env.end()) return EvalError::UnboundVariable;
            stack.push_back(it->second);
            break;
        }
        default: {
            if (stack.size() < 2) return EvalError::StackUnderflow;
            const std::int64_t rhs = stack.back();
            stack.pop_back();
            const std::int64_t lhs = stack.back();
            stack.pop_back();
            const EvalResult r = apply_operator(operator_for(ins.op), lhs, rhs);
            if (std::holds_alternative<EvalError>(r)) return r;
            stack.push_back(std::get<std::int64_t>(r));
        }
        }
    }
    if (stack.size() != 1) return EvalError::StackUnderflow;
    return stack.back();
}

DecompilerVariant parse_decompiler_variant(std::string_view id) {
    if (id == "correct") return DecompilerVariant::Correct;
    if (id == "swap_sub") return DecompilerVariant::SwapSub;
    throw ConfigError("unknown decompiler variant '" + std::string(id) + "'");
}

Expr decompile_ast(const Bytecode& code, DecompilerVariant variant) {
    std::vector<Expr> stack;
    for (const auto& ins : code) {
        switch (ins.op) {
        case OpCode::Push: stack.push_back(Expr::constant(ins.value)); break;
        case OpCode::Load: stack.push_back(Expr::variable(ins.var)); break;
        default: {
            if (stack.size() < 2) throw StackUnderflow();
            Expr rhs = stack.back();
            stack.pop_back();
            Expr lhs = stack.back();
            stack.pop_back();
            const bool swap = variant == DecompilerVariant::SwapSub && (ins.op == OpCode::Sub || ins.op == OpCode::Div);
            if (swap) std::swap(lhs, rhs);
            stack.push_back(Expr::binary(operator_for(ins.op), std::move(lhs), std::move(rhs)));
        }
        }
    }
    if (stack.size() != 1) throw StackUnderflow();
    return stack.back();
}

std::string decompile(const Bytecode& code, DecompilerVariant variant) {
    return print_infix(decompile_ast(code, variant));
}

std::shared_ptr<const VmSuite> vm_suite() {
    SuiteSpec<std::string, Bytecode> spec;
    spec.name = "vm";
    spec.mode = Mode::Backward;
    spec.generator = [](Rng& rng) { return print_infix(gen_expr_ast(rng, kVmMaxDepth)); };
    for (DecompilerVariant v : {DecompilerVariant::Correct, DecompilerVariant::SwapSub}) {
        spec.variants[v == DecompilerVariant::Correct ? "correct" : "swap_sub"] = {
            [](const std::string& src, ExecContext&) { return compile(parse_infix(src)); },
            [v](const Bytecode& code, ExecContext&) { return decompile(code, v); }};
    }
    spec.mutators = {identity_mutator<Bytecode>()};
    spec.relation = [](const std::string& src, const std::string& decompiled, const MutationDescriptor&,
                       RelationContext& ctx) -> RelationResult {
        const Expr original = parse_infix(src);
        std::optional<Expr> recovered;
        try {
            recovered = parse_infix(decompiled);
        } catch (const SyntaxError& e) {
            return std::string("decompiled source does not parse: ") + e.what();
        }
        const auto vars = variables_of(original);
        for (int i = 0; i < kVmEnvSamples; ++i) {
            const Env env = gen_env(ctx.rng, vars);
            const EvalResult expected = eval_ast(original, env);
            const EvalResult actual = eval_ast(*recovered, env);
            if (expected != actual)
                return "outputs differ on env #" + std::to_string(i) + ": " + describe(expected) + " vs " +
                       describe(actual);
        }
        return std::nullopt;
    };
    spec.render_input = [](const std::string& s) { return s; };
    spec.render_output = render_bytecode_inline;
    spec.parse_input = [](std::string_view text) { return print_infix(parse_infix(text)); };
    return make_suite(std::move(spec));
}

} // namespace retro
