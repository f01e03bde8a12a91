#include "retro/generators.hpp"

#include "retro/core.hpp"

#include <cmath>
#include <string_view>

namespace retro {

namespace {

constexpr std::string_view kOperators = "+-*/";
constexpr std::string_view kOperands = "abcdefghijklmnopqrstuvwxyz0123456789";
constexpr std::string_view kVariables = "abcde";

void emit_postfix(Rng& rng, std::size_t internal, std::string& out) {
    if (internal == 0) {
        out += kOperands[rng.below(kOperands.size())];
        return;
    }
    const auto left = static_cast<std::size_t>(rng.below(internal));
    const char op = kOperators[rng.below(kOperators.size())];
    emit_postfix(rng, left, out);
    emit_postfix(rng, internal - 1 - left, out);
    out += op;
}

Expr random_leaf(Rng& rng) {
    if (rng.below(2) == 0) return Expr::constant(static_cast<std::int64_t>(rng.below(10)));
    return Expr::variable(kVariables[rng.below(kVariables.size())]);
}

Expr random_tree(Rng& rng, std::size_t depth_left) {
    // Leaves get 30% of the mass above the bottom level.
    if (depth_left <= 1 || rng.below(10) < 3) return random_leaf(rng);
    const char op = kOperators[rng.below(kOperators.size())];
    Expr lhs = random_tree(rng, depth_left - 1);
    Expr rhs = random_tree(rng, depth_left - 1);
    return Expr::binary(op, std::move(lhs), std::move(rhs));
}

} // namespace

std::vector<double> gen_real_sequence(Rng& rng, const RealSequenceParams& params) {
    if (params.min_len < 1 || params.min_len > params.max_len)
        throw ConfigError("gen_real_sequence: need 1 <= min_len <= max_len");
    if (!(params.lo < params.hi) || !std::isfinite(params.lo) || !std::isfinite(params.hi))
        throw ConfigError("gen_real_sequence: need finite lo < hi");
    const auto len = params.min_len + rng.below(params.max_len - params.min_len + 1);
    std::vector<double> out(len);
    for (auto& v : out) v = rng.uniform_real(params.lo, params.hi);
    return out;
}

std::uint64_t gen_integer(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
    if (lo < 2 || lo > hi) throw ConfigError("gen_integer: need 2 <= lo <= hi");
    return lo + rng.below(hi - lo + 1);
}

std::string gen_postfix(Rng& rng, std::size_t max_internal_nodes) {
    if (max_internal_nodes < 1) throw ConfigError("gen_postfix: max_internal_nodes must be at least 1");
    const auto internal = static_cast<std::size_t>(rng.below(max_internal_nodes + 1));
    std::string out;
    out.reserve(2 * internal + 1);
    emit_postfix(rng, internal, out);
    return out;
}

Expr gen_expr_ast(Rng& rng, std::size_t max_depth) {
    if (max_depth < 1) throw ConfigError("gen_expr_ast: max_depth must be at least 1");
    return random_tree(rng, max_depth);
}

Env gen_env(Rng& rng, const std::set<char>& vars) {
    Env env;
    for (char v : vars) env[v] = rng.uniform_int(-9, 9);
    return env;
}

} // namespace retro
