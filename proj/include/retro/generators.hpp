#pragma once

// Seeded input producers. Every generator is a pure function of the Rng state
// and its parameters; precondition violations throw ConfigError.

#include "retro/expr.hpp"
#include "retro/rng.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace retro {

struct RealSequenceParams {
    std::size_t min_len = 1;
    std::size_t max_len = 16;
    double lo = -1.0;
    double hi = 1.0;
};

/// Length uniform in [min_len, max_len], elements uniform in [lo, hi).
std::vector<double> gen_real_sequence(Rng& rng, const RealSequenceParams& params = {});

inline constexpr std::uint64_t kDefaultIntegerHi = 1'000'000'000'000ULL;

/// Uniform in [lo, hi]; requires 2 <= lo <= hi.
std::uint64_t gen_integer(Rng& rng, std::uint64_t lo = 2, std::uint64_t hi = kDefaultIntegerHi);

/// Random binary expression tree with 0..max_internal_nodes operators over
/// single-character operands [a-z0-9], rendered as unseparated postfix.
std::string gen_postfix(Rng& rng, std::size_t max_internal_nodes = 8);

/// Random expression over constants 0..9, variables a..e and + - * /, with
/// depth at most max_depth.
Expr gen_expr_ast(Rng& rng, std::size_t max_depth = 4);

/// Binds each of `vars` to a value in [-9, 9].
Env gen_env(Rng& rng, const std::set<char>& vars);

} // namespace retro
