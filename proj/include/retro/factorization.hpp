#pragma once

// Integer factorization suite: Pollard's rho under test (forward), integer
// multiplication as the trusted backward program.

#include "retro/core.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace retro {

using FactorList = std::vector<std::uint64_t>;

enum class RhoVariant { Correct, GcdX };

RhoVariant parse_rho_variant(std::string_view id);

/// Euclid. Throws std::domain_error for gcd(0, 0).
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs. Returns false for n < 2.
bool is_prime(std::uint64_t n) noexcept;

/// Factorizes n >= 1 (n = 1 gives an empty list). Every rho evaluation is
/// charged to `budget`, which throws StepCapExceeded when exhausted.
///
/// The correct variant short-circuits primes via is_prime and restarts with
/// fresh (x, c) when the cycle collapses to d = n (up to 20 restarts). The
/// GcdX variant takes gcd(|x - y|, x) and has neither safeguard.
FactorList pollards_rho(std::uint64_t n, RhoVariant variant, Rng& rng, StepBudget& budget);

/// Product of all factors (1 for an empty list). Throws std::overflow_error
/// if the product does not fit in 64 bits.
std::uint64_t multiply_product(const FactorList& factors);

std::string render_factors(const FactorList& factors);

using FactorizationSuite = SuiteDefinition<std::uint64_t, FactorList>;

/// Forward mode over [2, 10^12]. Relation: product == N; with
/// SuiteConfig::strict every factor must also be prime.
std::shared_ptr<const FactorizationSuite> factorization_suite();

} // namespace retro
