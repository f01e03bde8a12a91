#include "retro/factorization.hpp"

#include "retro/generators.hpp"
#include "retro/text.hpp"

#include <stdexcept>

namespace retro {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::uint64_t abs_diff(std::uint64_t a, std::uint64_t b) noexcept { return a > b ? a - b : b - a; }

constexpr int kMaxRestarts = 20;

struct Rho {
    RhoVariant variant;
    Rng& rng;
    StepBudget& budget;

    std::uint64_t step(std::uint64_t x, std::uint64_t c, std::uint64_t n) {
        budget.charge();
        return static_cast<std::uint64_t>((static_cast<u128>(x) * x + c) % n);
    }

    std::uint64_t divisor(std::uint64_t x, std::uint64_t y, std::uint64_t n) const {
        if (variant == RhoVariant::Correct) return gcd(abs_diff(x, y), n);
        // Defective form. gcd(0, 0) is taken as 0 here so the loop keeps going
        // like the unguarded Euclid loop would.
        const std::uint64_t diff = abs_diff(x, y);
        return (diff == 0 && x == 0) ? 0 : gcd(diff, x);
    }

    /// One cycle-finding attempt; returns a d > 1.
    std::uint64_t attempt(std::uint64_t n) {
        std::uint64_t x = 1 + rng.below(n - 1);
        std::uint64_t y = x;
        const std::uint64_t c = 1 + rng.below(n - 1);
        std::uint64_t d = 1;
        // (x, y) evolves deterministically, so a repeated pair with d still
        // <= 1 means the loop can never exit. Snapshots at powers of two find
        // the repeat (Brent).
        std::uint64_t saved_x = x, saved_y = y;
        std::uint64_t iter = 0, next_save = 1;
        while (d <= 1) {
            x = step(x, c, n);
            y = step(step(y, c, n), c, n);
            d = divisor(x, y, n);
            if (d > 1) break;
            if (x == saved_x && y == saved_y) budget.exhaust();
            if (++iter == next_save) {
                saved_x = x;
                saved_y = y;
                next_save *= 2;
            }
        }
        return d;
    }

    void factor(std::uint64_t n, FactorList& out) {
        while (n != 1 && n % 2 == 0) {
            out.push_back(2);
            n /= 2;
        }
        if (n == 1) return;
        if (variant == RhoVariant::Correct && is_prime(n)) {
            out.push_back(n);
            return;
        }
        std::uint64_t d = attempt(n);
        if (variant == RhoVariant::Correct)
            for (int r = 0; r < kMaxRestarts && d == n; ++r) d = attempt(n);
        if (d == n) {
            out.push_back(n);
            return;
        }
        factor(d, out);
        factor(n / d, out);
    }
};

} // namespace

RhoVariant parse_rho_variant(std::string_view id) {
    if (id == "correct") return RhoVariant::Correct;
    if (id == "gcd_x") return RhoVariant::GcdX;
    throw ConfigError("unknown factorization variant '" + std::string(id) + "'");
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    if (a == 0 && b == 0) throw std::domain_error("gcd(0, 0) is undefined");
    while (b) {
        const std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    constexpr std::uint64_t witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : witnesses) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (std::uint64_t a : witnesses) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

FactorList pollards_rho(std::uint64_t n, RhoVariant variant, Rng& rng, StepBudget& budget) {
    if (n == 0) throw std::domain_error("pollards_rho needs n >= 1");
    FactorList out;
    Rho{variant, rng, budget}.factor(n, out);
    return out;
}

std::uint64_t multiply_product(const FactorList& factors) {
    std::uint64_t result = 1;
    for (std::uint64_t f : factors) {
        if (__builtin_mul_overflow(result, f, &result))
            throw std::overflow_error("factor product exceeds 64 bits");
    }
    return result;
}

std::string render_factors(const FactorList& factors) {
    std::string out = "[";
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(factors[i]);
    }
    return out + "]";
}

std::shared_ptr<const FactorizationSuite> factorization_suite() {
    SuiteSpec<std::uint64_t, FactorList> spec;
    spec.name = "factorization";
    spec.mode = Mode::Forward;
    spec.generator = [](Rng& rng) { return gen_integer(rng); };
    for (RhoVariant v : {RhoVariant::Correct, RhoVariant::GcdX}) {
        spec.variants[v == RhoVariant::Correct ? "correct" : "gcd_x"] = {
            [v](const std::uint64_t& n, ExecContext& ctx) { return pollards_rho(n, v, ctx.rng, ctx.budget); },
            [](const FactorList& f, ExecContext&) { return multiply_product(f); }};
    }
    spec.mutators = {identity_mutator<FactorList>()};
    spec.relation = [](const std::uint64_t& n, const std::uint64_t& product, const MutationDescriptor&,
                       RelationContext&) -> RelationResult {
        if (n != product) return "product " + std::to_string(product) + " != " + std::to_string(n);
        return std::nullopt;
    };
    spec.strict_check = [](const std::uint64_t&, const FactorList& factors, RelationContext&) -> RelationResult {
        for (std::uint64_t f : factors)
            if (!is_prime(f)) return "factor " + std::to_string(f) + " is not prime";
        return std::nullopt;
    };
    spec.render_input = [](const std::uint64_t& n) { return std::to_string(n); };
    spec.render_output = render_factors;
    spec.parse_input = [](std::string_view text) {
        const std::uint64_t n = parse_u64(text);
        if (n < 1) throw std::invalid_argument("N must be at least 1");
        return n;
    };
    return make_suite(std::move(spec));
}

} // namespace retro
