#include "retro/elementary.hpp"

#include "retro/text.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace retro {

double sine(double x, SineVariant variant) noexcept {
    if (variant == SineVariant::Taylor3) {
        const double x2 = x * x;
        return x - x * x2 / 6.0 + x * x2 * x2 / 120.0;
    }
    return std::sin(x);
}

double reciprocal(double x, ReciprocalVariant variant) noexcept {
    const double r = 1.0 / x;
    return variant == ReciprocalVariant::OffByEps ? r + 1e-6 : r;
}

namespace {

constexpr double kPi = std::numbers::pi;

RelationResult within(double expected, double actual, double tolerance) {
    const double diff = std::fabs(expected - actual);
    if (diff <= tolerance) return std::nullopt;
    return "|x - x'| = " + format_real(diff) + " exceeds " + format_real(tolerance);
}

SuiteSpec<double, double> real_spec(std::string name, Mode mode) {
    SuiteSpec<double, double> spec;
    spec.name = std::move(name);
    spec.mode = mode;
    spec.render_input = [](double v) { return format_real(v); };
    spec.render_output = [](double v) { return format_real(v); };
    spec.parse_input = [](std::string_view text) { return parse_real(text); };
    return spec;
}

Programs<double, double> sine_then_arcsin(SineVariant v) {
    return {[v](const double& x, ExecContext&) { return sine(x, v); },
            [](const double& y, ExecContext&) { return std::asin(y); }};
}

Programs<double, double> arcsin_then_sine(SineVariant v) {
    return {[](const double& t, ExecContext&) { return std::asin(t); },
            [v](const double& a, ExecContext&) { return sine(a, v); }};
}

Programs<double, double> reciprocal_twice(ReciprocalVariant v) {
    auto f = [v](const double& x, ExecContext&) { return reciprocal(x, v); };
    return {f, f};
}

} // namespace

std::shared_ptr<const RealSuite> sine_forward_suite() {
    auto spec = real_spec("sine_forward", Mode::Forward);
    spec.generator = [](Rng& rng) { return rng.uniform_real(-kPi / 2, kPi / 2); };
    spec.variants = {{"correct", sine_then_arcsin(SineVariant::Correct)},
                     {"taylor3", sine_then_arcsin(SineVariant::Taylor3)}};
    spec.mutators = {identity_mutator<double>()};
    spec.relation = [](const double& x, const double& xp, const MutationDescriptor&, RelationContext& ctx) {
        return within(x, xp, ctx.config.eps * std::max(1.0, std::fabs(x)));
    };
    return make_suite(std::move(spec));
}

std::shared_ptr<const RealSuite> sine_backward_suite() {
    auto spec = real_spec("sine_backward", Mode::Backward);
    spec.generator = [](Rng& rng) { return rng.uniform_real(-1.0, 1.0); };
    spec.variants = {{"correct", arcsin_then_sine(SineVariant::Correct)},
                     {"taylor3", arcsin_then_sine(SineVariant::Taylor3)}};
    spec.mutators = {Mutator<double>{"add_2kpi", 1.0, [](const double& arc, Rng& rng, MutationDescriptor& d) {
        const std::int64_t k = rng.uniform_int(-3, 3);
        d.parameters["k"] = k;
        return arc + 2.0 * static_cast<double>(k) * kPi;
    }}};
    spec.relation = [](const double& t, const double& tp, const MutationDescriptor&, RelationContext& ctx) {
        return within(t, tp, std::max(kTrigEps, ctx.config.eps));
    };
    return make_suite(std::move(spec));
}

std::shared_ptr<const RealSuite> reciprocal_integrated_suite() {
    auto spec = real_spec("reciprocal", Mode::Integrated);
    spec.generator = [](Rng& rng) {
        for (;;) {
            const double x = rng.uniform_real(-10.0, 10.0);
            if (std::fabs(x) >= 1e-3) return x;
        }
    };
    spec.variants = {{"correct", reciprocal_twice(ReciprocalVariant::Correct)},
                     {"off_by_eps", reciprocal_twice(ReciprocalVariant::OffByEps)}};
    spec.mutators = {identity_mutator<double>()};
    spec.relation = [](const double& x, const double& xp, const MutationDescriptor&, RelationContext& ctx) {
        return within(x, xp, ctx.config.eps * std::max(1.0, x * x));
    };
    return make_suite(std::move(spec));
}

} // namespace retro
