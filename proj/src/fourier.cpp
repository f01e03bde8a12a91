#include "retro/fourier.hpp"

#include "retro/generators.hpp"
#include "retro/text.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace retro {

namespace {

constexpr double kPi = std::numbers::pi;

/// sign = -1 for the forward transform, +1 for the inverse.
ComplexSeq transform(std::span<const Complex> in, DftVariant variant, double sign) {
    const std::size_t n = in.size();
    if (n == 0) throw std::invalid_argument("transform of an empty sequence");
    // exp(sign * j * coef * pi * k * m / N) has period 2N / coef in k*m, so
    // reducing the integer product first is exact and keeps angles small.
    const std::size_t coef = variant == DftVariant::Correct ? 2 : 1;
    const std::size_t period = 2 * n / coef;
    ComplexSeq out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc{0.0, 0.0};
        for (std::size_t m = 0; m < n; ++m) {
            const auto phase = static_cast<double>((k * m) % period);
            const double angle = sign * static_cast<double>(coef) * kPi * phase / static_cast<double>(n);
            acc += in[m] * Complex(std::cos(angle), std::sin(angle));
        }
        out[k] = acc;
    }
    return out;
}

} // namespace

DftVariant parse_dft_variant(std::string_view id) {
    if (id == "correct") return DftVariant::Correct;
    if (id == "coef_minus_1j") return DftVariant::CoefMinus1j;
    throw ConfigError("unknown DFT variant '" + std::string(id) + "'");
}

ComplexSeq dft(std::span<const Complex> x, DftVariant variant) { return transform(x, variant, -1.0); }

ComplexSeq idft(std::span<const Complex> spectrum, DftVariant variant) {
    ComplexSeq out = transform(spectrum, variant, +1.0);
    const auto n = static_cast<double>(out.size());
    for (auto& v : out) v /= n;
    return out;
}

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

ComplexSeq fft(std::span<const Complex> x) {
    const std::size_t n = x.size();
    if (!is_power_of_two(n)) throw ConfigError("fft needs a power-of-two length, got " + std::to_string(n));
    ComplexSeq a(x.begin(), x.end());

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const double angle = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(len);
                const Complex w(std::cos(angle), std::sin(angle));
                const Complex u = a[start + k];
                const Complex v = a[start + k + half] * w;
                a[start + k] = u + v;
                a[start + k + half] = u - v;
            }
        }
    }
    return a;
}

ComplexSeq to_complex(std::span<const double> reals) {
    ComplexSeq out;
    out.reserve(reals.size());
    for (double r : reals) out.emplace_back(r, 0.0);
    return out;
}

ComplexSeq zero_pad_pow2(std::span<const Complex> x) {
    std::size_t n = 1;
    while (n < x.size()) n <<= 1;
    ComplexSeq out(x.begin(), x.end());
    out.resize(n, Complex{0.0, 0.0});
    return out;
}

std::string render_complex_seq(std::span<const Complex> x) {
    std::string out = "[";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out += ", ";
        out += format_real(x[i].real());
        const double im = x[i].imag();
        if (im != 0.0 || std::isnan(im)) {
            out += std::signbit(im) ? "-" : "+";
            out += format_real(std::fabs(im));
            out += 'j';
        }
    }
    return out + "]";
}

ComplexSeq parse_real_seq(std::string_view text) {
    ComplexSeq out;
    for (const auto& item : split_list(text)) out.emplace_back(parse_real(item), 0.0);
    if (out.empty()) throw std::invalid_argument("empty sequence");
    return out;
}

Verdict metamorphic_baseline(std::span<const double> x, double c, DftVariant variant, double eps) {
    if (x.empty()) throw std::invalid_argument("metamorphic_baseline: empty input");
    const ComplexSeq source = to_complex(x);
    ComplexSeq follow = source;
    follow[0] += c;
    const ComplexSeq before = dft(source, variant);
    const ComplexSeq after = dft(follow, variant);
    for (std::size_t k = 0; k < before.size(); ++k) {
        const double diff = std::fabs(after[k].real() - before[k].real() - c);
        if (!(diff < eps))
            return Violation{"X'_" + std::to_string(k) + " - X_" + std::to_string(k) + " differs from c=" +
                             format_real(c) + " by " + format_real(diff)};
    }
    return Pass{};
}

Verdict differential_baseline(std::span<const double> x, DftVariant variant, double eps) {
    if (x.empty()) throw std::invalid_argument("differential_baseline: empty input");
    const ComplexSeq padded = zero_pad_pow2(to_complex(x));
    const ComplexSeq direct = dft(padded, variant);
    const ComplexSeq reference = fft(padded);
    for (std::size_t k = 0; k < direct.size(); ++k) {
        const double diff = std::fabs(direct[k].real() - reference[k].real());
        if (!(diff < eps))
            return Violation{"dft and fft disagree at k=" + std::to_string(k) + ": " +
                             format_real(direct[k].real()) + " vs " + format_real(reference[k].real())};
    }
    return Pass{};
}

Verdict manual_fixture_check(DftVariant variant) {
    const ComplexSeq input = to_complex(std::vector<double>{1, 0, 1, 0});
    const ComplexSeq out = dft(input, variant);
    const double expected[] = {2, 0, 2, 0};
    for (std::size_t k = 0; k < 4; ++k) {
        if (std::fabs(out[k].real() - expected[k]) > kDefaultEps)
            return Violation{"dft([1,0,1,0]) = " + render_complex_seq(out) + ", expected [2, 0, 2, 0]"};
    }
    return Pass{};
}

ComplexSeq generate_fourier_input(Rng& rng) { return to_complex(gen_real_sequence(rng)); }

std::shared_ptr<const FourierSuite> fourier_suite() {
    SuiteSpec<ComplexSeq, ComplexSeq> spec;
    spec.name = "fourier";
    spec.mode = Mode::Integrated;
    spec.generator = generate_fourier_input;
    for (DftVariant v : {DftVariant::Correct, DftVariant::CoefMinus1j}) {
        spec.variants[v == DftVariant::Correct ? "correct" : "coef_minus_1j"] = {
            [v](const ComplexSeq& x, ExecContext&) { return dft(x, v); },
            [v](const ComplexSeq& X, ExecContext&) { return idft(X, v); }};
    }
    spec.mutators = {
        identity_mutator<ComplexSeq>(),
        Mutator<ComplexSeq>{"add_constant", 1.0, [](const ComplexSeq& X, Rng& rng, MutationDescriptor& d) {
            const double c = rng.uniform01();
            d.parameters["c"] = c;
            ComplexSeq out = X;
            for (auto& v : out) v += c;
            return out;
        }}};
    spec.relation = [](const ComplexSeq& x, const ComplexSeq& xp, const MutationDescriptor& mutation,
                       RelationContext& ctx) -> RelationResult {
        if (x.size() != xp.size())
            return "length changed from " + std::to_string(x.size()) + " to " + std::to_string(xp.size());
        double c = 0.0;
        if (!mutation.is_identity()) c = std::get<double>(mutation.parameters.at("c"));
        const double eps = ctx.config.eps;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double expected = x[i].real() + (i == 0 ? c : 0.0);
            const double diff = std::fabs(xp[i].real() - expected);
            if (!(diff <= eps))
                return "real part " + std::to_string(i) + " off by " + format_real(diff);
            if (ctx.config.strict) {
                const double idiff = std::fabs(xp[i].imag() - x[i].imag());
                if (!(idiff <= eps)) return "imaginary part " + std::to_string(i) + " off by " + format_real(idiff);
            }
        }
        return std::nullopt;
    };
    spec.render_input = [](const ComplexSeq& x) { return render_complex_seq(x); };
    spec.render_output = [](const ComplexSeq& x) { return render_complex_seq(x); };
    spec.parse_input = parse_real_seq;
    return make_suite(std::move(spec));
}

} // namespace retro
