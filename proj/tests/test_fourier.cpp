#include "retro/fourier.hpp"
#include "retro/generators.hpp"

#include <doctest.h>

#include <cmath>

using namespace retro;

namespace {

ComplexSeq R(std::vector<double> xs) { return to_complex(xs); }

void check_real_parts(const ComplexSeq& got, std::vector<double> want, double tol) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
        CHECK_MESSAGE(std::fabs(got[i].real() - want[i]) <= tol, "i=" << i << " got " << got[i].real());
}

double max_diff(const ComplexSeq& a, const ComplexSeq& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

TrialReport fourier_trial(const char* variant, const char* input, const char* mutator = "identity") {
    SuiteConfig c;
    c.variant_id = variant;
    return fourier_suite()->run_trial_seeded(c, 0, 42, {input, mutator});
}

} // namespace

TEST_CASE("dft examples") {
    const auto X = dft(R({1, 0, 1, 0}));
    check_real_parts(X, {2, 0, 2, 0}, 1e-12);
    for (const auto& v : X) CHECK(std::fabs(v.imag()) <= 1e-12);
    for (auto variant : {DftVariant::Correct, DftVariant::CoefMinus1j}) {
        CHECK(dft(R({3.5}), variant) == R({3.5}));
        CHECK(idft(R({3.5}), variant) == R({3.5}));
    }
    // Direct evaluation of the exp(-j*pi*k*n/N) kernel: [2, 1, 0, 1].
    check_real_parts(dft(R({1, 0, 1, 0}), DftVariant::CoefMinus1j), {2, 1, 0, 1}, 1e-12);
}

TEST_CASE("idft examples") {
    check_real_parts(idft(R({2, 0, 2, 0})), {1, 0, 1, 0}, 1e-12);
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const auto x = to_complex(gen_real_sequence(rng));
        CHECK(max_diff(idft(dft(x)), x) <= 1e-12);
    }
}

TEST_CASE("defective inverse reproduces the published walk-through figures from a truncated spectrum") {
    // The published m1' values come out of the defective inverse applied to
    // the integer-truncated spectra [2,1,0,0] and [3,2,1,1].
    check_real_parts(idft(R({2, 1, 0, 0}), DftVariant::CoefMinus1j), {0.75, 0.6767766952966369, 0.5, 0.32322330470336313},
                     1e-12);
    check_real_parts(idft(R({3, 2, 1, 1}), DftVariant::CoefMinus1j), {1.75, 0.9267766952966369, 0.5, 0.5732233047033631},
                     1e-12);
}

TEST_CASE("defective round trip on [1,0,1,0] by direct summation") {
    const auto X = dft(R({1, 0, 1, 0}), DftVariant::CoefMinus1j);
    check_real_parts(idft(X, DftVariant::CoefMinus1j), {1, 0.5, 1, 0.5}, 1e-12);
    ComplexSeq shifted = X;
    for (auto& v : shifted) v += 1.0;
    check_real_parts(idft(shifted, DftVariant::CoefMinus1j), {2, 0.75, 1, 0.75}, 1e-12);
}

TEST_CASE("round trip identity for N <= 64 on 10,000 inputs") {
    Rng rng(17);
    double worst = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto x = to_complex(gen_real_sequence(rng, {1, 64, -1.0, 1.0}));
        const auto back = idft(dft(x));
        for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, std::fabs(back[k].real() - x[k].real()));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("impulse property of the inverse") {
    Rng rng(23);
    for (int i = 0; i < 2000; ++i) {
        const auto x = to_complex(gen_real_sequence(rng, {1, 64, -1.0, 1.0}));
        const double c = rng.uniform01();
        ComplexSeq X = dft(x);
        for (auto& v : X) v += c;
        const auto back = idft(X);
        for (std::size_t k = 0; k < x.size(); ++k)
            REQUIRE(std::fabs(back[k].real() - (x[k].real() + (k == 0 ? c : 0.0))) <= 1e-10);
    }
    check_real_parts([] {
        ComplexSeq X = dft(R({1, 0, 1, 0}));
        for (auto& v : X) v += 1.0;
        return idft(X);
    }(), {2, 0, 1, 0}, 1e-12);
}

TEST_CASE("fft agrees with dft for every power of two up to 64") {
    Rng rng(5);
    for (std::size_t n = 1; n <= 64; n *= 2) {
        for (int rep = 0; rep < 20; ++rep) {
            ComplexSeq x(n);
            for (auto& v : x) v = Complex(rng.uniform_real(-1, 1), rng.uniform_real(-1, 1));
            CHECK(max_diff(fft(x), dft(x)) <= 1e-9);
        }
    }
    check_real_parts(fft(R({1, 0, 1, 0})), {2, 0, 2, 0}, 1e-12);
    CHECK(fft(R({5})) == R({5}));
    CHECK_THROWS_AS(fft(R({1, 2, 3})), ConfigError);
}

TEST_CASE("zero padding") {
    CHECK(zero_pad_pow2(R({1, 2, 3})).size() == 4);
    CHECK(zero_pad_pow2(R({1, 2, 3, 4})).size() == 4);
    CHECK(zero_pad_pow2(R({1})).size() == 1);
    CHECK(is_power_of_two(64));
    CHECK_FALSE(is_power_of_two(0));
    CHECK_FALSE(is_power_of_two(12));
}

TEST_CASE("rendering and parsing") {
    CHECK(render_complex_seq(R({1, 0.5})) == "[1, 0.5]");
    CHECK(render_complex_seq(ComplexSeq{Complex(1, -2), Complex(0, 0.5)}) == "[1-2j, 0+0.5j]");
    CHECK(parse_real_seq("[1, 0, 1, 0]") == R({1, 0, 1, 0}));
    CHECK_THROWS(parse_real_seq("[]"));
}

TEST_CASE("metamorphic baseline misses the seeded bug") {
    const std::vector<double> x{1, 0, 1, 0};
    CHECK(is_pass(metamorphic_baseline(x, 1.0, DftVariant::CoefMinus1j)));
    CHECK(is_pass(metamorphic_baseline(x, 0.0, DftVariant::CoefMinus1j)));
    CHECK(is_pass(metamorphic_baseline(x, 0.0, DftVariant::Correct)));
    Rng rng(9);
    for (int i = 0; i < 1000; ++i) {
        const auto xs = gen_real_sequence(rng);
        const double c = rng.uniform01();
        REQUIRE(is_pass(metamorphic_baseline(xs, c, DftVariant::Correct)));
        REQUIRE(is_pass(metamorphic_baseline(xs, c, DftVariant::CoefMinus1j)));
    }
}

TEST_CASE("differential baseline") {
    const std::vector<double> x{1, 0, 1, 0};
    CHECK(is_violation(differential_baseline(x, DftVariant::CoefMinus1j)));
    CHECK(is_pass(differential_baseline(x, DftVariant::Correct)));
    CHECK(is_pass(differential_baseline(std::vector<double>{0.25}, DftVariant::CoefMinus1j)));
}

TEST_CASE("manual fixture") {
    CHECK(is_pass(manual_fixture_check(DftVariant::Correct)));
    CHECK(is_violation(manual_fixture_check(DftVariant::CoefMinus1j)));
}

TEST_CASE("fourier suite examples") {
    const auto suite = fourier_suite();
    CHECK(suite->mode() == Mode::Integrated);
    CHECK(suite->mutator_names() == std::vector<std::string>{"identity", "add_constant"});

    const auto bad = fourier_trial("coef_minus_1j", "[1, 0, 1, 0]");
    CHECK(is_violation(bad.verdict));
    SuiteConfig buggy;
    buggy.variant_id = "coef_minus_1j";
    const auto typed = suite->execute(buggy, 0, 42, R({1, 0, 1, 0}), "identity");
    check_real_parts(*typed.m1_prime, {1, 0.5, 1, 0.5}, 1e-12);
    CHECK(bad.transcript.m2 == bad.transcript.m2_mutated);

    CHECK(is_pass(fourier_trial("correct", "[1, 0, 1, 0]").verdict));
    const auto shifted = fourier_trial("correct", "[1, 0, 1, 0]", "add_constant");
    CHECK(is_pass(shifted.verdict));
    const double c = std::get<double>(shifted.mutation.parameters.at("c"));
    CHECK((c >= 0.0 && c < 1.0));
}

TEST_CASE("correct variant passes under both mutators, strict profile included") {
    const auto suite = fourier_suite();
    SuiteConfig c;
    c.iterations = 2000;
    auto run = run_suite(*suite, c);
    CHECK(run.summary.pass == 2000);
    c.strict = true;
    run = run_suite(*suite, c);
    CHECK(run.summary.pass == 2000);
}

TEST_CASE("seeded bug is visible for every length above one") {
    const auto suite = fourier_suite();
    SuiteConfig c;
    c.variant_id = "coef_minus_1j";
    c.iterations = 1000;
    for (const auto& r : run_suite(*suite, c).reports) {
        const auto n = parse_real_seq(*r.transcript.m1).size();
        CHECK((n == 1 ? is_pass(r.verdict) : is_violation(r.verdict)));
    }
}
