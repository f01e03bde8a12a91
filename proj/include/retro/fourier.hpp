#pragma once

// Discrete Fourier transform suite.
//
// The "coef_minus_1j" variant uses -j*pi instead of -j*2*pi in the exponent
// of both the forward transform and (with the sign flipped) the inverse, i.e.
// one routine serving both directions with the same wrong coefficient. Two
// baselines are provided for comparison: a metamorphic relation (adding c to
// x_0 adds c to every X_k) and a differential check against a radix-2 FFT.

#include "retro/core.hpp"

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace retro {

using Complex = std::complex<double>;
using ComplexSeq = std::vector<Complex>;

enum class DftVariant { Correct, CoefMinus1j };

/// Throws ConfigError for unknown ids.
DftVariant parse_dft_variant(std::string_view id);

/// Direct O(N^2) summation. Throws std::invalid_argument on empty input.
ComplexSeq dft(std::span<const Complex> x, DftVariant variant = DftVariant::Correct);
ComplexSeq idft(std::span<const Complex> spectrum, DftVariant variant = DftVariant::Correct);

bool is_power_of_two(std::size_t n) noexcept;

/// Iterative radix-2 Cooley-Tukey. Throws ConfigError unless N is a power of two.
ComplexSeq fft(std::span<const Complex> x);

ComplexSeq to_complex(std::span<const double> reals);
ComplexSeq zero_pad_pow2(std::span<const Complex> x);

std::string render_complex_seq(std::span<const Complex> x);
/// Accepts a list of reals, e.g. "[1,0,1,0]".
ComplexSeq parse_real_seq(std::string_view text);

inline constexpr double kDefaultEps = 1e-10;

/// Metamorphic baseline: dft(x with x_0 + c) - dft(x) == c on every real part.
Verdict metamorphic_baseline(std::span<const double> x, double c, DftVariant variant, double eps = kDefaultEps);

/// Differential baseline: dft(x) against fft(x) on real parts, after zero
/// padding to a power of two.
Verdict differential_baseline(std::span<const double> x, DftVariant variant, double eps = kDefaultEps);

/// Hand-written fixture: real parts of dft([1,0,1,0]) must be [2,0,2,0].
Verdict manual_fixture_check(DftVariant variant);

/// Input distribution used by the suite (lengths 1..16, values in [-1, 1)).
ComplexSeq generate_fourier_input(Rng& rng);

using FourierSuite = SuiteDefinition<ComplexSeq, ComplexSeq>;

/// Integrated mode. Mutators: "identity" and "add_constant" (c in [0, 1)
/// added to every spectral component, expected to reappear on x_0 only).
/// Relations compare real parts; SuiteConfig::strict adds imaginary parts.
std::shared_ptr<const FourierSuite> fourier_suite();

} // namespace retro
