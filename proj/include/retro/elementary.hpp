#pragma once

// Small demonstration suites, one per testing mode.
//
//   sine_forward   sin under test,        arcsin trusted, arcsin(sin x) = x
//   sine_backward  arcsin trusted,        sin under test, sin(arcsin t + 2k*pi) = t
//   reciprocal     1/x under test as both programs,       1/(1/x) = x

#include "retro/core.hpp"

#include <memory>
#include <string_view>

namespace retro {

enum class SineVariant { Correct, Taylor3 };
enum class ReciprocalVariant { Correct, OffByEps };

double sine(double x, SineVariant variant) noexcept;
double reciprocal(double x, ReciprocalVariant variant) noexcept;

/// Absolute tolerance used by sine_backward; the effective bound is
/// max(kTrigEps, config.eps) because the 2k*pi shift amplifies argument
/// reduction error.
inline constexpr double kTrigEps = 1e-9;

using RealSuite = SuiteDefinition<double, double>;

std::shared_ptr<const RealSuite> sine_forward_suite();
std::shared_ptr<const RealSuite> sine_backward_suite();
std::shared_ptr<const RealSuite> reciprocal_integrated_suite();

} // namespace retro
