#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace retro {

/// Shortest decimal form that round-trips to the same double.
std::string format_real(double value);

double parse_real(std::string_view text);
std::uint64_t parse_u64(std::string_view text);

/// Strips surrounding brackets and splits on commas and/or whitespace.
/// "[1, 0, 1,0]" -> {"1", "0", "1", "0"}.
std::vector<std::string> split_list(std::string_view text);

std::string_view trim(std::string_view text) noexcept;

} // namespace retro
