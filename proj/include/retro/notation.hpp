#pragma once

// Prefix/postfix notation suite. Tokens are single characters: alphanumeric
// operands and the binary operators + - * /, with no separators.

#include "retro/core.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace retro {

enum class NotationVariant { Correct, OperandSwap };

NotationVariant parse_notation_variant(std::string_view id);

bool validate_postfix(std::string_view s) noexcept;
bool validate_prefix(std::string_view s) noexcept;

/// Stack conversion. OperandSwap pops the two operands in the wrong order,
/// which emits the prefix form of the mirrored tree. Throws
/// std::invalid_argument if `s` is not valid postfix.
std::string postfix_to_prefix(std::string_view s, NotationVariant variant = NotationVariant::Correct);

/// Reverse-scan stack conversion. Throws std::invalid_argument if `s` is not
/// valid prefix.
std::string prefix_to_postfix(std::string_view s);

using NotationSuite = SuiteDefinition<std::string, std::string>;

/// Integrated mode; relation is exact string equality S == Q(P(S)).
std::shared_ptr<const NotationSuite> notation_suite();

} // namespace retro
