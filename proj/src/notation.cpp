#include "retro/notation.hpp"

#include "retro/expr.hpp"
#include "retro/generators.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace retro {

namespace {

bool is_operand(char ch) noexcept { return std::isalnum(static_cast<unsigned char>(ch)) != 0; }

template <class Chars>
bool stack_valid(const Chars& chars) noexcept {
    std::size_t height = 0;
    for (char ch : chars) {
        if (is_operand(ch)) {
            ++height;
        } else if (is_operator(ch)) {
            if (height < 2) return false;
            --height;
        } else {
            return false;
        }
    }
    return height == 1;
}

std::string pop(std::vector<std::string>& stack) {
    std::string top = std::move(stack.back());
    stack.pop_back();
    return top;
}

} // namespace

NotationVariant parse_notation_variant(std::string_view id) {
    if (id == "correct") return NotationVariant::Correct;
    if (id == "operand_swap") return NotationVariant::OperandSwap;
    throw ConfigError("unknown notation variant '" + std::string(id) + "'");
}

bool validate_postfix(std::string_view s) noexcept { return stack_valid(s); }

bool validate_prefix(std::string_view s) noexcept {
    return stack_valid(std::string(s.rbegin(), s.rend()));
}

std::string postfix_to_prefix(std::string_view s, NotationVariant variant) {
    if (!validate_postfix(s)) throw std::invalid_argument("not a valid postfix expression: '" + std::string(s) + "'");
    std::vector<std::string> stack;
    stack.reserve(s.size());
    for (char ch : s) {
        if (is_operand(ch)) {
            stack.emplace_back(1, ch);
            continue;
        }
        std::string right = pop(stack);
        std::string left = pop(stack);
        if (variant == NotationVariant::OperandSwap) std::swap(left, right);
        std::string node(1, ch);
        node += left;
        node += right;
        stack.push_back(std::move(node));
    }
    return stack.front();
}

std::string prefix_to_postfix(std::string_view s) {
    if (!validate_prefix(s)) throw std::invalid_argument("not a valid prefix expression: '" + std::string(s) + "'");
    std::vector<std::string> stack;
    stack.reserve(s.size());
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        if (is_operand(*it)) {
            stack.emplace_back(1, *it);
            continue;
        }
        std::string first = pop(stack);
        std::string second = pop(stack);
        stack.push_back(first + second + *it);
    }
    return stack.front();
}

std::shared_ptr<const NotationSuite> notation_suite() {
    SuiteSpec<std::string, std::string> spec;
    spec.name = "notation";
    spec.mode = Mode::Integrated;
    spec.generator = [](Rng& rng) { return gen_postfix(rng); };
    for (NotationVariant v : {NotationVariant::Correct, NotationVariant::OperandSwap}) {
        spec.variants[v == NotationVariant::Correct ? "correct" : "operand_swap"] = {
            [v](const std::string& s, ExecContext&) { return postfix_to_prefix(s, v); },
            [](const std::string& s, ExecContext&) { return prefix_to_postfix(s); }};
    }
    spec.mutators = {identity_mutator<std::string>()};
    spec.relation = [](const std::string& s, const std::string& sp, const MutationDescriptor&,
                       RelationContext&) -> RelationResult {
        if (s == sp) return std::nullopt;
        return "round trip changed the expression";
    };
    spec.render_input = [](const std::string& s) { return s; };
    spec.render_output = [](const std::string& s) { return s; };
    spec.parse_input = [](std::string_view text) {
        std::string out;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
        return out;
    };
    return make_suite(std::move(spec));
}

} // namespace retro
