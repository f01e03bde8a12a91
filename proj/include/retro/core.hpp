#pragma once

// Generic round-trip pipeline.
//
// A trial draws an input m1, runs the forward program to get m2, applies a
// mutation to get m2', runs the backward program to get m1', and checks a
// relation between m1 and m1'. Suites are immutable after construction and
// trials are pure functions of (suite, config, trial seed), so run_suite may
// execute them concurrently.

#include "retro/rng.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace retro {

enum class Mode { Forward, Backward, Integrated };

enum class Stage { Generate, ForwardExec, Mutate, BackwardExec, RelationEval };

std::string_view to_string(Mode mode) noexcept;
std::string_view to_string(Stage stage) noexcept;

struct Pass {
    bool operator==(const Pass&) const = default;
};

struct Violation {
    std::string detail;
    bool operator==(const Violation&) const = default;
};

struct ProgramError {
    Stage stage;
    std::string message;
    bool operator==(const ProgramError&) const = default;
};

using Verdict = std::variant<Pass, Violation, ProgramError>;

/// "pass", "violation" or "program_error".
std::string_view verdict_kind(const Verdict& verdict) noexcept;

inline bool is_pass(const Verdict& v) noexcept { return std::holds_alternative<Pass>(v); }
inline bool is_violation(const Verdict& v) noexcept { return std::holds_alternative<Violation>(v); }
inline bool is_program_error(const Verdict& v) noexcept { return std::holds_alternative<ProgramError>(v); }

using ParamValue = std::variant<std::int64_t, double, std::string>;

struct MutationDescriptor {
    std::string name = "identity";
    std::map<std::string, ParamValue> parameters;

    static MutationDescriptor identity() { return {}; }
    bool is_identity() const noexcept { return name == "identity" && parameters.empty(); }
    bool operator==(const MutationDescriptor&) const = default;
};

/// Raised for bad run parameters; always reported before any trial executes.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class StepCapExceeded : public std::runtime_error {
public:
    explicit StepCapExceeded(std::uint64_t cap);
};

/// Work bound for a single program execution.
class StepBudget {
public:
    explicit StepBudget(std::uint64_t cap) noexcept : cap_(cap) {}

    void charge(std::uint64_t steps = 1) {
        if (steps > cap_ - used_) {
            used_ = cap_;
            throw StepCapExceeded(cap_);
        }
        used_ += steps;
    }

    /// For loops proven not to terminate: same outcome as charging until the cap.
    [[noreturn]] void exhaust() {
        used_ = cap_;
        throw StepCapExceeded(cap_);
    }

    std::uint64_t used() const noexcept { return used_; }
    std::uint64_t cap() const noexcept { return cap_; }

private:
    std::uint64_t cap_;
    std::uint64_t used_ = 0;
};

struct SuiteConfig {
    std::uint64_t iterations = 1000;
    std::uint64_t master_seed = 42;
    double eps = 1e-10;
    std::uint64_t step_cap = 10'000'000;
    std::string variant_id = "correct";
    /// Stricter relation profile where a suite offers one (primality of
    /// factors, imaginary parts of spectra).
    bool strict = false;
};

/// Handed to forward and backward programs.
struct ExecContext {
    Rng& rng;
    StepBudget& budget;
    const SuiteConfig& config;
};

/// Handed to relations. The rng is a per-trial stream, so a relation that
/// samples (for instance evaluation environments) stays replayable.
struct RelationContext {
    const SuiteConfig& config;
    Rng& rng;
};

/// nullopt when the relation holds, otherwise a short reason.
using RelationResult = std::optional<std::string>;

/// Rendered transcript. A later field is only present if every earlier one is.
struct TranscriptText {
    std::optional<std::string> m1;
    std::optional<std::string> m2;
    std::optional<std::string> m2_mutated;
    std::optional<std::string> m1_prime;
    bool operator==(const TranscriptText&) const = default;
};

struct TrialReport {
    std::string suite;
    std::string variant;
    Mode mode = Mode::Integrated;
    std::uint64_t trial_index = 0;
    std::uint64_t trial_seed = 0;
    MutationDescriptor mutation;
    Verdict verdict;
    TranscriptText transcript;
    bool operator==(const TrialReport&) const = default;
};

struct SuiteSummary {
    std::uint64_t pass = 0;
    std::uint64_t violation = 0;
    std::uint64_t program_error = 0;
    std::optional<std::uint64_t> first_failure_index;
    std::optional<std::uint64_t> first_failure_seed;
    double wall_seconds = 0.0;

    std::uint64_t total() const noexcept { return pass + violation + program_error; }
};

/// Replay knobs: pin the input (in the suite's text form) or the mutator.
struct TrialOverrides {
    std::optional<std::string> input;
    std::optional<std::string> mutator;
};

/// Type-erased view of a suite, used by the registry, the runner and the CLI.
class Suite {
public:
    virtual ~Suite() = default;

    virtual const std::string& name() const noexcept = 0;
    virtual Mode mode() const noexcept = 0;
    virtual std::vector<std::string> variant_ids() const = 0;
    virtual std::vector<std::string> mutator_names() const = 0;
    virtual bool parallel_safe() const noexcept = 0;

    bool has_variant(std::string_view id) const;

    virtual TrialReport run_trial_seeded(const SuiteConfig& config,
                                         std::uint64_t trial_index,
                                         std::uint64_t trial_seed,
                                         const TrialOverrides& overrides = {}) const = 0;
};

/// Throws ConfigError for unknown variants and out-of-range parameters.
void validate_config(const Suite& suite, const SuiteConfig& config);

TrialReport run_trial(const Suite& suite, const SuiteConfig& config, std::uint64_t trial_index);

struct SuiteRun {
    SuiteSummary summary;
    std::vector<TrialReport> reports;
};

/// Runs every trial, in parallel when the suite allows it. Reports are
/// ordered by trial index.
SuiteRun run_suite(const Suite& suite, const SuiteConfig& config);

/// Single-threaded reference runner. Must produce the same reports as run_suite.
SuiteRun run_suite_serial(const Suite& suite, const SuiteConfig& config);

SuiteSummary summarize(const std::vector<TrialReport>& reports);

// ---------------------------------------------------------------------------
// Typed suites

template <class M1, class M2>
struct Programs {
    std::function<M2(const M1&, ExecContext&)> forward;
    std::function<M1(const M2&, ExecContext&)> backward;
};

template <class M2>
struct Mutator {
    std::string name;
    double weight = 1.0;
    /// Empty means identity. Otherwise returns the mutated datum and fills in
    /// the descriptor's parameters.
    std::function<M2(const M2&, Rng&, MutationDescriptor&)> apply;
};

template <class M2>
Mutator<M2> identity_mutator() {
    return Mutator<M2>{"identity", 1.0, {}};
}

template <class M1, class M2>
struct Transcript {
    std::uint64_t trial_index = 0;
    std::uint64_t trial_seed = 0;
    std::optional<M1> m1;
    std::optional<M2> m2;
    std::optional<M2> m2_mutated;
    std::optional<M1> m1_prime;
    MutationDescriptor mutation;
    Verdict verdict;
};

template <class M1, class M2>
struct SuiteSpec {
    std::string name;
    Mode mode = Mode::Integrated;
    std::function<M1(Rng&)> generator;
    std::map<std::string, Programs<M1, M2>> variants;
    std::vector<Mutator<M2>> mutators;
    std::function<RelationResult(const M1&, const M1&, const MutationDescriptor&, RelationContext&)> relation;
    /// Optional extra oracle on the forward output, applied only under
    /// SuiteConfig::strict (e.g. every returned factor is prime).
    std::function<RelationResult(const M1&, const M2&, RelationContext&)> strict_check;
    std::function<std::string(const M1&)> render_input;
    std::function<std::string(const M2&)> render_output;
    /// Optional; enables TrialOverrides::input.
    std::function<M1(std::string_view)> parse_input;
    bool parallel_safe = true;
};

namespace detail {
std::string describe_exception(std::exception_ptr ep);
std::string violation_detail(const std::string& reason, const std::string& m1, const std::string& m1_prime);
std::uint64_t relation_stream_seed(std::uint64_t trial_seed) noexcept;
std::size_t pick_weighted(Rng& rng, const std::vector<double>& weights);
} // namespace detail

template <class M1, class M2>
class SuiteDefinition final : public Suite {
public:
    explicit SuiteDefinition(SuiteSpec<M1, M2> spec) : spec_(std::move(spec)) {
        if (spec_.name.empty()) throw std::invalid_argument("suite needs a name");
        if (!spec_.variants.contains("correct"))
            throw std::invalid_argument("suite '" + spec_.name + "' has no 'correct' variant");
        if (spec_.mutators.empty())
            throw std::invalid_argument("suite '" + spec_.name + "' has no mutators");
        if (!spec_.generator || !spec_.relation || !spec_.render_input || !spec_.render_output)
            throw std::invalid_argument("suite '" + spec_.name + "' is missing a component");
        for (const auto& m : spec_.mutators) weights_.push_back(m.weight);
    }

    const std::string& name() const noexcept override { return spec_.name; }
    Mode mode() const noexcept override { return spec_.mode; }
    bool parallel_safe() const noexcept override { return spec_.parallel_safe; }

    std::vector<std::string> variant_ids() const override {
        std::vector<std::string> ids;
        for (const auto& [id, _] : spec_.variants) ids.push_back(id);
        return ids;
    }

    std::vector<std::string> mutator_names() const override {
        std::vector<std::string> names;
        for (const auto& m : spec_.mutators) names.push_back(m.name);
        return names;
    }

    const SuiteSpec<M1, M2>& spec() const noexcept { return spec_; }

    M1 parse_input(std::string_view text) const {
        if (!spec_.parse_input) throw ConfigError("suite '" + spec_.name + "' does not accept explicit inputs");
        try {
            return spec_.parse_input(text);
        } catch (const std::exception& e) {
            throw ConfigError("bad input for suite '" + spec_.name + "': " + e.what());
        }
    }

    /// One trial. Stage failures become ProgramError; configuration problems
    /// (unknown variant or mutator) throw ConfigError.
    Transcript<M1, M2> execute(const SuiteConfig& config,
                               std::uint64_t trial_index,
                               std::uint64_t trial_seed,
                               std::optional<M1> forced_input = std::nullopt,
                               std::optional<std::string> forced_mutator = std::nullopt) const {
        const auto variant = spec_.variants.find(config.variant_id);
        if (variant == spec_.variants.end())
            throw ConfigError("suite '" + spec_.name + "' has no variant '" + config.variant_id + "'");
        std::optional<std::size_t> mutator_index;
        if (forced_mutator) {
            for (std::size_t i = 0; i < spec_.mutators.size(); ++i)
                if (spec_.mutators[i].name == *forced_mutator) mutator_index = i;
            if (!mutator_index)
                throw ConfigError("suite '" + spec_.name + "' has no mutator '" + *forced_mutator + "'");
        }

        Transcript<M1, M2> t;
        t.trial_index = trial_index;
        t.trial_seed = trial_seed;
        t.verdict = Pass{};
        Rng rng(trial_seed);

        auto fail = [&](Stage stage) {
            t.verdict = ProgramError{stage, detail::describe_exception(std::current_exception())};
            return t;
        };

        try {
            t.m1 = forced_input ? std::move(*forced_input) : spec_.generator(rng);
        } catch (...) {
            return fail(Stage::Generate);
        }

        const std::size_t chosen = mutator_index ? *mutator_index : detail::pick_weighted(rng, weights_);
        const Mutator<M2>& mutator = spec_.mutators[chosen];

        try {
            StepBudget budget(config.step_cap);
            ExecContext ctx{rng, budget, config};
            t.m2 = variant->second.forward(*t.m1, ctx);
        } catch (...) {
            return fail(Stage::ForwardExec);
        }

        try {
            MutationDescriptor desc;
            desc.name = mutator.name;
            t.m2_mutated = mutator.apply ? mutator.apply(*t.m2, rng, desc) : *t.m2;
            t.mutation = std::move(desc);
        } catch (...) {
            t.mutation.name = mutator.name;
            return fail(Stage::Mutate);
        }

        try {
            StepBudget budget(config.step_cap);
            ExecContext ctx{rng, budget, config};
            t.m1_prime = variant->second.backward(*t.m2_mutated, ctx);
        } catch (...) {
            return fail(Stage::BackwardExec);
        }

        try {
            Rng relation_rng(detail::relation_stream_seed(trial_seed));
            RelationContext rctx{config, relation_rng};
            auto reason = spec_.relation(*t.m1, *t.m1_prime, t.mutation, rctx);
            if (!reason && config.strict && spec_.strict_check) reason = spec_.strict_check(*t.m1, *t.m2, rctx);
            if (reason) {
                t.verdict = Violation{detail::violation_detail(
                    *reason, spec_.render_input(*t.m1), spec_.render_input(*t.m1_prime))};
            }
        } catch (...) {
            return fail(Stage::RelationEval);
        }
        return t;
    }

    TranscriptText render(const Transcript<M1, M2>& t) const {
        TranscriptText out;
        if (t.m1) out.m1 = spec_.render_input(*t.m1);
        if (t.m2) out.m2 = spec_.render_output(*t.m2);
        if (t.m2_mutated) out.m2_mutated = spec_.render_output(*t.m2_mutated);
        if (t.m1_prime) out.m1_prime = spec_.render_input(*t.m1_prime);
        return out;
    }

    TrialReport run_trial_seeded(const SuiteConfig& config,
                                 std::uint64_t trial_index,
                                 std::uint64_t trial_seed,
                                 const TrialOverrides& overrides = {}) const override {
        std::optional<M1> forced;
        if (overrides.input) forced = parse_input(*overrides.input);
        auto t = execute(config, trial_index, trial_seed, std::move(forced), overrides.mutator);
        TrialReport r;
        r.suite = spec_.name;
        r.variant = config.variant_id;
        r.mode = spec_.mode;
        r.trial_index = trial_index;
        r.trial_seed = trial_seed;
        r.mutation = t.mutation;
        r.verdict = t.verdict;
        r.transcript = render(t);
        return r;
    }

private:
    SuiteSpec<M1, M2> spec_;
    std::vector<double> weights_;
};

template <class M1, class M2>
std::shared_ptr<const SuiteDefinition<M1, M2>> make_suite(SuiteSpec<M1, M2> spec) {
    return std::make_shared<const SuiteDefinition<M1, M2>>(std::move(spec));
}

// ---------------------------------------------------------------------------

class SuiteRegistry {
public:
    /// Throws std::invalid_argument on duplicate names.
    void add(std::shared_ptr<const Suite> suite);
    const Suite* find(std::string_view name) const noexcept;
    /// Suites in registration order.
    const std::vector<std::shared_ptr<const Suite>>& suites() const noexcept { return suites_; }

private:
    std::vector<std::shared_ptr<const Suite>> suites_;
};

} // namespace retro
