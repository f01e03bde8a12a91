#include "retro/core.hpp"

#include <chrono>
#include <cmath>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace retro {

std::string_view to_string(Mode mode) noexcept {
    switch (mode) {
    case Mode::Forward: return "forward";
    case Mode::Backward: return "backward";
    case Mode::Integrated: return "integrated";
    }
    return "?";
}

std::string_view to_string(Stage stage) noexcept {
    switch (stage) {
    case Stage::Generate: return "generate";
    case Stage::ForwardExec: return "forward_exec";
    case Stage::Mutate: return "mutate";
    case Stage::BackwardExec: return "backward_exec";
    case Stage::RelationEval: return "relation_eval";
    }
    return "?";
}

std::string_view verdict_kind(const Verdict& verdict) noexcept {
    switch (verdict.index()) {
    case 0: return "pass";
    case 1: return "violation";
    default: return "program_error";
    }
}

StepCapExceeded::StepCapExceeded(std::uint64_t cap)
    : std::runtime_error("step cap of " + std::to_string(cap) + " exceeded") {}

bool Suite::has_variant(std::string_view id) const {
    for (const auto& v : variant_ids())
        if (v == id) return true;
    return false;
}

namespace detail {

std::string describe_exception(std::exception_ptr ep) {
    try {
        std::rethrow_exception(ep);
    } catch (const std::exception& e) {
        return e.what();
    } catch (...) {
        return "unknown exception";
    }
}

std::string violation_detail(const std::string& reason, const std::string& m1, const std::string& m1_prime) {
    return reason + "; m1=" + m1 + "; m1'=" + m1_prime;
}

std::uint64_t relation_stream_seed(std::uint64_t trial_seed) noexcept {
    return splitmix64_mix(trial_seed ^ 0xD1B54A32D192ED03ULL);
}

std::size_t pick_weighted(Rng& rng, const std::vector<double>& weights) {
    bool uniform = true;
    double total = 0.0;
    for (double w : weights) {
        total += w;
        uniform = uniform && w == weights.front();
    }
    if (uniform) return static_cast<std::size_t>(rng.below(weights.size()));
    double target = rng.uniform01() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (target < weights[i]) return i;
        target -= weights[i];
    }
    return weights.size() - 1;
}

} // namespace detail

void validate_config(const Suite& suite, const SuiteConfig& config) {
    if (config.iterations < 1) throw ConfigError("iterations must be at least 1");
    if (config.step_cap < 1) throw ConfigError("step_cap must be at least 1");
    if (!(config.eps >= 0.0) || !std::isfinite(config.eps)) throw ConfigError("eps must be a finite non-negative number");
    if (!suite.has_variant(config.variant_id))
        throw ConfigError("suite '" + suite.name() + "' has no variant '" + config.variant_id + "'");
}

TrialReport run_trial(const Suite& suite, const SuiteConfig& config, std::uint64_t trial_index) {
    validate_config(suite, config);
    if (trial_index >= config.iterations) throw ConfigError("trial index out of range");
    return suite.run_trial_seeded(config, trial_index, derive_trial_seed(config.master_seed, trial_index));
}

SuiteSummary summarize(const std::vector<TrialReport>& reports) {
    SuiteSummary s;
    for (const auto& r : reports) {
        if (is_pass(r.verdict)) {
            ++s.pass;
            continue;
        }
        if (is_violation(r.verdict))
            ++s.violation;
        else
            ++s.program_error;
        if (!s.first_failure_index) {
            s.first_failure_index = r.trial_index;
            s.first_failure_seed = r.trial_seed;
        }
    }
    return s;
}

namespace {

using Clock = std::chrono::steady_clock;

SuiteRun finish(std::vector<TrialReport> reports, Clock::time_point start) {
    SuiteRun run;
    run.summary = summarize(reports);
    run.summary.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    run.reports = std::move(reports);
    return run;
}

} // namespace

SuiteRun run_suite_serial(const Suite& suite, const SuiteConfig& config) {
    validate_config(suite, config);
    const auto start = Clock::now();
    std::vector<TrialReport> reports;
    reports.reserve(config.iterations);
    for (std::uint64_t i = 0; i < config.iterations; ++i)
        reports.push_back(suite.run_trial_seeded(config, i, derive_trial_seed(config.master_seed, i)));
    return finish(std::move(reports), start);
}

SuiteRun run_suite(const Suite& suite, const SuiteConfig& config) {
    if (!suite.parallel_safe()) return run_suite_serial(suite, config);
    validate_config(suite, config);
    const auto start = Clock::now();
    std::vector<TrialReport> reports(config.iterations);
    const auto n = static_cast<std::int64_t>(config.iterations);
    // run_trial_seeded traps every stage failure, so nothing escapes the region.
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto index = static_cast<std::uint64_t>(i);
        reports[index] = suite.run_trial_seeded(config, index, derive_trial_seed(config.master_seed, index));
    }
    return finish(std::move(reports), start);
}

void SuiteRegistry::add(std::shared_ptr<const Suite> suite) {
    if (!suite) throw std::invalid_argument("null suite");
    if (find(suite->name())) throw std::invalid_argument("duplicate suite '" + suite->name() + "'");
    suites_.push_back(std::move(suite));
}

const Suite* SuiteRegistry::find(std::string_view name) const noexcept {
    for (const auto& s : suites_)
        if (s->name() == name) return s.get();
    return nullptr;
}

} // namespace retro
