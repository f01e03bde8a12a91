#include "retro/builtin.hpp"
#include "retro/core.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace retro;

namespace {

// Toy suite over integers: P doubles, Q halves, relation is equality.
// Magic inputs make individual stages throw.
SuiteSpec<std::int64_t, std::int64_t> toy_spec() {
    SuiteSpec<std::int64_t, std::int64_t> spec;
    spec.name = "toy";
    spec.mode = Mode::Integrated;
    spec.generator = [](Rng& rng) { return rng.uniform_int(0, 100); };
    spec.variants["correct"] = {
        [](const std::int64_t& x, ExecContext& ctx) {
            if (x == -1) throw std::runtime_error("forward failed");
            if (x == -5) for (;;) ctx.budget.charge();
            return 2 * x;
        },
        [](const std::int64_t& y, ExecContext&) {
            if (y == -4) throw std::runtime_error("backward failed");
            return y / 2;
        }};
    spec.variants["off_by_one"] = {[](const std::int64_t& x, ExecContext&) { return 2 * x + 1; },
                                   [](const std::int64_t& y, ExecContext&) { return y / 2 + 1; }};
    spec.mutators = {identity_mutator<std::int64_t>(),
                     Mutator<std::int64_t>{"add_two", 1.0, [](const std::int64_t& y, Rng&, MutationDescriptor& d) {
                                               if (y == -6) throw std::runtime_error("mutate failed");
                                               d.parameters["delta"] = std::int64_t{2};
                                               return y + 2;
                                           }}};
    spec.relation = [](const std::int64_t& x, const std::int64_t& xp, const MutationDescriptor& m,
                       RelationContext&) -> RelationResult {
        if (x == -3) throw std::logic_error("relation failed");
        const std::int64_t expected = m.name == "add_two" ? x + 1 : x;
        if (xp == expected) return std::nullopt;
        return "mismatch";
    };
    spec.render_input = [](const std::int64_t& x) { return std::to_string(x); };
    spec.render_output = [](const std::int64_t& x) { return std::to_string(x); };
    spec.parse_input = [](std::string_view s) { return static_cast<std::int64_t>(std::stoll(std::string(s))); };
    return spec;
}

SuiteConfig cfg(std::string variant = "correct", std::uint64_t iterations = 200) {
    SuiteConfig c;
    c.variant_id = std::move(variant);
    c.iterations = iterations;
    return c;
}

} // namespace

TEST_CASE("mode and stage names") {
    CHECK(to_string(Mode::Forward) == "forward");
    CHECK(to_string(Mode::Backward) == "backward");
    CHECK(to_string(Mode::Integrated) == "integrated");
    CHECK(to_string(Stage::Generate) == "generate");
    CHECK(to_string(Stage::ForwardExec) == "forward_exec");
    CHECK(to_string(Stage::Mutate) == "mutate");
    CHECK(to_string(Stage::BackwardExec) == "backward_exec");
    CHECK(to_string(Stage::RelationEval) == "relation_eval");
    CHECK(verdict_kind(Pass{}) == "pass");
    CHECK(verdict_kind(Violation{"x"}) == "violation");
    CHECK(verdict_kind(ProgramError{Stage::Mutate, "x"}) == "program_error");
}

TEST_CASE("suite definition requires a correct variant and mutators") {
    auto spec = toy_spec();
    spec.variants.erase("correct");
    CHECK_THROWS_AS(make_suite(spec), std::invalid_argument);
    auto spec2 = toy_spec();
    spec2.mutators.clear();
    CHECK_THROWS_AS(make_suite(spec2), std::invalid_argument);
}

TEST_CASE("correct toy suite passes every trial") {
    const auto suite = make_suite(toy_spec());
    const auto run = run_suite(*suite, cfg());
    CHECK(run.summary.pass == 200);
    CHECK(run.summary.total() == 200);
    CHECK_FALSE(run.summary.first_failure_index.has_value());
    std::uint64_t i = 0;
    for (const auto& r : run.reports) {
        CHECK(r.trial_index == i);
        CHECK(r.trial_seed == derive_trial_seed(42, i));
        ++i;
    }
}

TEST_CASE("both mutators get chosen and descriptors are recorded") {
    const auto suite = make_suite(toy_spec());
    const auto run = run_suite(*suite, cfg());
    int identity = 0, add = 0;
    for (const auto& r : run.reports) {
        if (r.mutation.is_identity()) {
            ++identity;
            CHECK(r.transcript.m2 == r.transcript.m2_mutated);
        } else {
            ++add;
            CHECK(r.mutation.name == "add_two");
            CHECK(std::get<std::int64_t>(r.mutation.parameters.at("delta")) == 2);
        }
    }
    CHECK(identity > 50);
    CHECK(add > 50);
}

TEST_CASE("buggy variant gives violations with both renderings in the detail") {
    const auto suite = make_suite(toy_spec());
    const auto r = suite->run_trial_seeded(cfg("off_by_one"), 0, 1, {"10", "identity"});
    REQUIRE(is_violation(r.verdict));
    const auto& detail = std::get<Violation>(r.verdict).detail;
    CHECK(detail.find("m1=10") != std::string::npos);
    CHECK(detail.find("m1'=11") != std::string::npos);
}

TEST_CASE("each stage failure maps to its ProgramError stage and stops the pipeline") {
    const auto suite = make_suite(toy_spec());
    const auto c = cfg();
    auto stage_of = [&](const char* input, const char* mutator = "identity") {
        const auto r = suite->run_trial_seeded(c, 0, 1, {input, mutator});
        REQUIRE(is_program_error(r.verdict));
        return std::pair{std::get<ProgramError>(r.verdict).stage, r.transcript};
    };
    auto [s1, t1] = stage_of("-1");
    CHECK(s1 == Stage::ForwardExec);
    CHECK(t1.m1.has_value());
    CHECK_FALSE(t1.m2.has_value());
    CHECK_FALSE(t1.m1_prime.has_value());

    auto [s2, t2] = stage_of("-2");
    CHECK(s2 == Stage::BackwardExec);
    CHECK(t2.m2_mutated.has_value());
    CHECK_FALSE(t2.m1_prime.has_value());

    auto [s3, t3] = stage_of("-3");
    CHECK(s3 == Stage::RelationEval);
    CHECK(t3.m1_prime.has_value());

    auto [s4, t4] = stage_of("-3", "add_two");
    CHECK(s4 == Stage::Mutate);
    CHECK_FALSE(t4.m2_mutated.has_value());

    auto [s5, t5] = stage_of("-5");
    CHECK(s5 == Stage::ForwardExec);
    (void)t5;
}

TEST_CASE("generator failure is a Generate error") {
    auto spec = toy_spec();
    spec.generator = [](Rng&) -> std::int64_t { throw std::runtime_error("no input"); };
    const auto suite = make_suite(spec);
    const auto r = run_trial(*suite, cfg(), 0);
    REQUIRE(is_program_error(r.verdict));
    CHECK(std::get<ProgramError>(r.verdict).stage == Stage::Generate);
    CHECK(std::get<ProgramError>(r.verdict).message.find("no input") != std::string::npos);
    CHECK_FALSE(r.transcript.m1.has_value());
}

TEST_CASE("step cap overrun is a ProgramError, not a hang") {
    const auto suite = make_suite(toy_spec());
    auto c = cfg();
    c.step_cap = 1000;
    const auto r = suite->run_trial_seeded(c, 0, 1, {"-5", std::nullopt});
    REQUIRE(is_program_error(r.verdict));
    CHECK(std::get<ProgramError>(r.verdict).message.find("step cap") != std::string::npos);
}

TEST_CASE("StepBudget") {
    StepBudget b(3);
    b.charge();
    b.charge(2);
    CHECK(b.used() == 3);
    CHECK_THROWS_AS(b.charge(), StepCapExceeded);
    StepBudget e(10);
    CHECK_THROWS_AS(e.exhaust(), StepCapExceeded);
    CHECK(e.used() == 10);
}

TEST_CASE("validate_config rejects bad parameters before any trial") {
    const auto suite = make_suite(toy_spec());
    auto c = cfg();
    CHECK_NOTHROW(validate_config(*suite, c));
    c.iterations = 0;
    CHECK_THROWS_AS(validate_config(*suite, c), ConfigError);
    CHECK_THROWS_AS(run_suite(*suite, c), ConfigError);
    c = cfg("nosuch");
    CHECK_THROWS_AS(run_suite(*suite, c), ConfigError);
    CHECK_THROWS_AS(run_suite_serial(*suite, c), ConfigError);
    c = cfg();
    c.eps = -1;
    CHECK_THROWS_AS(validate_config(*suite, c), ConfigError);
    c = cfg();
    c.step_cap = 0;
    CHECK_THROWS_AS(validate_config(*suite, c), ConfigError);
}

TEST_CASE("unknown forced mutator is a configuration error") {
    const auto suite = make_suite(toy_spec());
    CHECK_THROWS_AS(suite->run_trial_seeded(cfg(), 0, 1, {std::nullopt, "nosuch"}), ConfigError);
    CHECK_THROWS_AS(suite->run_trial_seeded(cfg(), 0, 1, {"not a number", std::nullopt}), ConfigError);
}

TEST_CASE("summary counts and first failure") {
    std::vector<TrialReport> reports(4);
    for (std::uint64_t i = 0; i < 4; ++i) {
        reports[i].trial_index = i;
        reports[i].trial_seed = 100 + i;
        reports[i].verdict = Pass{};
    }
    reports[2].verdict = Violation{"v"};
    reports[3].verdict = ProgramError{Stage::ForwardExec, "e"};
    const auto s = summarize(reports);
    CHECK(s.pass == 2);
    CHECK(s.violation == 1);
    CHECK(s.program_error == 1);
    CHECK(s.first_failure_index == 2);
    CHECK(s.first_failure_seed == 102);
}

TEST_CASE("parallel runner matches the serial reference on every built-in suite") {
    for (const auto& suite : builtin_registry().suites()) {
        for (const auto& variant : suite->variant_ids()) {
            auto c = cfg(variant, 300);
            const auto a = run_suite(*suite, c);
            const auto b = run_suite_serial(*suite, c);
            CHECK_MESSAGE(a.reports == b.reports, suite->name() << "/" << variant);
            const auto again = run_suite(*suite, c);
            CHECK(again.reports == a.reports);
            CHECK(a.summary.total() == 300);
        }
    }
}

TEST_CASE("replaying a trial seed reproduces the report") {
    const Suite& suite = *builtin_registry().find("fourier");
    const auto c = cfg("coef_minus_1j", 50);
    const auto run = run_suite(suite, c);
    for (const auto& r : run.reports) CHECK(suite.run_trial_seeded(c, r.trial_index, r.trial_seed) == r);
}

TEST_CASE("registry") {
    SuiteRegistry reg;
    reg.add(make_suite(toy_spec()));
    CHECK(reg.find("toy") != nullptr);
    CHECK(reg.find("nope") == nullptr);
    CHECK_THROWS_AS(reg.add(make_suite(toy_spec())), std::invalid_argument);

    const auto& builtin = builtin_registry();
    for (const char* name : {"fourier", "factorization", "notation", "vm", "sine_forward", "sine_backward", "reciprocal"})
        CHECK_MESSAGE(builtin.find(name) != nullptr, name);
    CHECK(builtin.find("factorization")->mode() == Mode::Forward);
    CHECK(builtin.find("notation")->mode() == Mode::Integrated);
    CHECK(builtin.find("vm")->mode() == Mode::Backward);
}
