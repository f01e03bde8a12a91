#include "retro/builtin.hpp"
#include "retro/report.hpp"

#include <doctest.h>

#include <sstream>

using namespace retro;
using nlohmann::json;

TEST_CASE("record layout") {
    TrialReport r;
    r.suite = "fourier";
    r.variant = "coef_minus_1j";
    r.mode = Mode::Integrated;
    r.trial_index = 3;
    r.trial_seed = 18446744073709551615ULL;
    r.mutation.name = "add_constant";
    r.mutation.parameters["c"] = 0.25;
    r.verdict = Violation{"bad"};
    r.transcript.m1 = "[1]";
    r.transcript.m1_prime = "[2]";
    CHECK(report_record(r).dump() ==
          R"({"schema_version":1,"suite":"fourier","variant":"coef_minus_1j","trial_index":3,)"
          R"("trial_seed":18446744073709551615,"mode":"integrated","mutation":{"name":"add_constant",)"
          R"("parameters":{"c":0.25}},"verdict":{"kind":"violation","detail":"bad"},"m1_repr":"[1]","m1_prime_repr":"[2]"})");

    r.verdict = ProgramError{Stage::BackwardExec, "oops"};
    r.transcript.m1_prime.reset();
    const auto rec = report_record(r);
    CHECK(rec["verdict"]["stage"] == "backward_exec");
    CHECK(rec["verdict"]["detail"] == "oops");
    CHECK(rec["m1_prime_repr"] == "");

    r.verdict = Pass{};
    CHECK(report_record(r)["verdict"].dump() == R"({"kind":"pass"})");
}

TEST_CASE("report has one parseable line per trial in index order") {
    SuiteConfig c;
    c.iterations = 50;
    c.variant_id = "gcd_x";
    const auto run = run_suite(*builtin_registry().find("factorization"), c);
    std::ostringstream out;
    write_report(out, run.reports);
    std::istringstream in(out.str());
    std::string line;
    std::uint64_t i = 0;
    while (std::getline(in, line)) {
        const json rec = json::parse(line);
        CHECK(rec["trial_index"] == i);
        CHECK(rec["schema_version"] == 1);
        CHECK(rec["mode"] == "forward");
        ++i;
    }
    CHECK(i == 50);
}

TEST_CASE("run config defaults and validation") {
    auto cfg = parse_run_config(json::parse(R"({"suite": "vm"})"));
    CHECK(cfg.suite == "vm");
    CHECK(cfg.variant == "correct");
    CHECK(cfg.iterations == 1000);
    CHECK(cfg.seed == 42);
    CHECK(cfg.eps == 1e-10);
    CHECK(cfg.step_cap == 10'000'000);
    CHECK_FALSE(cfg.report_path.has_value());
    CHECK(cfg.has("suite"));
    CHECK_FALSE(cfg.has("seed"));

    cfg = parse_run_config(json::parse(
        R"({"suite":"fourier","variant":"coef_minus_1j","iterations":5,"seed":7,"eps":1e-6,"step_cap":9,"report_path":"r.jsonl","strict":true})"));
    CHECK(cfg.iterations == 5);
    CHECK(cfg.seed == 7);
    CHECK(cfg.eps == 1e-6);
    CHECK(cfg.step_cap == 9);
    CHECK(cfg.report_path == "r.jsonl");
    CHECK(cfg.strict);

    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"suite":"vm","colour":"red"})")), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"iterations":0})")), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"iterations":-3})")), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"seed":"abc"})")), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"eps":-1})")), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::parse(R"([1,2])")), ConfigError);
    CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), ConfigError);
}
