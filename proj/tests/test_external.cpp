#include "retro/external.hpp"

#include <doctest.h>

using namespace retro;
using namespace std::chrono_literals;

namespace {

std::vector<std::string> fixture(const char* mode) { return {RETRO_FIXTURE_PATH, mode}; }

ExternalSuiteOptions options(const char* fwd, const char* bwd, std::chrono::milliseconds timeout = 2000ms) {
    ExternalSuiteOptions o;
    o.forward_argv = fixture(fwd);
    o.backward_argv = fixture(bwd);
    o.timeout = timeout;
    return o;
}

} // namespace

TEST_CASE("echo round trip") {
    ExternalProgram p(fixture("echo"));
    CHECK(p.call(Json{1, 2.5, "x"}) == Json{1, 2.5, "x"});
    CHECK(p.call(Json::object({{"k", nullptr}})) == Json::object({{"k", nullptr}}));
    CHECK(p.starts() == 1);
}

TEST_CASE("error responses raise but keep the child") {
    ExternalProgram p(fixture("echo"));
    const pid_t pid = p.pid();
    CHECK_THROWS_WITH_AS(p.call("boom"), doctest::Contains("boom"), ExternalProgramError);
    CHECK(p.call(7) == 7);
    CHECK(p.pid() == pid);
    CHECK(p.starts() == 1);
}

TEST_CASE("timeout kills the child and the next call restarts it") {
    ExternalProgram p(fixture("echo"), 200ms);
    const auto t0 = std::chrono::steady_clock::now();
    CHECK_THROWS_WITH_AS(p.call("stall"), doctest::Contains("no response within 200 ms"), ExternalProgramError);
    CHECK(std::chrono::steady_clock::now() - t0 < 5s);
    CHECK(p.call(3) == 3);
    CHECK(p.starts() == 2);
}

TEST_CASE("a crashing child yields an error and a restart") {
    ExternalProgram p(fixture("echo"));
    CHECK_THROWS_WITH_AS(p.call("crash"), doctest::Contains("closed"), ExternalProgramError);
    CHECK(p.call("ok") == "ok");
    CHECK(p.starts() == 2);
}

TEST_CASE("malformed response lines are errors") {
    ExternalProgram p(fixture("garbage"));
    CHECK_THROWS_WITH_AS(p.call(1), doctest::Contains("malformed"), ExternalProgramError);
}

TEST_CASE("spawn failure is a configuration error") {
    CHECK_THROWS_AS(ExternalProgram({"/nonexistent/program"}), ConfigError);
    CHECK_THROWS_AS(ExternalProgram({}), ConfigError);
}

TEST_CASE("loopback suite passes 100 identity trials") {
    for (auto kind : {ExternalInputKind::RealSequence, ExternalInputKind::Integer, ExternalInputKind::Postfix,
                      ExternalInputKind::Expression}) {
        auto o = options("echo", "echo");
        o.input = kind;
        const auto suite = make_external_suite(o);
        CHECK_FALSE(suite->parallel_safe());
        SuiteConfig c;
        c.iterations = 100;
        const auto run = run_suite(*suite, c);
        CHECK(run.summary.pass == 100);
    }
}

TEST_CASE("error fixture gives ProgramErrors for the right stage and the run continues") {
    SuiteConfig c;
    c.iterations = 5;
    auto run = run_suite(*make_external_suite(options("error", "echo")), c);
    CHECK(run.summary.program_error == 5);
    for (const auto& r : run.reports) {
        CHECK(std::get<ProgramError>(r.verdict).stage == Stage::ForwardExec);
        CHECK(std::get<ProgramError>(r.verdict).message.find("boom") != std::string::npos);
    }
    run = run_suite(*make_external_suite(options("echo", "error")), c);
    CHECK(run.summary.program_error == 5);
    for (const auto& r : run.reports) CHECK(std::get<ProgramError>(r.verdict).stage == Stage::BackwardExec);
}

TEST_CASE("stall fixture times out without taking the harness down") {
    SuiteConfig c;
    c.iterations = 2;
    const auto run = run_suite(*make_external_suite(options("echo", "stall", 150ms)), c);
    CHECK(run.summary.program_error == 2);
    for (const auto& r : run.reports) {
        CHECK(std::get<ProgramError>(r.verdict).stage == Stage::BackwardExec);
        CHECK(std::get<ProgramError>(r.verdict).message.find("no response") != std::string::npos);
    }
}

TEST_CASE("json_close") {
    CHECK_FALSE(json_close(Json{1.0, 2.0}, Json{1.0, 2.0 + 1e-12}, 1e-10));
    CHECK(json_close(Json{1.0, 2.0}, Json{1.0, 2.1}, 1e-10));
    CHECK(json_close(Json{1.0}, Json{1.0, 2.0}, 1e-10));
    CHECK(json_close(Json("a"), Json("b"), 1e-10));
    CHECK(json_close(Json(1), Json("1"), 1e-10));
    CHECK_FALSE(json_close(Json(3), Json(3.0), 0));
    CHECK(json_close(Json::object({{"a", 1}}), Json::object({{"b", 1}}), 0));
    CHECK_FALSE(json_close(Json::object({{"a", 1}}), Json::object({{"a", 1}}), 0));
}

TEST_CASE("input kinds and command splitting") {
    CHECK(parse_external_input_kind("integer") == ExternalInputKind::Integer);
    CHECK_THROWS_AS(parse_external_input_kind("image"), ConfigError);
    CHECK(split_command("  prog  --flag\tvalue ") == std::vector<std::string>{"prog", "--flag", "value"});
    CHECK(to_string(ProgramRole::Backward) == "backward");
}
