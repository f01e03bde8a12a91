#include "retro/cli.hpp"

#include "retro/builtin.hpp"
#include "retro/core.hpp"
#include "retro/external.hpp"
#include "retro/report.hpp"
#include "retro/text.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace retro {

namespace {

std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

std::string render_param(const ParamValue& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&v)) return format_real(*d);
    return std::get<std::string>(v);
}

std::string render_mutation(const MutationDescriptor& m) {
    std::string out = m.name;
    for (const auto& [k, v] : m.parameters) out += " " + k + "=" + render_param(v);
    return out;
}

std::string render_verdict(const Verdict& v) {
    if (const auto* e = std::get_if<ProgramError>(&v))
        return "program_error at " + std::string(to_string(e->stage)) + ": " + e->message;
    if (const auto* x = std::get_if<Violation>(&v)) return "violation: " + x->detail;
    return "pass";
}

const Suite& find_suite(std::string_view name) {
    const Suite* suite = builtin_registry().find(name);
    if (!suite) throw ConfigError("unknown suite '" + std::string(name) + "' (see 'retro list')");
    return *suite;
}

void print_summary(std::ostream& out, const Suite& suite, const SuiteConfig& config, const SuiteSummary& s) {
    out << "suite " << suite.name() << " variant " << config.variant_id << " mode " << to_string(suite.mode())
        << " seed " << config.master_seed << "\n";
    out << "trials " << s.total() << ": pass " << s.pass << ", violation " << s.violation << ", program_error "
        << s.program_error << "\n";
    if (s.first_failure_index)
        out << "first failure: trial " << *s.first_failure_index << ", trial seed " << *s.first_failure_seed << "\n";
    else
        out << "first failure: none\n";
    std::ostringstream wall;
    wall << std::fixed << std::setprecision(3) << s.wall_seconds;
    out << "wall time " << wall.str() << " s\n";
}

int finish_run(std::ostream& out, const Suite& suite, const SuiteConfig& config, const SuiteRun& run,
               const std::optional<std::string>& report_path) {
    if (report_path) write_report(std::filesystem::path(*report_path), run.reports);
    print_summary(out, suite, config, run.summary);
    return run.summary.violation + run.summary.program_error == 0 ? kExitPass : kExitFailures;
}

struct RunArgs {
    std::string suite;
    std::string variant;
    std::uint64_t iterations = 0;
    std::string seed;
    double eps = 0;
    std::uint64_t step_cap = 0;
    std::string report;
    std::string config;
    bool strict = false;
    bool serial = false;
};

int do_run(const RunArgs& a, const CLI::App& cmd, std::ostream& out) {
    RunConfigFile file;
    if (cmd.count("--config")) file = load_run_config(a.config);

    auto given = [&](const char* flag) { return cmd.count(flag) > 0; };
    const std::string suite_name = given("--suite") ? a.suite : file.suite;
    if (suite_name.empty()) throw ConfigError("no suite given (use --suite or a config file)");
    const Suite& suite = find_suite(suite_name);

    SuiteConfig config;
    config.variant_id = given("--variant") ? a.variant : file.variant;
    config.iterations = given("--iterations") ? a.iterations : file.iterations;
    config.eps = given("--eps") ? a.eps : file.eps;
    config.step_cap = given("--step-cap") ? a.step_cap : file.step_cap;
    config.strict = given("--strict") ? a.strict : file.strict;
    if (given("--seed")) {
        config.master_seed = parse_u64(a.seed);
    } else if (const char* env = std::getenv("RETRO_SEED"); env && *env) {
        try {
            config.master_seed = parse_u64(env);
        } catch (const std::exception&) {
            throw ConfigError("RETRO_SEED is not an unsigned integer: '" + std::string(env) + "'");
        }
    } else {
        config.master_seed = file.seed;
    }
    std::optional<std::string> report = file.report_path;
    if (given("--report")) report = a.report;

    validate_config(suite, config);
    const SuiteRun run = a.serial ? run_suite_serial(suite, config) : run_suite(suite, config);
    return finish_run(out, suite, config, run, report);
}

struct ReplayArgs {
    std::string suite;
    std::string variant = "correct";
    std::string trial_seed;
    std::uint64_t trial_index = 0;
    std::string input;
    std::string mutation;
    double eps = 1e-10;
    std::uint64_t step_cap = 10'000'000;
    bool strict = false;
};

int do_replay(const ReplayArgs& a, const CLI::App& cmd, std::ostream& out) {
    const Suite& suite = find_suite(a.suite);
    SuiteConfig config;
    config.variant_id = a.variant;
    config.eps = a.eps;
    config.step_cap = a.step_cap;
    config.strict = a.strict;
    config.iterations = a.trial_index + 1;
    validate_config(suite, config);

    TrialOverrides overrides;
    if (cmd.count("--input")) overrides.input = a.input;
    if (cmd.count("--mutation")) overrides.mutator = a.mutation;
    const TrialReport r = suite.run_trial_seeded(config, a.trial_index, parse_u64(a.trial_seed), overrides);

    const auto show = [](const std::optional<std::string>& s) { return s ? *s : std::string("(not reached)"); };
    out << "suite:      " << r.suite << "\n";
    out << "variant:    " << r.variant << "\n";
    out << "mode:       " << to_string(r.mode) << "\n";
    out << "trial_seed: " << r.trial_seed << "\n";
    out << "m1:         " << show(r.transcript.m1) << "\n";
    out << "m2:         " << show(r.transcript.m2) << "\n";
    out << "mutation:   " << render_mutation(r.mutation) << "\n";
    out << "m2':        " << show(r.transcript.m2_mutated) << "\n";
    out << "m1':        " << show(r.transcript.m1_prime) << "\n";
    out << "verdict:    " << render_verdict(r.verdict) << "\n";
    return is_pass(r.verdict) ? kExitPass : kExitFailures;
}

struct ExternalArgs {
    std::string forward;
    std::string backward;
    std::string input_kind = "real_sequence";
    std::string mode = "integrated";
    std::string name = "external";
    std::uint64_t timeout_ms = static_cast<std::uint64_t>(kDefaultAdapterTimeout.count());
    std::uint64_t iterations = 100;
    std::string seed = "42";
    double eps = 1e-10;
    std::string report;
};

Mode parse_mode(std::string_view s) {
    if (s == "forward") return Mode::Forward;
    if (s == "backward") return Mode::Backward;
    if (s == "integrated") return Mode::Integrated;
    throw ConfigError("unknown mode '" + std::string(s) + "'");
}

int do_external(const ExternalArgs& a, const CLI::App& cmd, std::ostream& out) {
    ExternalSuiteOptions opts;
    opts.name = a.name;
    opts.mode = parse_mode(a.mode);
    opts.input = parse_external_input_kind(a.input_kind);
    opts.forward_argv = split_command(a.forward);
    opts.backward_argv = split_command(a.backward);
    opts.timeout = std::chrono::milliseconds(a.timeout_ms);
    if (opts.forward_argv.empty() || opts.backward_argv.empty())
        throw ConfigError("--forward and --backward need a command");
    if (a.timeout_ms == 0) throw ConfigError("--timeout-ms must be positive");

    SuiteConfig config;
    config.iterations = a.iterations;
    config.master_seed = parse_u64(a.seed);
    config.eps = a.eps;
    const auto suite = make_external_suite(opts);
    validate_config(*suite, config);
    const SuiteRun run = run_suite(*suite, config);
    std::optional<std::string> report;
    if (cmd.count("--report")) report = a.report;
    return finish_run(out, *suite, config, run, report);
}

void do_list(std::ostream& out) {
    for (const auto& s : builtin_registry().suites())
        out << std::left << std::setw(15) << s->name() << std::setw(12) << to_string(s->mode())
            << join(s->variant_ids(), ",") << "\n";
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dual-program round-trip testing harness", "retro"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "List suites with their mode and variants");

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Run a suite; flags override values from --config");
    run_cmd->add_option("--suite", run.suite, "Suite name");
    run_cmd->add_option("--variant", run.variant, "Variant id (default correct)");
    run_cmd->add_option("--iterations", run.iterations, "Number of trials (default 1000)");
    run_cmd->add_option("--seed", run.seed, "Master seed; RETRO_SEED is used when absent (default 42)");
    run_cmd->add_option("--eps", run.eps, "Relation tolerance (default 1e-10)");
    run_cmd->add_option("--step-cap", run.step_cap, "Work bound per program execution (default 10000000)");
    run_cmd->add_option("--report", run.report, "Write one JSON record per trial to this file");
    run_cmd->add_option("--config", run.config, "JSON run configuration file");
    run_cmd->add_flag("--strict", run.strict, "Enable the suite's stricter oracle");
    run_cmd->add_flag("--serial", run.serial, "Use the single-threaded runner");

    ReplayArgs replay;
    auto* replay_cmd = app.add_subcommand("replay", "Re-run one trial and print its transcript");
    replay_cmd->add_option("--suite", replay.suite, "Suite name")->required();
    replay_cmd->add_option("--variant", replay.variant, "Variant id");
    replay_cmd->add_option("--trial-seed", replay.trial_seed, "Trial seed from a run summary or report")->required();
    replay_cmd->add_option("--trial-index", replay.trial_index, "Trial index to record");
    replay_cmd->add_option("--input", replay.input, "Use this input instead of generating one");
    replay_cmd->add_option("--mutation", replay.mutation, "Use this mutator instead of drawing one");
    replay_cmd->add_option("--eps", replay.eps, "Relation tolerance");
    replay_cmd->add_option("--step-cap", replay.step_cap, "Work bound per program execution");
    replay_cmd->add_flag("--strict", replay.strict, "Enable the suite's stricter oracle");

    ExternalArgs ext;
    auto* ext_cmd = app.add_subcommand("external", "Run a suite whose programs are external processes");
    ext_cmd->add_option("--forward", ext.forward, "Forward program command line")->required();
    ext_cmd->add_option("--backward", ext.backward, "Backward program command line")->required();
    ext_cmd->add_option("--input-kind", ext.input_kind, "real_sequence, integer, postfix or expression");
    ext_cmd->add_option("--mode", ext.mode, "forward, backward or integrated");
    ext_cmd->add_option("--name", ext.name, "Suite name used in reports");
    ext_cmd->add_option("--timeout-ms", ext.timeout_ms, "Response timeout per request (default 10000)");
    ext_cmd->add_option("--iterations", ext.iterations, "Number of trials (default 100)");
    ext_cmd->add_option("--seed", ext.seed, "Master seed (default 42)");
    ext_cmd->add_option("--eps", ext.eps, "Numeric tolerance (default 1e-10)");
    ext_cmd->add_option("--report", ext.report, "Write one JSON record per trial to this file");

    std::vector<std::string> argv_store{"retro"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitConfig;
    }

    try {
        if (*list) {
            do_list(out);
            return kExitPass;
        }
        if (*run_cmd) return do_run(run, *run_cmd, out);
        if (*replay_cmd) return do_replay(replay, *replay_cmd, out);
        if (*ext_cmd) return do_external(ext, *ext_cmd, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}

} // namespace retro
