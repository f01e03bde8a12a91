#include "retro/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

namespace retro {

namespace {

using OJson = nlohmann::ordered_json;

OJson param_json(const ParamValue& v) {
    return std::visit([](const auto& x) { return OJson(x); }, v);
}

template <class T>
T require(const nlohmann::json& doc, const char* key, nlohmann::json::value_t type) {
    const auto& v = doc.at(key);
    const bool ok = type == nlohmann::json::value_t::number_float ? v.is_number()
                    : type == nlohmann::json::value_t::number_unsigned
                        ? v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)
                        : v.type() == type;
    if (!ok) throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    return v.get<T>();
}

} // namespace

OJson report_record(const TrialReport& r) {
    OJson mutation;
    mutation["name"] = r.mutation.name;
    mutation["parameters"] = OJson::object();
    for (const auto& [k, v] : r.mutation.parameters) mutation["parameters"][k] = param_json(v);

    OJson verdict;
    verdict["kind"] = verdict_kind(r.verdict);
    if (const auto* e = std::get_if<ProgramError>(&r.verdict)) {
        verdict["stage"] = to_string(e->stage);
        verdict["detail"] = e->message;
    } else if (const auto* v = std::get_if<Violation>(&r.verdict)) {
        verdict["detail"] = v->detail;
    }

    OJson rec;
    rec["schema_version"] = kReportSchemaVersion;
    rec["suite"] = r.suite;
    rec["variant"] = r.variant;
    rec["trial_index"] = r.trial_index;
    rec["trial_seed"] = r.trial_seed;
    rec["mode"] = to_string(r.mode);
    rec["mutation"] = std::move(mutation);
    rec["verdict"] = std::move(verdict);
    rec["m1_repr"] = r.transcript.m1.value_or("");
    rec["m1_prime_repr"] = r.transcript.m1_prime.value_or("");
    return rec;
}

void write_report(std::ostream& out, const std::vector<TrialReport>& reports) {
    for (const auto& r : reports)
        out << report_record(r).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
}

void write_report(const std::filesystem::path& path, const std::vector<TrialReport>& reports) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open report file '" + path.string() + "'");
    write_report(out, reports);
    if (!out) throw std::runtime_error("failed writing report file '" + path.string() + "'");
}

bool RunConfigFile::has(std::string_view key) const {
    return std::find(present.begin(), present.end(), key) != present.end();
}

RunConfigFile parse_run_config(const nlohmann::json& doc) {
    using VT = nlohmann::json::value_t;
    if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
    static const std::vector<std::string> known = {"suite", "variant",  "iterations",  "seed",
                                                   "eps",   "step_cap", "report_path", "strict"};
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw ConfigError("unknown config key '" + it.key() + "'");

    RunConfigFile cfg;
    for (auto it = doc.begin(); it != doc.end(); ++it) cfg.present.push_back(it.key());
    if (doc.contains("suite")) cfg.suite = require<std::string>(doc, "suite", VT::string);
    if (doc.contains("variant")) cfg.variant = require<std::string>(doc, "variant", VT::string);
    if (doc.contains("iterations")) cfg.iterations = require<std::uint64_t>(doc, "iterations", VT::number_unsigned);
    if (doc.contains("seed")) cfg.seed = require<std::uint64_t>(doc, "seed", VT::number_unsigned);
    if (doc.contains("eps")) cfg.eps = require<double>(doc, "eps", VT::number_float);
    if (doc.contains("step_cap")) cfg.step_cap = require<std::uint64_t>(doc, "step_cap", VT::number_unsigned);
    if (doc.contains("report_path")) cfg.report_path = require<std::string>(doc, "report_path", VT::string);
    if (doc.contains("strict")) cfg.strict = require<bool>(doc, "strict", VT::boolean);

    if (cfg.iterations == 0) throw ConfigError("iterations must be positive");
    if (cfg.step_cap == 0) throw ConfigError("step_cap must be positive");
    if (!std::isfinite(cfg.eps) || cfg.eps < 0) throw ConfigError("eps must be a finite non-negative number");
    return cfg;
}

RunConfigFile load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_run_config(doc);
}

} // namespace retro
