#pragma once

// JSON Lines trial reports and run configuration files.

#include "retro/core.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace retro {

inline constexpr int kReportSchemaVersion = 1;

/// One report record. Key order is fixed so output is byte-stable.
nlohmann::ordered_json report_record(const TrialReport& report);

/// Writes one record per line, in the given order.
void write_report(std::ostream& out, const std::vector<TrialReport>& reports);
void write_report(const std::filesystem::path& path, const std::vector<TrialReport>& reports);

struct RunConfigFile {
    std::string suite;
    std::string variant = "correct";
    std::uint64_t iterations = 1000;
    std::uint64_t seed = 42;
    double eps = 1e-10;
    std::uint64_t step_cap = 10'000'000;
    std::optional<std::string> report_path;
    bool strict = false;
    /// Keys present in the file, so flags and RETRO_SEED know what was set.
    std::vector<std::string> present;

    bool has(std::string_view key) const;
};

/// Throws ConfigError on unknown keys, wrong types or out-of-range values.
RunConfigFile parse_run_config(const nlohmann::json& doc);
RunConfigFile load_run_config(const std::filesystem::path& path);

} // namespace retro
