#pragma once

// Adapter for forward/backward programs that live in another process.
//
// Wire protocol, one UTF-8 JSON object per line in each direction:
//
//   request   {"id": 7, "data": <datum>}
//   response  {"id": 7, "data": <datum>}    or    {"id": 7, "error": "..."}
//
// The child is long-lived and reads requests on stdin, writing responses on
// stdout. At most one request is in flight per child. A missing response
// within the timeout, a malformed line or a dead child makes the call throw;
// the child is then killed and started again on the next call.

#include "retro/core.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <sys/types.h>
#include <vector>

namespace retro {

using Json = nlohmann::json;

inline constexpr std::chrono::milliseconds kDefaultAdapterTimeout{10'000};

enum class ProgramRole { Forward, Backward };

std::string_view to_string(ProgramRole role) noexcept;

class ExternalProgramError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ExternalProgram {
public:
    /// Starts the child immediately; throws ConfigError if it cannot be spawned.
    ExternalProgram(std::vector<std::string> argv, std::chrono::milliseconds timeout = kDefaultAdapterTimeout);
    ~ExternalProgram();

    ExternalProgram(const ExternalProgram&) = delete;
    ExternalProgram& operator=(const ExternalProgram&) = delete;

    /// Sends one datum and waits for the matching response. Throws
    /// ExternalProgramError on error responses, timeouts, malformed lines and
    /// child exit.
    Json call(const Json& data);

    /// Number of times the child has been (re)started.
    int starts() const;
    pid_t pid() const;

private:
    void start();
    void stop() noexcept;
    void send_line(const std::string& line);
    std::string read_line();

    mutable std::mutex mu_;
    std::vector<std::string> argv_;
    std::chrono::milliseconds timeout_;
    pid_t pid_ = -1;
    int fd_ = -1;
    std::string buffer_;
    std::uint64_t next_id_ = 0;
    int starts_ = 0;
};

/// Wraps an external process as a program usable in a SuiteSpec<Json, Json>.
/// Errors surface as exceptions, which the pipeline records as a
/// ProgramError for the stage the program occupies.
std::function<Json(const Json&, ExecContext&)> external_adapter(ProgramRole role,
                                                                std::vector<std::string> argv,
                                                                std::chrono::milliseconds timeout = kDefaultAdapterTimeout);

/// Inputs the external suite can generate.
enum class ExternalInputKind { RealSequence, Integer, Postfix, Expression };

ExternalInputKind parse_external_input_kind(std::string_view name);

struct ExternalSuiteOptions {
    std::string name = "external";
    Mode mode = Mode::Integrated;
    std::vector<std::string> forward_argv;
    std::vector<std::string> backward_argv;
    ExternalInputKind input = ExternalInputKind::RealSequence;
    std::chrono::milliseconds timeout = kDefaultAdapterTimeout;
};

/// Identity relation over JSON: same structure, strings and booleans equal,
/// numbers within eps.
RelationResult json_close(const Json& expected, const Json& actual, double eps);

using ExternalSuite = SuiteDefinition<Json, Json>;

/// Suite with one "correct" variant backed by two child processes. Trials run
/// sequentially.
std::shared_ptr<const ExternalSuite> make_external_suite(const ExternalSuiteOptions& options);

/// Splits on whitespace; no quoting.
std::vector<std::string> split_command(std::string_view command);

} // namespace retro
