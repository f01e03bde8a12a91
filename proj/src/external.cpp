#include "retro/external.hpp"

#include "retro/generators.hpp"
#include "retro/text.hpp"

#include <cerrno>
#include <cmath>
#include <cstring>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

extern char** environ;

namespace retro {

namespace {

using Clock = std::chrono::steady_clock;

std::string errno_text(const char* what) { return std::string(what) + ": " + std::strerror(errno); }

} // namespace

std::string_view to_string(ProgramRole role) noexcept {
    return role == ProgramRole::Forward ? "forward" : "backward";
}

ExternalProgram::ExternalProgram(std::vector<std::string> argv, std::chrono::milliseconds timeout)
    : argv_(std::move(argv)), timeout_(timeout) {
    if (argv_.empty()) throw ConfigError("external program needs a command");
    try {
        start();
    } catch (const ExternalProgramError& e) {
        throw ConfigError(e.what());
    }
}

ExternalProgram::~ExternalProgram() { stop(); }

int ExternalProgram::starts() const {
    std::lock_guard lock(mu_);
    return starts_;
}

pid_t ExternalProgram::pid() const {
    std::lock_guard lock(mu_);
    return pid_;
}

void ExternalProgram::start() {
    int fds[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0)
        throw ExternalProgramError(errno_text("socketpair"));

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, fds[1], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, fds[1], STDOUT_FILENO);

    std::vector<char*> args;
    for (auto& a : argv_) args.push_back(a.data());
    args.push_back(nullptr);

    pid_t pid = -1;
    const int rc = ::posix_spawnp(&pid, args[0], &actions, nullptr, args.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    ::close(fds[1]);
    if (rc != 0) {
        ::close(fds[0]);
        throw ExternalProgramError("cannot spawn '" + argv_[0] + "': " + std::strerror(rc));
    }
    pid_ = pid;
    fd_ = fds[0];
    buffer_.clear();
    ++starts_;
}

void ExternalProgram::stop() noexcept {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
    if (pid_ > 0) {
        ::kill(pid_, SIGKILL);
        int status = 0;
        while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
        }
        pid_ = -1;
    }
    buffer_.clear();
}

void ExternalProgram::send_line(const std::string& line) {
    std::size_t sent = 0;
    while (sent < line.size()) {
        const ssize_t n = ::send(fd_, line.data() + sent, line.size() - sent, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw ExternalProgramError(errno_text("write to external program"));
        }
        sent += static_cast<std::size_t>(n);
    }
}

std::string ExternalProgram::read_line() {
    const auto deadline = Clock::now() + timeout_;
    for (;;) {
        if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return line;
        }
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
        if (left.count() <= 0)
            throw ExternalProgramError("no response within " + std::to_string(timeout_.count()) + " ms");
        pollfd p{fd_, POLLIN, 0};
        const int ready = ::poll(&p, 1, static_cast<int>(left.count()));
        if (ready < 0) {
            if (errno == EINTR) continue;
            throw ExternalProgramError(errno_text("poll"));
        }
        if (ready == 0) continue;
        char chunk[4096];
        const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw ExternalProgramError(errno_text("read from external program"));
        }
        if (n == 0) throw ExternalProgramError("external program closed its output");
        buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

Json ExternalProgram::call(const Json& data) {
    std::lock_guard lock(mu_);
    if (pid_ < 0) start();
    const std::uint64_t id = next_id_++;
    try {
        send_line(Json{{"id", id}, {"data", data}}.dump() + "\n");
        const std::string line = read_line();
        Json response;
        try {
            response = Json::parse(line);
        } catch (const Json::parse_error&) {
            throw ExternalProgramError("malformed response line: " + line);
        }
        if (!response.is_object() || !response.contains("id") || response["id"] != id)
            throw ExternalProgramError("response does not answer request " + std::to_string(id) + ": " + line);
        if (response.contains("error")) {
            const Json& err = response["error"];
            throw ExternalProgramError("external program reported: " + (err.is_string() ? err.get<std::string>() : err.dump()));
        }
        if (!response.contains("data")) throw ExternalProgramError("response has neither data nor error: " + line);
        return response["data"];
    } catch (const ExternalProgramError& e) {
        // An error response leaves the child in a good state; anything else
        // (timeout, garbage, exit) gets a fresh child.
        if (std::string_view(e.what()).starts_with("external program reported: ")) throw;
        stop();
        throw;
    }
}

std::function<Json(const Json&, ExecContext&)> external_adapter(ProgramRole role,
                                                                std::vector<std::string> argv,
                                                                std::chrono::milliseconds timeout) {
    auto program = std::make_shared<ExternalProgram>(std::move(argv), timeout);
    return [program, role](const Json& data, ExecContext&) -> Json {
        try {
            return program->call(data);
        } catch (const ExternalProgramError& e) {
            throw ExternalProgramError(std::string(to_string(role)) + " program: " + e.what());
        }
    };
}

ExternalInputKind parse_external_input_kind(std::string_view name) {
    if (name == "real_sequence") return ExternalInputKind::RealSequence;
    if (name == "integer") return ExternalInputKind::Integer;
    if (name == "postfix") return ExternalInputKind::Postfix;
    if (name == "expression") return ExternalInputKind::Expression;
    throw ConfigError("unknown input kind '" + std::string(name) + "'");
}

RelationResult json_close(const Json& expected, const Json& actual, double eps) {
    if (expected.is_number() && actual.is_number()) {
        const double diff = std::fabs(expected.get<double>() - actual.get<double>());
        if (diff <= eps) return std::nullopt;
        return "numbers differ by " + format_real(diff);
    }
    if (expected.type() != actual.type()) return "type changed: " + expected.dump() + " vs " + actual.dump();
    if (expected.is_array()) {
        if (expected.size() != actual.size()) return "array length changed";
        for (std::size_t i = 0; i < expected.size(); ++i)
            if (auto r = json_close(expected[i], actual[i], eps)) return "[" + std::to_string(i) + "] " + *r;
        return std::nullopt;
    }
    if (expected.is_object()) {
        if (expected.size() != actual.size()) return "object keys changed";
        for (auto it = expected.begin(); it != expected.end(); ++it) {
            if (!actual.contains(it.key())) return "missing key '" + it.key() + "'";
            if (auto r = json_close(it.value(), actual[it.key()], eps)) return "." + it.key() + " " + *r;
        }
        return std::nullopt;
    }
    if (expected == actual) return std::nullopt;
    return expected.dump() + " != " + actual.dump();
}

std::shared_ptr<const ExternalSuite> make_external_suite(const ExternalSuiteOptions& options) {
    SuiteSpec<Json, Json> spec;
    spec.name = options.name;
    spec.mode = options.mode;
    spec.parallel_safe = false;
    switch (options.input) {
    case ExternalInputKind::RealSequence:
        spec.generator = [](Rng& rng) { return Json(gen_real_sequence(rng)); };
        break;
    case ExternalInputKind::Integer:
        spec.generator = [](Rng& rng) { return Json(gen_integer(rng)); };
        break;
    case ExternalInputKind::Postfix:
        spec.generator = [](Rng& rng) { return Json(gen_postfix(rng)); };
        break;
    case ExternalInputKind::Expression:
        spec.generator = [](Rng& rng) { return Json(print_infix(gen_expr_ast(rng))); };
        break;
    }
    spec.variants["correct"] = {external_adapter(ProgramRole::Forward, options.forward_argv, options.timeout),
                                external_adapter(ProgramRole::Backward, options.backward_argv, options.timeout)};
    spec.mutators = {identity_mutator<Json>()};
    spec.relation = [](const Json& m1, const Json& m1p, const MutationDescriptor&, RelationContext& ctx) {
        return json_close(m1, m1p, ctx.config.eps);
    };
    spec.render_input = [](const Json& j) { return j.dump(); };
    spec.render_output = [](const Json& j) { return j.dump(); };
    spec.parse_input = [](std::string_view text) { return Json::parse(text); };
    return make_suite(std::move(spec));
}

std::vector<std::string> split_command(std::string_view command) {
    std::vector<std::string> out;
    std::string current;
    for (char ch : command) {
        if (ch == ' ' || ch == '\t' || ch == '\n') {
            if (!current.empty()) out.push_back(std::move(current));
            current.clear();
        } else {
            current += ch;
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

} // namespace retro
