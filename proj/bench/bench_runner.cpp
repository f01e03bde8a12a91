// Serial reference runner vs OpenMP runner, per built-in suite.
//
//   retro_bench [iterations] [repeats]

#include "retro/builtin.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

template <class F>
double best_of(int repeats, F&& f) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    const std::uint64_t iterations = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2000;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
    std::printf("threads %d, iterations %llu, best of %d\n", omp_get_max_threads(),
                static_cast<unsigned long long>(iterations), repeats);
    std::printf("%-15s %12s %12s %8s %s\n", "suite", "serial_s", "parallel_s", "speedup", "same");
    for (const auto& suite : retro::builtin_registry().suites()) {
        retro::SuiteConfig config;
        config.iterations = iterations;
        retro::SuiteRun serial, parallel;
        const double ts = best_of(repeats, [&] { serial = retro::run_suite_serial(*suite, config); });
        const double tp = best_of(repeats, [&] { parallel = retro::run_suite(*suite, config); });
        std::printf("%-15s %12.4f %12.4f %8.2f %s\n", suite->name().c_str(), ts, tp, ts / tp,
                    serial.reports == parallel.reports ? "yes" : "NO");
    }
    return 0;
}
