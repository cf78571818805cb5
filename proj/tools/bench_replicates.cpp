// Times the serial reference path against the OpenMP runner on identical
// workloads and checks that both produce the same summaries.
#include <chrono>
#include <cstdio>
#include <string>

#include "ran/experiments.hpp"

using Clock = std::chrono::steady_clock;

static double run_once(ran::experiments::Config cfg, bool serial, std::string* json) {
    cfg.serial = serial;
    const auto t0 = Clock::now();
    const auto res = ran::experiments::run_experiment(cfg);
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    *json = res.summary.to_json();
    return dt;
}

int main(int argc, char** argv) {
    std::uint64_t n = 20000;
    std::uint32_t replicates = 200;
    if (argc > 1) n = std::stoull(argv[1]);
    if (argc > 2) replicates = static_cast<std::uint32_t>(std::stoul(argv[2]));

    ran::experiments::Config cfg;
    cfg.kind = ran::experiments::Kind::hopclt;
    cfg.d = 2;
    cfg.n = n;
    cfg.replicates = replicates;
    cfg.master_seed = 42;

    std::string js, jp;
    const double ts = run_once(cfg, true, &js);
    const double tp = run_once(cfg, false, &jp);
    // serial summary is the reference; the parallel runner must match it bit for bit
    const bool same = js == jp;
    std::printf("hopclt d=%d n=%llu replicates=%u\n", cfg.d,
                static_cast<unsigned long long>(n), replicates);
    std::printf("  serial   %8.3f s\n", ts);
    std::printf("  openmp   %8.3f s   speedup %.2fx\n", tp, ts / tp);
    std::printf("  summaries identical: %s\n", same ? "yes" : "NO");
    return same ? 0 : 1;
}
