// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.
// Usage: acceptance [criterion ...]   (no arguments: run all twelve)
#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ran/code.hpp"
#include "ran/experiments.hpp"
#include "ran/graph.hpp"
#include "ran/metrics.hpp"
#include "ran/rng.hpp"
#include "ran/stats.hpp"
#include "ran/theory.hpp"

using namespace ran;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += (ok ? "" : "FAILED: ") + what;
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double median_of(std::vector<double> v) { return stats::median(std::move(v)); }

experiments::Config make_config(experiments::Kind kind, int d, std::uint64_t n,
                                std::uint32_t replicates, std::uint64_t seed) {
    experiments::Config c;
    c.kind = kind;
    c.d = d;
    c.n = n;
    c.replicates = replicates;
    c.master_seed = seed;
    return c;
}

double summary_stat(const experiments::Result& r, const std::string& key) {
    for (const auto& [k, v] : r.summary.stats)
        if (k == key) return std::stod(v);
    throw std::runtime_error("missing stat " + key);
}

// ---------------------------------------------------------------- criteria

Outcome c1_constants() {
    Outcome o;
    const auto b = theory::solve_diameter(2);
    o.require(std::abs(b.alpha - 0.8639) <= 1e-3,
              "alpha=" + fmt("%.6f", b.alpha) + " vs 0.8639 +-1e-3");
    o.require(std::abs(b.beta - 1.500) <= 1e-3,
              "beta=" + fmt("%.6f", b.beta) + " vs 1.500 +-1e-3");
    o.require(std::abs(b.diam_const - 1.668) <= 1e-3,
              "diam_const=" + fmt("%.6f", b.diam_const) + " vs 1.668 +-1e-3");
    const double mc = theory::hop_clt_constants(2).mean_coeff;
    o.require(std::abs(mc - 6.0 / 11.0) <= 1e-12, "mean_coeff=" + fmt("%.15f", mc) + " vs 6/11");
    return o;
}

Outcome c2_degree_law() {
    Outcome o;
    for (int d : {2, 3, 4, 5}) {
        long double sum = 0.0L;
        for (std::uint64_t k = d + 1; k <= 1000000; ++k) sum += metrics::theoretical_pk(d, k);
        o.require(sum >= 1.0L - 1e-5,
                  "d=" + std::to_string(d) + " sum=" + fmt("%.9f", static_cast<double>(sum)));
        double worst = 0.0;
        for (std::uint64_t k = d + 2; k <= 10000; ++k) {
            const double ak = static_cast<double>(cliques_of_degree(d, k));
            const double ak1 = static_cast<double>(cliques_of_degree(d, k - 1));
            const double lhs = metrics::theoretical_pk(d, k) * (d + ak);
            const double rhs = metrics::theoretical_pk(d, k - 1) * ak1;
            worst = std::max(worst, std::abs(lhs - rhs) / lhs);
        }
        o.require(worst < 1e-12, "d=" + std::to_string(d) + " recursion resid=" + fmt("%.2e", worst));
        long double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::uint64_t cnt = 0;
        for (std::uint64_t k = 1000; k <= 10000; ++k) {
            const long double x = std::log(static_cast<double>(k));
            const long double y = std::log(metrics::theoretical_pk(d, k));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++cnt;
        }
        const double slope = static_cast<double>((cnt * sxy - sx * sy) / (cnt * sxx - sx * sx));
        const double target = -(2.0 * d - 1) / (d - 1);
        o.require(std::abs(slope - target) < 0.01,
                  "d=" + std::to_string(d) + " slope=" + fmt("%.4f", slope));
    }
    return o;
}

Outcome c3_distance_oracle() {
    Outcome o;
    for (int d : {2, 3}) {
        for (std::uint64_t n : {50ULL, 200ULL}) {
            auto cfg = make_config(experiments::Kind::dist_oracle, d, n, 20,
                                   3000 + 10 * d + n);
            const auto r = experiments::run_experiment(cfg);
            std::string what = "d=" + std::to_string(d) + " n=" + std::to_string(n) +
                               " agreements=" + fmt("%.0f", summary_stat(r, "agreements")) + "/" +
                               fmt("%.0f", summary_stat(r, "pairs"));
            for (const auto& [k, v] : r.summary.stats)
                if (k == "first_witness") what += " witness " + v;
            o.require(!r.witness_failure, what);
        }
        auto cfg = make_config(experiments::Kind::dist_oracle, d, 2000, 1, 3100 + d);
        cfg.pairs_per_graph = 10000;
        const auto r = experiments::run_experiment(cfg);
        std::string what = "d=" + std::to_string(d) + " n=2000 sampled agreements=" +
                           fmt("%.0f", summary_stat(r, "agreements")) + "/10000";
        for (const auto& [k, v] : r.summary.stats)
            if (k == "first_witness") what += " witness " + v;
        o.require(!r.witness_failure, what);
    }
    return o;
}

Outcome c4_block_optimality() {
    Outcome o;
    // exhaustive: all 3^0 + ... + 3^10 codes at d=2
    std::vector<Symbol> buf;
    std::uint64_t mismatches = 0, total = 0;
    std::function<void()> rec = [&]() {
        const Code u(buf, 2);
        mismatches += block_count(u) != min_blocks_oracle(u, true);
        ++total;
        if (buf.size() == 10) return;
        for (Symbol s = 1; s <= 3; ++s) {
            buf.push_back(s);
            rec();
            buf.pop_back();
        }
    };
    rec();
    o.require(mismatches == 0, "exhaustive d=2 len<=10: " + std::to_string(total) + " codes, " +
                                   std::to_string(mismatches) + " mismatches");
    std::uint64_t rnd_bad = 0;
    Rng rng(404);
    for (int it = 0; it < 100000; ++it) {
        const int d = 2 + static_cast<int>(rng.below(3));
        const std::size_t len = rng.below(61);
        std::vector<Symbol> s(len);
        for (auto& x : s) x = static_cast<Symbol>(1 + rng.below(d + 1));
        const Code u(std::move(s), d);
        rnd_bad += block_count(u) != min_blocks_oracle(u, true);
    }
    o.require(rnd_bad == 0, "random 1e5 codes (d=2..4, len<=60): " +
                                std::to_string(rnd_bad) + " mismatches");
    const std::size_t ref = block_count(parse_code("113213323122221131", 2));
    o.require(ref == 5, "reference 18-char code blocks=" + std::to_string(ref));
    return o;
}

Outcome c5_renewal_clt() {
    Outcome o;
    const std::uint64_t k = 10000;
    const int reps = 100000;
    const double mu = theory::mu_exact(2), s2 = theory::sigma2_exact(2);
    std::vector<double> h(reps);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < reps; ++i) {
        Rng rng(mix64(505, static_cast<std::uint64_t>(i)));
        h[i] = static_cast<double>(theory::renewal_hk(2, k, rng));
    }
    const double mean = stats::mean(h);
    const double var = stats::variance(h);
    const double m0 = static_cast<double>(k) / mu;
    const double v0 = static_cast<double>(k) * s2 / (mu * mu * mu);
    std::vector<double> z(reps);
    for (int i = 0; i < reps; ++i) z[i] = (h[i] - m0) / std::sqrt(v0);
    const double ks = stats::ks_statistic(z);
    o.require(std::abs(mean - m0) <= 0.01 * m0,
              "mean=" + fmt("%.2f", mean) + " vs " + fmt("%.2f", m0) + " +-1%");
    o.require(std::abs(var - v0) <= 0.05 * v0,
              "var=" + fmt("%.2f", var) + " vs " + fmt("%.2f", v0) + " +-5%");
    o.require(ks <= 0.02, "ks=" + fmt("%.4f", ks) + " cap 0.02");
    return o;
}

Outcome c6_generation_law() {
    Outcome o;
    const std::uint64_t m = 10000;
    const int reps = 100000;
    std::vector<double> g(reps);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < reps; ++i) {
        Rng rng(mix64(606, static_cast<std::uint64_t>(i)));
        g[i] = static_cast<double>(theory::sample_gm(2, m, rng));
    }
    const double mean = stats::mean(g);
    const double exact = theory::gm_exact_mean(2, m);
    long double var = 0.0L;  // sum p(1-p)
    for (std::uint64_t i = 1; i <= m; ++i) {
        const long double p = 3.0L / (2.0L * i + 1);
        var += p * (1 - p);
    }
    const double se = std::sqrt(static_cast<double>(var) / reps);
    o.require(std::abs(mean - exact) <= 3 * se,
              "mean=" + fmt("%.4f", mean) + " vs exact " + fmt("%.4f", exact) + " +-3se(" +
                  fmt("%.4f", 3 * se) + ")");
    return o;
}

Outcome c7_hop_clt() {
    Outcome o;
    std::vector<double> ratio5, ks5, ks3;
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        auto big = make_config(experiments::Kind::hopclt, 2, 100000, 2000, seed);
        const auto rb = experiments::run_experiment(big);
        ratio5.push_back(summary_stat(rb, "mean_over_logn"));
        ks5.push_back(summary_stat(rb, "ks"));
        auto small = make_config(experiments::Kind::hopclt, 2, 1000, 2000, seed);
        const auto rs = experiments::run_experiment(small);
        ks3.push_back(summary_stat(rs, "ks"));
    }
    const double ratio = median_of(ratio5);
    const double k5 = median_of(ks5), k3 = median_of(ks3);
    o.require(std::abs(ratio - 6.0 / 11.0) <= 0.15 * (6.0 / 11.0),
              "median mean/log n=" + fmt("%.4f", ratio) + " vs 6/11 +-15%");
    o.require(k5 < k3, "ks(1e5)=" + fmt("%.4f", k5) + " < ks(1e3)=" + fmt("%.4f", k3));
    o.require(k5 <= 0.15, "ks(1e5)=" + fmt("%.4f", k5) + " cap 0.15");
    return o;
}

Outcome c8_degree_concentration() {
    Outcome o;
    auto big = make_config(experiments::Kind::degree, 2, 100000, 5, 808);
    const auto rb = experiments::run_experiment(big);
    const double med5 = summary_stat(rb, "median_sup_deviation");
    auto small = make_config(experiments::Kind::degree, 2, 1000, 5, 808);
    const auto rs = experiments::run_experiment(small);
    const double med3 = summary_stat(rs, "median_sup_deviation");
    const double envelope = 10.0 * std::sqrt(std::log(1e5) / 1e5);
    o.require(med5 <= 0.02, "median sup_dev(1e5)=" + fmt("%.5f", med5) + " cap 0.02");
    o.require(med5 <= envelope,
              "median sup_dev(1e5)=" + fmt("%.5f", med5) + " cap 10*sqrt(log n/n)=" +
                  fmt("%.5f", envelope));
    o.require(med5 < med3,
              "median(1e5)=" + fmt("%.5f", med5) + " < median(1e3)=" + fmt("%.5f", med3));
    return o;
}

Outcome c9_ean_limit_law() {
    Outcome o;
    auto deg = make_config(experiments::Kind::ean_degree, 2, 10000, 5, 909);
    deg.schedule = QSchedule::harmonic(0.5);  // q_n = 1/(2n)
    const auto rd = experiments::run_experiment(deg);
    const double med = summary_stat(rd, "median_sup_deviation");
    o.require(med <= 0.05, "median sup_dev=" + fmt("%.5f", med) + " cap 0.05");
    auto hop = make_config(experiments::Kind::ean_hop, 2, 10000, 5, 909);
    hop.schedule = QSchedule::harmonic(0.5);
    hop.pairs_per_graph = 400;  // documented fast mode for the mean estimate
    const auto rh = experiments::run_experiment(hop);
    const double mean = summary_stat(rh, "mean_hop");
    const double center = summary_stat(rh, "center");
    o.require(std::abs(mean - center) <= 0.2 * center,
              "mean hop=" + fmt("%.3f", mean) + " vs center " + fmt("%.3f", center) + " +-20%");
    return o;
}

Outcome c10_clustering() {
    Outcome o;
    auto cfg = make_config(experiments::Kind::clustering, 2, 100000, 3, 1010);
    const auto r = experiments::run_experiment(cfg);
    const double drift = summary_stat(r, "max_direct_vs_formula");
    o.require(drift <= 1e-9, "max |direct-formula|=" + fmt("%.2e", drift));
    const double series = summary_stat(r, "series_value");
    const double med = summary_stat(r, "median_direct");
    o.require(std::abs(med - series) <= 0.01, "median direct=" + fmt("%.5f", med) +
                                                  " vs series " + fmt("%.5f", series) + " +-0.01");
    return o;
}

Outcome c11_depth_constant() {
    Outcome o;
    auto cfg = make_config(experiments::Kind::depth, 2, 1000000, 5, 1111);
    const auto r = experiments::run_experiment(cfg);
    const double ct = theory::c_tilde(2);
    const double rmax = summary_stat(r, "median_max_over_logn");
    const double rcl = summary_stat(r, "median_clique_over_logn");
    o.require(rmax >= 0.85 * ct && rmax <= 1.15 * ct,
              "median max-gen/log n=" + fmt("%.4f", rmax) + " vs c~=" + fmt("%.4f", ct) +
                  " band [0.85,1.15]");
    o.require(rcl >= 0.9 * 1.5 && rcl <= 1.1 * 1.5,
              "median clique-gen/log n=" + fmt("%.4f", rcl) + " vs 1.5 band [0.9,1.1]");
    return o;
}

Outcome c12_determinism() {
    Outcome o;
    auto shell = [](const std::string& args) {
        const std::string cmd = std::string(RAN_CLI_PATH) + " " + args + " >/dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };
    auto slurp = [](const std::string& p) {
        std::ifstream in(p);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    struct Case {
        std::string name, args;
        std::vector<std::string> files;
    };
    const std::vector<Case> cases = {
        {"generate-ran", "generate --model ran --dim 2 --steps 400 --seed 7 --out %P",
         {"%P.vertices.csv", "%P.edges.csv"}},
        {"generate-ean",
         "generate --model ean --dim 3 --steps 300 --seed 8 --q harmonic:0.5 --out %P",
         {"%P.vertices.csv", "%P.edges.csv"}},
        {"degrees", "degrees --model ran --dim 2 --steps 500 --seed 9 --out %P.csv", {"%P.csv"}},
        {"distances", "distances --model ran --dim 2 --steps 80 --seed 10 --all-pairs --out %P.csv",
         {"%P.csv"}},
        {"constants", "constants --dim 3 --out %P.json", {"%P.json"}},
        {"experiment",
         "experiment --kind hopclt --dim 2 --steps 2000 --replicates 40 --seed 11 --out %P",
         {"%P.csv", "%P.summary.json"}},
    };
    for (const auto& c : cases) {
        bool same = true;
        std::vector<std::string> payload(2);
        for (int run = 0; run < 2; ++run) {
            const std::string prefix = "/tmp/ran_acc_" + c.name + "_" + std::to_string(run);
            std::string args = c.args;
            for (std::string::size_type p; (p = args.find("%P")) != std::string::npos;)
                args.replace(p, 2, prefix);
            if (!shell(args)) {
                same = false;
                break;
            }
            for (const auto& f : c.files) {
                std::string path = f;
                for (std::string::size_type p; (p = path.find("%P")) != std::string::npos;)
                    path.replace(p, 2, prefix);
                payload[run] += slurp(path);
            }
        }
        same = same && !payload[0].empty() && payload[0] == payload[1];
        o.require(same, c.name);
    }
    // export round-trip reproduces its input bytes
    const bool gen = shell("generate --model ran --dim 2 --steps 60 --seed 12 --out /tmp/ran_acc_x");
    const bool exp = shell("export --in /tmp/ran_acc_x --out /tmp/ran_acc_y");
    const bool rt = gen && exp &&
                    slurp("/tmp/ran_acc_x.vertices.csv") == slurp("/tmp/ran_acc_y.vertices.csv") &&
                    slurp("/tmp/ran_acc_x.edges.csv") == slurp("/tmp/ran_acc_y.edges.csv");
    o.require(rt, "export-roundtrip");
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "constants", 5, c1_constants},
    {2, "degree-law-self-consistency", 10, c2_degree_law},
    {3, "distance-formula-oracle", 120, c3_distance_oracle},
    {4, "block-decomposition-optimality", 60, c4_block_optimality},
    {5, "renewal-clt", 30, c5_renewal_clt},
    {6, "generation-law", 30, c6_generation_law},
    {7, "hopcount-clt", 900, c7_hop_clt},
    {8, "degree-concentration", 300, c8_degree_concentration},
    {9, "ean-limit-law", 300, c9_ean_limit_law},
    {10, "clustering", 120, c10_clustering},
    {11, "depth-constant", 600, c11_depth_constant},
    {12, "determinism", 600, c12_determinism},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
    bool all_pass = true;
    for (const auto& c : kCriteria) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end())
            continue;
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
        if (dt > c.budget_seconds) {
            o.pass = false;
            o.detail += "; runtime " + fmt("%.1f", dt) + "s over budget " +
                        fmt("%.0f", c.budget_seconds) + "s";
        }
        std::printf("[%s] C%-2d %-32s %7.1fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, dt,
                    o.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}
