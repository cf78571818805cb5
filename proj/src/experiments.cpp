#include "ran/experiments.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "ran/code.hpp"
#include "ran/metrics.hpp"
#include "ran/stats.hpp"
#include "ran/theory.hpp"

namespace ran {
namespace experiments {

Kind parse_kind(const std::string& name) {
    if (name == "hopclt") return Kind::hopclt;
    if (name == "degree") return Kind::degree;
    if (name == "depth") return Kind::depth;
    if (name == "clustering") return Kind::clustering;
    if (name == "ean_hop") return Kind::ean_hop;
    if (name == "ean_degree") return Kind::ean_degree;
    if (name == "dist_oracle") return Kind::dist_oracle;
    throw std::invalid_argument("unknown experiment kind: " + name);
}

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::hopclt: return "hopclt";
        case Kind::degree: return "degree";
        case Kind::depth: return "depth";
        case Kind::clustering: return "clustering";
        case Kind::ean_hop: return "ean_hop";
        case Kind::ean_degree: return "ean_degree";
        case Kind::dist_oracle: return "dist_oracle";
    }
    return "?";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void Summary::put(const std::string& key, double value) {
    if (!std::isfinite(value)) {
        put_raw(key, format_double(value));
        return;
    }
    stats.emplace_back(key, format_double(value));
}
void Summary::put_int(const std::string& key, std::uint64_t value) {
    stats.emplace_back(key, std::to_string(value));
}
void Summary::put_raw(const std::string& key, const std::string& value) {
    std::string esc = "\"";
    for (char c : value) {
        if (c == '"' || c == '\\') esc.push_back('\\');
        esc.push_back(c);
    }
    esc.push_back('"');
    stats.emplace_back(key, esc);
}

std::string Summary::to_json() const {
    std::string out = "{";
    out += "\"kind\":\"" + kind + "\",";
    out += "\"d\":" + std::to_string(config.d) + ",";
    out += "\"n\":" + std::to_string(config.n) + ",";
    out += "\"replicates\":" + std::to_string(config.replicates) + ",";
    out += "\"master_seed\":" + std::to_string(config.master_seed) + ",";
    out += "\"schedule\":\"" + config.schedule.describe() + "\",";
    out += "\"pairs_per_graph\":" + std::to_string(config.pairs_per_graph) + ",";
    out += std::string("\"fast_mode\":") + (config.pairs_per_graph > 1 ? "true" : "false") + ",";
    out += "\"stats\":{";
    for (std::size_t i = 0; i < stats.size(); ++i) {
        if (i) out += ",";
        const auto& [k, v] = stats[i];
        out += "\"" + k + "\":" + v;  // values are numeric or already quoted
    }
    out += "}}\n";
    return out;
}

namespace {

template <class F>
void for_each_replicate(const Config& c, F&& body) {
    if (c.serial) {
        for (std::uint32_t r = 0; r < c.replicates; ++r) body(r);
        return;
    }
#ifdef _OPENMP
    const int nt = c.threads > 0 ? c.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(c.replicates); ++r)
        body(static_cast<std::uint32_t>(r));
#else
    for (std::uint32_t r = 0; r < c.replicates; ++r) body(r);
#endif
}

std::string row(const char* fmt, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    return buf;
}

double safe_log(double x) { return std::log(std::max(2.0, x)); }

Result run_hop(const Config& c, bool ean) {
    Result res;
    res.csv_header = ean ? "replicate,pair,n,hop,standardized" : "replicate,n,hop,standardized";
    double center, sdev;
    if (ean) {
        const auto clt = theory::ean_hop_clt(c.d, c.schedule, c.n);
        center = clt.center;
        sdev = clt.variance > 0 ? std::sqrt(clt.variance) : 0.0;
        res.summary.put("center", clt.center);
        res.summary.put("variance", clt.variance);
        res.summary.put("sum_q", clt.sum_q);
    } else {
        const auto clt = theory::hop_clt_constants(c.d);
        center = clt.mean_coeff * std::log(static_cast<double>(c.n));
        sdev = std::sqrt(clt.var_coeff * std::log(static_cast<double>(c.n)));
        res.summary.put("mean_coeff", clt.mean_coeff);
        res.summary.put("var_coeff", clt.var_coeff);
    }
    struct Pair {
        std::uint32_t hop;       // exact graph distance from the codes
        std::uint32_t blocksum;  // tail block-sum N(u-tail) + N(v-tail)
    };
    std::vector<std::vector<Pair>> hops(c.replicates);
    for_each_replicate(c, [&](std::uint32_t r) {
        Rng rng(mix64(c.master_seed, r));
        GraphState g = new_graph(c.d, ean ? Model::ean : Model::ran, /*with_adjacency=*/false);
        grow(g, c.n, c.schedule, rng);
        auto& out = hops[r];
        out.reserve(c.pairs_per_graph);
        for (std::uint32_t p = 0; p < c.pairs_per_graph; ++p) {
            const std::size_t i = sample_uniform_active(g, rng);
            const std::size_t j = sample_uniform_active(g, rng);
            if (i == j) {
                out.push_back({0, 0});
                continue;
            }
            const Code a = g.clique_code(i), b = g.clique_code(j);
            const auto split = common_ancestor(a, b);
            out.push_back({static_cast<std::uint32_t>(code_distance(a, b)),
                           static_cast<std::uint32_t>(block_count(split.a_tail) +
                                                      block_count(split.b_tail))});
        }
    });
    std::vector<double> raw, blocksum, standardized;
    for (std::uint32_t r = 0; r < c.replicates; ++r) {
        for (std::uint32_t p = 0; p < hops[r].size(); ++p) {
            const double h = hops[r][p].hop;
            const double z = sdev > 0 ? (h - center) / sdev : 0.0;
            raw.push_back(h);
            blocksum.push_back(hops[r][p].blocksum);
            standardized.push_back(z);
            res.csv_rows.push_back(ean ? row("%u,%u,%llu,%u,%s", r, p,
                                             static_cast<unsigned long long>(c.n), hops[r][p].hop,
                                             format_double(z).c_str())
                                       : row("%u,%llu,%u,%s", r,
                                             static_cast<unsigned long long>(c.n), hops[r][p].hop,
                                             format_double(z).c_str()));
        }
    }
    res.summary.put("mean_hop", stats::mean(raw));
    res.summary.put("var_hop", stats::variance(raw));
    res.summary.put("mean_blocksum", stats::mean(blocksum));
    if (!ean) {
        res.summary.put("mean_over_logn", stats::mean(raw) / std::log(static_cast<double>(c.n)));
    } else {
        res.summary.put("mean_over_center", center > 0 ? stats::mean(raw) / center : 0.0);
    }
    if (sdev > 0) res.summary.put("ks", stats::ks_statistic(standardized));
    return res;
}

Result run_degree(const Config& c, bool ean) {
    Result res;
    res.csv_header = ean ? "replicate,n,vertices,sup_deviation" : "replicate,n,sup_deviation";
    std::vector<double> sup(c.replicates);
    std::vector<std::uint64_t> verts(c.replicates);
    for_each_replicate(c, [&](std::uint32_t r) {
        Rng rng(mix64(c.master_seed, r));
        GraphState g = new_graph(c.d, ean ? Model::ean : Model::ran, /*with_adjacency=*/false);
        grow(g, c.n, c.schedule, rng);
        sup[r] = metrics::sup_deviation(metrics::degree_histogram(g), c.d);
        verts[r] = g.vertex_count();
    });
    std::vector<double> envelopes;
    for (std::uint32_t r = 0; r < c.replicates; ++r) {
        if (ean) {
            res.csv_rows.push_back(row("%u,%llu,%llu,%s", r, static_cast<unsigned long long>(c.n),
                                       static_cast<unsigned long long>(verts[r]),
                                       format_double(sup[r]).c_str()));
            envelopes.push_back(std::sqrt(safe_log(static_cast<double>(verts[r])) /
                                          static_cast<double>(verts[r])));
        } else {
            res.csv_rows.push_back(row("%u,%llu,%s", r, static_cast<unsigned long long>(c.n),
                                       format_double(sup[r]).c_str()));
        }
    }
    res.summary.put("median_sup_deviation", stats::median(sup));
    res.summary.put("max_sup_deviation", *std::max_element(sup.begin(), sup.end()));
    if (ean) {
        res.summary.put("median_envelope", stats::median(envelopes));
    } else {
        res.summary.put("envelope", std::sqrt(safe_log(static_cast<double>(c.n)) /
                                              static_cast<double>(c.n)));
    }
    return res;
}

Result run_depth(const Config& c) {
    Result res;
    res.csv_header = "replicate,n,max_generation,clique_generation";
    std::vector<double> maxg(c.replicates), cliq(c.replicates);
    for_each_replicate(c, [&](std::uint32_t r) {
        Rng rng(mix64(c.master_seed, r));
        GraphState g = new_graph(c.d, Model::ran, /*with_adjacency=*/false);
        grow(g, c.n, c.schedule, rng);
        maxg[r] = g.max_generation;
        cliq[r] = g.clique_generation(sample_uniform_active(g, rng));
    });
    const double logn = std::log(static_cast<double>(c.n));
    for (std::uint32_t r = 0; r < c.replicates; ++r)
        res.csv_rows.push_back(row("%u,%llu,%u,%u", r, static_cast<unsigned long long>(c.n),
                                   static_cast<std::uint32_t>(maxg[r]),
                                   static_cast<std::uint32_t>(cliq[r])));
    res.summary.put("median_max_generation", stats::median(maxg));
    res.summary.put("median_max_over_logn", stats::median(maxg) / logn);
    res.summary.put("median_clique_generation", stats::median(cliq));
    res.summary.put("median_clique_over_logn", stats::median(cliq) / logn);
    res.summary.put("c_tilde", theory::c_tilde(c.d));
    res.summary.put("typical_coeff", (c.d + 1.0) / c.d);
    return res;
}

Result run_clustering(const Config& c) {
    Result res;
    res.csv_header = "replicate,n,direct_avg,formula_avg,abs_diff";
    std::vector<double> direct(c.replicates), formula(c.replicates);
    for_each_replicate(c, [&](std::uint32_t r) {
        Rng rng(mix64(c.master_seed, r));
        GraphState g = new_graph(c.d, Model::ran, /*with_adjacency=*/true);
        grow(g, c.n, c.schedule, rng);
        const auto rep = metrics::clustering(g);
        direct[r] = rep.direct_avg;
        formula[r] = rep.formula_avg;
    });
    double max_diff = 0.0;
    for (std::uint32_t r = 0; r < c.replicates; ++r) {
        const double diff = std::abs(direct[r] - formula[r]);
        max_diff = std::max(max_diff, diff);
        res.csv_rows.push_back(row("%u,%llu,%s,%s,%s", r, static_cast<unsigned long long>(c.n),
                                   format_double(direct[r]).c_str(),
                                   format_double(formula[r]).c_str(),
                                   format_double(diff).c_str()));
    }
    const auto series = metrics::theoretical_clustering(c.d);
    res.summary.put("median_direct", stats::median(direct));
    res.summary.put("max_direct_vs_formula", max_diff);
    res.summary.put("series_value", series.value);
    res.summary.put("series_tail_bound", series.tail_bound);
    return res;
}

Result run_dist_oracle(const Config& c) {
    Result res;
    res.csv_header = "replicate,n,pairs,agreements,max_abs_diff";
    struct Rep {
        std::uint64_t pairs = 0, agree = 0;
        std::uint32_t max_diff = 0;
        std::string witness;
    };
    std::vector<Rep> reps(c.replicates);
    const bool all_pairs = c.n <= 700;
    for_each_replicate(c, [&](std::uint32_t r) {
        Rng rng(mix64(c.master_seed, r));
        GraphState g = new_graph(c.d, Model::ran, /*with_adjacency=*/true);
        grow(g, c.n, c.schedule, rng);
        auto& rep = reps[r];
        auto compare = [&](std::uint32_t a, std::uint32_t b, std::uint32_t bfs) {
            const std::uint32_t cd =
                static_cast<std::uint32_t>(code_distance(g.code_of(a), g.code_of(b)));
            rep.pairs += 1;
            if (cd == bfs) {
                rep.agree += 1;
            } else {
                const std::uint32_t diff = cd > bfs ? cd - bfs : bfs - cd;
                rep.max_diff = std::max(rep.max_diff, diff);
                if (rep.witness.empty())
                    rep.witness = "u=" + to_string(g.code_of(a)) + " v=" + to_string(g.code_of(b)) +
                                  " code_dist=" + std::to_string(cd) +
                                  " bfs_dist=" + std::to_string(bfs);
            }
        };
        const std::uint32_t first = static_cast<std::uint32_t>(c.d) + 2;
        const std::uint32_t nv = static_cast<std::uint32_t>(g.vertex_count());
        if (all_pairs) {
            for (std::uint32_t a = first; a < nv; ++a) {
                // one BFS per source, reused for all later vertices
                const auto dist = metrics::bfs_distances(g, a);
                for (std::uint32_t b = a + 1; b < nv; ++b) compare(a, b, dist[b]);
            }
        } else {
            for (std::uint32_t p = 0; p < c.pairs_per_graph; ++p) {
                const std::uint32_t a = first + static_cast<std::uint32_t>(rng.below(nv - first));
                const std::uint32_t b = first + static_cast<std::uint32_t>(rng.below(nv - first));
                compare(a, b, metrics::bfs_distance(g, a, b));
            }
        }
    });
    std::uint64_t pairs = 0, agree = 0;
    std::uint32_t max_diff = 0;
    std::string witness;
    for (std::uint32_t r = 0; r < c.replicates; ++r) {
        const auto& rep = reps[r];
        res.csv_rows.push_back(row("%u,%llu,%llu,%llu,%u", r, static_cast<unsigned long long>(c.n),
                                   static_cast<unsigned long long>(rep.pairs),
                                   static_cast<unsigned long long>(rep.agree), rep.max_diff));
        pairs += rep.pairs;
        agree += rep.agree;
        max_diff = std::max(max_diff, rep.max_diff);
        if (witness.empty() && !rep.witness.empty())
            witness = rep.witness + " (replicate " + std::to_string(r) + ")";
    }
    res.summary.put_int("pairs", pairs);
    res.summary.put_int("agreements", agree);
    res.summary.put_int("max_abs_diff", max_diff);
    if (!witness.empty()) res.summary.put_raw("first_witness", witness);
    res.witness_failure = agree != pairs;
    return res;
}

}  // namespace

Result run_experiment(const Config& config) {
    Result res;
    switch (config.kind) {
        case Kind::hopclt: res = run_hop(config, false); break;
        case Kind::ean_hop: res = run_hop(config, true); break;
        case Kind::degree: res = run_degree(config, false); break;
        case Kind::ean_degree: res = run_degree(config, true); break;
        case Kind::depth: res = run_depth(config); break;
        case Kind::clustering: res = run_clustering(config); break;
        case Kind::dist_oracle: res = run_dist_oracle(config); break;
    }
    res.summary.kind = kind_name(config.kind);
    res.summary.config = config;
    return res;
}

void write_result(const Result& result, const std::string& prefix) {
    {
        std::ofstream out(prefix + ".csv");
        if (!out) throw std::runtime_error("cannot write " + prefix + ".csv");
        out << result.csv_header << '\n';
        for (const auto& r : result.csv_rows) out << r << '\n';
    }
    std::ofstream out(prefix + ".summary.json");
    if (!out) throw std::runtime_error("cannot write " + prefix + ".summary.json");
    out << result.summary.to_json();
}

}  // namespace experiments
}  // namespace ran
