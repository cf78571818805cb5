// Command-line front end: generation, measurement, constants, experiments.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "ran/code.hpp"
#include "ran/experiments.hpp"
#include "ran/graph.hpp"
#include "ran/metrics.hpp"
#include "ran/rng.hpp"
#include "ran/theory.hpp"

namespace {

using namespace ran;

Model parse_model(const std::string& m) {
    if (m == "ran") return Model::ran;
    if (m == "ean") return Model::ean;
    throw CLI::ValidationError("--model", "must be 'ran' or 'ean'");
}

struct GrowArgs {
    std::string model = "ran";
    int dim = 2;
    std::uint64_t steps = 100;
    std::uint64_t seed = 1;
    std::string q = "const:1";
};

void add_grow_options(CLI::App* cmd, GrowArgs& a) {
    cmd->add_option("--model", a.model, "graph model: ran | ean")->check(CLI::IsMember({"ran", "ean"}));
    cmd->add_option("--dim", a.dim, "dimension d >= 2")->check(CLI::Range(2, 40));
    cmd->add_option("--steps", a.steps, "growth steps n");
    cmd->add_option("--seed", a.seed, "RNG seed");
    cmd->add_option("--q", a.q, "EAN occupation schedule: const:Q | harmonic:C | power:C,G");
}

GraphState grow_from_args(const GrowArgs& a, bool with_adjacency) {
    GraphState g = new_graph(a.dim, parse_model(a.model), with_adjacency);
    Rng rng(a.seed);
    grow(g, a.steps, QSchedule::parse(a.q), rng);
    return g;
}

std::string graph_summary_json(const GraphState& g, const GrowArgs& a) {
    std::uint64_t edges = 0;
    if (g.with_adjacency) {
        for (const auto& nb : g.adjacency) edges += nb.size();
        edges /= 2;
    }
    std::string out = "{";
    out += "\"model\":\"" + a.model + "\",";
    out += "\"d\":" + std::to_string(g.d) + ",";
    out += "\"steps\":" + std::to_string(g.step) + ",";
    out += "\"seed\":" + std::to_string(a.seed) + ",";
    out += "\"vertices\":" + std::to_string(g.vertex_count()) + ",";
    out += "\"edges\":" + std::to_string(edges) + ",";
    out += "\"active_cliques\":" + std::to_string(g.active_count()) + ",";
    out += "\"added_vertices\":" + std::to_string(g.added) + ",";
    out += "\"max_generation\":" + std::to_string(g.max_generation) + "}\n";
    return out;
}

int cmd_generate(const GrowArgs& a, const std::string& out_path) {
    GraphState g = grow_from_args(a, true);
    if (!out_path.empty()) export_graph(g, out_path);
    std::fputs(graph_summary_json(g, a).c_str(), stdout);
    return 0;
}

int cmd_degrees(const GrowArgs& a, const std::string& out_path) {
    GraphState g = grow_from_args(a, false);
    const auto hist = metrics::degree_histogram(g);
    if (!out_path.empty()) metrics::write_degree_table(hist, g.d, out_path);
    std::string out = "{";
    out += "\"d\":" + std::to_string(g.d) + ",";
    out += "\"vertices\":" + std::to_string(hist.total) + ",";
    out += "\"sup_deviation\":" + experiments::format_double(metrics::sup_deviation(hist, g.d));
    out += "}\n";
    std::fputs(out.c_str(), stdout);
    return 0;
}

int cmd_distances(const GrowArgs& a, std::uint64_t pairs, bool all_pairs,
                  const std::string& out_path) {
    GraphState g = grow_from_args(a, true);
    const std::uint32_t first = static_cast<std::uint32_t>(g.d) + 2;
    const std::uint32_t nv = static_cast<std::uint32_t>(g.vertex_count());
    if (nv <= first) {
        std::fputs("{\"pairs\":0,\"agreements\":0}\n", stdout);
        return 0;
    }
    Rng rng(mix64(a.seed, 0x9a1f));
    std::vector<metrics::DistanceSample> rows;
    std::uint64_t agree = 0;
    auto add_pair = [&](std::uint32_t u, std::uint32_t v, std::uint64_t id) {
        const Code cu = g.code_of(u), cv = g.code_of(v);
        const auto split = common_ancestor(cu, cv);
        metrics::DistanceSample s;
        s.pair_id = id;
        s.gen_u = static_cast<std::uint32_t>(cu.size());
        s.gen_v = static_cast<std::uint32_t>(cv.size());
        s.ancestor_gen = static_cast<std::uint32_t>(split.prefix.size());
        s.code_dist = static_cast<std::uint32_t>(code_distance(cu, cv));
        s.bfs_dist = metrics::bfs_distance(g, u, v);
        agree += s.code_dist == s.bfs_dist;
        rows.push_back(s);
    };
    if (all_pairs) {
        std::uint64_t id = 0;
        for (std::uint32_t u = first; u < nv; ++u)
            for (std::uint32_t v = u + 1; v < nv; ++v) add_pair(u, v, id++);
    } else {
        for (std::uint64_t id = 0; id < pairs; ++id)
            add_pair(first + static_cast<std::uint32_t>(rng.below(nv - first)),
                     first + static_cast<std::uint32_t>(rng.below(nv - first)), id);
    }
    if (!out_path.empty()) metrics::write_distance_samples(rows, out_path);
    std::string out = "{";
    out += "\"pairs\":" + std::to_string(rows.size()) + ",";
    out += "\"agreements\":" + std::to_string(agree) + "}\n";
    std::fputs(out.c_str(), stdout);
    return agree == rows.size() ? 0 : 1;
}

int cmd_constants(int dim, const std::string& out_path) {
    const auto b = theory::solve_diameter(dim);
    auto f = experiments::format_double;
    std::string out = "{";
    out += "\"d\":" + std::to_string(b.d) + ",";
    out += "\"mu\":" + f(b.mu) + ",";
    out += "\"sigma2\":" + f(b.sigma2) + ",";
    out += "\"c_tilde\":" + f(b.c_tilde) + ",";
    out += "\"alpha\":" + f(b.alpha) + ",";
    out += "\"beta\":" + f(b.beta) + ",";
    out += "\"diam_const\":" + f(b.diam_const) + ",";
    out += "\"flood_const\":" + f(b.flood_const) + ",";
    out += "\"hop_mean_coeff\":" + f(b.hop_mean_coeff) + ",";
    out += "\"hop_var_coeff\":" + f(b.hop_var_coeff) + "}\n";
    if (!out_path.empty()) {
        std::ofstream file(out_path);
        if (!file) throw std::runtime_error("cannot write " + out_path);
        file << out;
    } else {
        std::fputs(out.c_str(), stdout);
    }
    return 0;
}

int cmd_experiment(const experiments::Config& cfg) {
    const auto res = experiments::run_experiment(cfg);
    if (!cfg.out_prefix.empty()) experiments::write_result(res, cfg.out_prefix);
    std::fputs(res.summary.to_json().c_str(), stdout);
    return res.witness_failure ? 1 : 0;
}

int cmd_export(const std::string& in_prefix, const std::string& out_prefix) {
    export_loaded(import_graph(in_prefix), out_prefix);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random and evolving Apollonian network toolkit"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    GrowArgs gen_args, deg_args, dist_args;
    std::string gen_out, deg_out, dist_out;
    std::uint64_t dist_pairs = 1000;
    bool dist_all = false;

    auto* gen = app.add_subcommand("generate", "grow a graph and export vertex/edge tables");
    add_grow_options(gen, gen_args);
    gen->add_option("--out", gen_out, "output prefix (<out>.vertices.csv, <out>.edges.csv)");

    auto* deg = app.add_subcommand("degrees", "degree histogram vs the limiting law");
    add_grow_options(deg, deg_args);
    deg->add_option("--out", deg_out, "degree table CSV path");

    auto* dist = app.add_subcommand("distances", "code-based vs BFS distances on sampled pairs");
    add_grow_options(dist, dist_args);
    dist->add_option("--pairs", dist_pairs, "number of sampled vertex pairs");
    dist->add_flag("--all-pairs", dist_all, "check every pair of coded vertices");
    dist->add_option("--out", dist_out, "distance sample CSV path");

    int const_dim = 2;
    std::string const_out;
    auto* cons = app.add_subcommand("constants", "per-dimension theory constants as JSON");
    cons->add_option("--dim", const_dim, "dimension d >= 2")->check(CLI::Range(2, 40));
    cons->add_option("--out", const_out, "write JSON here instead of stdout");

    experiments::Config cfg;
    std::string exp_kind = "hopclt", exp_q = "harmonic:0.5";
    auto* exp = app.add_subcommand("experiment", "Monte Carlo experiment harness");
    exp->add_option("--kind", exp_kind,
                    "hopclt | degree | depth | clustering | ean_hop | ean_degree | dist_oracle")
        ->required();
    exp->add_option("--dim", cfg.d, "dimension d >= 2")->check(CLI::Range(2, 40));
    exp->add_option("--steps", cfg.n, "growth steps per replicate");
    exp->add_option("--replicates", cfg.replicates, "independent replicates");
    exp->add_option("--seed", cfg.master_seed, "master seed; replicate r uses mix64(seed, r)");
    exp->add_option("--q", exp_q, "EAN occupation schedule");
    exp->add_option("--pairs-per-graph", cfg.pairs_per_graph,
                    "samples per grown graph (>1 is the documented fast mode)");
    exp->add_option("--threads", cfg.threads, "worker threads (0 = all)");
    exp->add_flag("--serial", cfg.serial, "single-threaded reference path");
    exp->add_option("--out", cfg.out_prefix, "output prefix (<out>.csv, <out>.summary.json)");

    std::string exp_in, exp_out;
    auto* ex = app.add_subcommand("export", "re-emit a generated graph canonically");
    ex->add_option("--in", exp_in, "input prefix")->required();
    ex->add_option("--out", exp_out, "output prefix")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            app.exit(e);
            return 0;
        }
        app.exit(e);  // prints usage to stderr
        return 2;
    }

    try {
        if (gen->parsed()) return cmd_generate(gen_args, gen_out);
        if (deg->parsed()) return cmd_degrees(deg_args, deg_out);
        if (dist->parsed()) return cmd_distances(dist_args, dist_pairs, dist_all, dist_out);
        if (cons->parsed()) return cmd_constants(const_dim, const_out);
        if (exp->parsed()) {
            cfg.kind = experiments::parse_kind(exp_kind);
            cfg.schedule = QSchedule::parse(exp_q);
            return cmd_experiment(cfg);
        }
        if (ex->parsed()) return cmd_export(exp_in, exp_out);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
