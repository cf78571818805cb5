#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ran/graph.hpp"

namespace ran {
namespace metrics {

struct DegreeHistogram {
    std::map<std::uint32_t, std::uint64_t> counts;
    std::uint64_t total = 0;
};
DegreeHistogram degree_histogram(const GraphState& g);

// Limiting RAN degree probability p_k; evaluated
// through long-double log-gamma so the recursion p_k (d + A_k) =
// p_{k-1} A_{k-1} + d 1{k=d+1} holds to ~1e-13 relative. k must exceed d.
double theoretical_pk(int d, std::uint64_t k);

// sup over k of |empirical - theoretical|, restricted to k where either side
// has mass above 1e-15.
double sup_deviation(const DegreeHistogram& hist, int d);

struct ClusteringReport {
    double direct_avg;    // mean over vertices of (edges among neighbors) / C(deg,2)
    double formula_avg;   // sum_k p^_k d(2k-d-1)/(k(k-1))
};
ClusteringReport clustering(const GraphState& g);

struct ClusteringSeries {
    double value;
    double tail_bound;  // envelope for the truncated part
};
// Cl_d = sum_{k>=d+1} d(2k-d-1)/(k(k-1)) p_k, truncated at k_max.
ClusteringSeries theoretical_clustering(int d, std::uint64_t k_max = 10'000'000);

std::uint32_t bfs_distance(const GraphState& g, std::uint32_t a, std::uint32_t b);
// Distances from one source to every vertex (one BFS pass).
std::vector<std::uint32_t> bfs_distances(const GraphState& g, std::uint32_t a);
std::uint32_t flooding(const GraphState& g, std::uint32_t a);
// All-pairs via one BFS per source (OpenMP across sources); refuses graphs
// beyond max_vertices instead of approximating.
std::uint32_t diameter(const GraphState& g, std::size_t max_vertices = 20'000,
                       bool parallel = true);

// Degree table CSV: k,empirical,theoretical,abs_diff
void write_degree_table(const DegreeHistogram& hist, int d, const std::string& path);

struct DistanceSample {
    std::uint64_t pair_id;
    std::uint32_t gen_u, gen_v, ancestor_gen;
    std::uint32_t code_dist, bfs_dist;
};
// Distance sample CSV: pair_id,gen_u,gen_v,ancestor_gen,code_dist,bfs_dist
void write_distance_samples(const std::vector<DistanceSample>& rows, const std::string& path);

}  // namespace metrics
}  // namespace ran
