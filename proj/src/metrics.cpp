#include "ran/metrics.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace ran {
namespace metrics {

DegreeHistogram degree_histogram(const GraphState& g) {
    DegreeHistogram h;
    for (const auto& v : g.vertices) h.counts[v.degree] += 1;
    h.total = g.vertex_count();
    return h;
}

double theoretical_pk(int d, std::uint64_t k) {
    if (d < 2) throw std::invalid_argument("dimension must be >= 2");
    if (k <= static_cast<std::uint64_t>(d)) throw std::invalid_argument("p_k defined for k >= d+1");
    const long double a = 2.0L / (d - 1);
    const long double b = (d + 2.0L) / (d - 1);
    const long double kk = static_cast<long double>(k);
    const long double lg = lgammal(kk - d + a) - lgammal(1.0L + a) + lgammal(2.0L + b) -
                           lgammal(kk + 1.0L - d + b);
    return static_cast<double>(static_cast<long double>(d) / (2 * d + 1) * expl(lg));
}

double sup_deviation(const DegreeHistogram& hist, int d) {
    const double n = static_cast<double>(hist.total);
    std::uint64_t k_hi = hist.counts.empty() ? 0 : hist.counts.rbegin()->first;
    double sup = 0.0;
    // product recursion reproduces theoretical_pk to ~1e-18 relative and
    // avoids one lgamma pair per k
    const long double a = 2.0L / (d - 1);
    const long double b = (d + 2.0L) / (d - 1);
    long double pk = static_cast<long double>(d) / (2 * d + 1);
    for (std::uint64_t k = d + 1;; ++k) {
        if (k > static_cast<std::uint64_t>(d) + 1)
            pk *= (static_cast<long double>(k) - 1 - d + a) / (static_cast<long double>(k) - d + b);
        const bool empirical_left = k <= k_hi;
        if (pk < 1e-15L && !empirical_left) break;
        double emp = 0.0;
        auto it = hist.counts.find(static_cast<std::uint32_t>(k));
        if (it != hist.counts.end()) emp = static_cast<double>(it->second) / n;
        if (pk >= 1e-15L || emp > 0.0)
            sup = std::max(sup, std::abs(emp - static_cast<double>(pk)));
    }
    return sup;
}

ClusteringReport clustering(const GraphState& g) {
    if (!g.with_adjacency)
        throw std::runtime_error("clustering requires a graph grown with adjacency tracking");
    const std::size_t n = g.vertex_count();
    std::vector<std::uint8_t> mark(n, 0);
    long double direct = 0.0L;
    for (std::uint32_t v = 0; v < n; ++v) {
        const auto& nb = g.adjacency[v];
        const std::uint64_t deg = nb.size();
        if (deg < 2) continue;  // cannot occur after step 0
        for (auto u : nb) mark[u] = 1;
        std::uint64_t twice_links = 0;
        for (auto u : nb)
            for (auto w : g.adjacency[u]) twice_links += mark[w];
        for (auto u : nb) mark[u] = 0;
        direct += static_cast<long double>(twice_links) /
                  (static_cast<long double>(deg) * (deg - 1));
    }
    const auto hist = degree_histogram(g);
    long double formula = 0.0L;
    for (const auto& [k, cnt] : hist.counts) {
        if (k < 2) continue;
        const long double coeff = static_cast<long double>(g.d) * (2.0L * k - g.d - 1) /
                                  (static_cast<long double>(k) * (k - 1));
        formula += coeff * cnt;
    }
    return {static_cast<double>(direct / n), static_cast<double>(formula / n)};
}

ClusteringSeries theoretical_clustering(int d, std::uint64_t k_max) {
    if (d < 2) throw std::invalid_argument("dimension must be >= 2");
    // run the p_k product recursion in long double; one lgamma only for the seed
    const long double a = 2.0L / (d - 1);
    const long double b = (d + 2.0L) / (d - 1);
    long double pk = static_cast<long double>(d) / (2 * d + 1);  // p_{d+1}
    long double sum = 0.0L;
    long double term = 0.0L;
    for (std::uint64_t k = d + 1; k <= k_max; ++k) {
        if (k > static_cast<std::uint64_t>(d) + 1)
            pk *= (static_cast<long double>(k) - 1 - d + a) / (static_cast<long double>(k) - d + b);
        term = static_cast<long double>(d) * (2.0L * k - d - 1) /
               (static_cast<long double>(k) * (k - 1)) * pk;
        sum += term;
    }
    // terms decay like k^-(tau+1); bound the tail by the integral comparison
    const double tau = (2.0 * d - 1) / (d - 1);
    const double tail = 2.0 * static_cast<double>(term) * static_cast<double>(k_max) / tau;
    return {static_cast<double>(sum), tail};
}

namespace {

std::uint32_t bfs_fill(const GraphState& g, std::uint32_t a, std::vector<std::int32_t>& dist,
                       std::vector<std::uint32_t>& queue, std::int32_t stop_at = -1) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    queue.push_back(a);
    dist[a] = 0;
    std::uint32_t ecc = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t x = queue[head];
        if (stop_at >= 0 && x == static_cast<std::uint32_t>(stop_at))
            return static_cast<std::uint32_t>(dist[x]);
        for (std::uint32_t y : g.adjacency[x]) {
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                ecc = std::max(ecc, static_cast<std::uint32_t>(dist[y]));
                queue.push_back(y);
            }
        }
    }
    return ecc;
}

}  // namespace

std::uint32_t bfs_distance(const GraphState& g, std::uint32_t a, std::uint32_t b) {
    if (!g.with_adjacency)
        throw std::runtime_error("BFS requires a graph grown with adjacency tracking");
    if (a >= g.vertex_count() || b >= g.vertex_count())
        throw std::invalid_argument("vertex id out of range");
    if (a == b) return 0;
    std::vector<std::int32_t> dist(g.vertex_count());
    std::vector<std::uint32_t> queue;
    queue.reserve(g.vertex_count());
    return bfs_fill(g, a, dist, queue, static_cast<std::int32_t>(b));
}

std::vector<std::uint32_t> bfs_distances(const GraphState& g, std::uint32_t a) {
    if (!g.with_adjacency)
        throw std::runtime_error("BFS requires a graph grown with adjacency tracking");
    if (a >= g.vertex_count()) throw std::invalid_argument("vertex id out of range");
    std::vector<std::int32_t> dist(g.vertex_count());
    std::vector<std::uint32_t> queue;
    queue.reserve(g.vertex_count());
    bfs_fill(g, a, dist, queue);
    return std::vector<std::uint32_t>(dist.begin(), dist.end());
}

std::uint32_t flooding(const GraphState& g, std::uint32_t a) {
    if (!g.with_adjacency)
        throw std::runtime_error("BFS requires a graph grown with adjacency tracking");
    std::vector<std::int32_t> dist(g.vertex_count());
    std::vector<std::uint32_t> queue;
    queue.reserve(g.vertex_count());
    return bfs_fill(g, a, dist, queue);
}

std::uint32_t diameter(const GraphState& g, std::size_t max_vertices, bool parallel) {
    if (!g.with_adjacency)
        throw std::runtime_error("BFS requires a graph grown with adjacency tracking");
    const std::size_t n = g.vertex_count();
    if (n > max_vertices)
        throw std::length_error("diameter refused: " + std::to_string(n) +
                                " vertices exceed the exact all-pairs guard of " +
                                std::to_string(max_vertices));
    std::uint32_t best = 0;
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel
        {
            std::vector<std::int32_t> dist(n);
            std::vector<std::uint32_t> queue;
            queue.reserve(n);
            std::uint32_t local = 0;
#pragma omp for schedule(dynamic, 16)
            for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v)
                local = std::max(local, bfs_fill(g, static_cast<std::uint32_t>(v), dist, queue));
#pragma omp critical
            best = std::max(best, local);
        }
        return best;
    }
#else
    (void)parallel;
#endif
    std::vector<std::int32_t> dist(n);
    std::vector<std::uint32_t> queue;
    queue.reserve(n);
    for (std::uint32_t v = 0; v < n; ++v) best = std::max(best, bfs_fill(g, v, dist, queue));
    return best;
}

void write_degree_table(const DegreeHistogram& hist, int d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "k,empirical,theoretical,abs_diff\n";
    char buf[160];
    const double n = static_cast<double>(hist.total);
    for (const auto& [k, cnt] : hist.counts) {
        const double emp = static_cast<double>(cnt) / n;
        const double pk = k > static_cast<std::uint32_t>(d) ? theoretical_pk(d, k) : 0.0;
        std::snprintf(buf, sizeof buf, "%u,%.12g,%.12g,%.12g\n", k, emp, pk, std::abs(emp - pk));
        out << buf;
    }
}

void write_distance_samples(const std::vector<DistanceSample>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "pair_id,gen_u,gen_v,ancestor_gen,code_dist,bfs_dist\n";
    for (const auto& r : rows)
        out << r.pair_id << ',' << r.gen_u << ',' << r.gen_v << ',' << r.ancestor_gen << ','
            << r.code_dist << ',' << r.bfs_dist << '\n';
}

}  // namespace metrics
}  // namespace ran
