#include "ran/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ran/code.hpp"
#include "ran/stats.hpp"
#include "ran/theory.hpp"

using namespace ran;
using namespace ran::metrics;

namespace {

GraphState grown(int d, std::uint64_t n, std::uint64_t seed, bool adjacency = true) {
    Rng rng(seed);
    GraphState g = new_graph(d, Model::ran, adjacency);
    grow(g, n, QSchedule::constant(1.0), rng);
    return g;
}

std::size_t fill_by_code(GraphState& g, const std::string& code) {
    for (std::size_t i = 0; i < g.active_count(); ++i)
        if (to_string(g.clique_code(i)) == code) return step_at(g, i);
    FAIL("no active clique with code ", code);
    return 0;
}

// a fixed hand-built realization used as a BFS reference
GraphState reference_graph() {
    GraphState g = new_graph(2, Model::ran);
    for (const char* c : {"1", "3", "13", "31", "33", "331", "132", "3312"}) fill_by_code(g, c);
    return g;
}

std::uint32_t vertex_by_code(const GraphState& g, const std::string& code) {
    for (std::uint32_t v = static_cast<std::uint32_t>(g.d) + 2; v < g.vertex_count(); ++v)
        if (to_string(g.code_of(v)) == code) return v;
    FAIL("no vertex with code ", code);
    return 0;
}

}  // namespace

TEST_CASE("degree histogram") {
    GraphState g = new_graph(2, Model::ran);
    auto h = degree_histogram(g);
    CHECK(h.total == 4);
    REQUIRE(h.counts.size() == 1);
    CHECK(h.counts.at(3) == 4);

    Rng rng(3);
    step_ran(g, rng);
    h = degree_histogram(g);
    CHECK(h.counts.at(3) == 2);
    CHECK(h.counts.at(4) == 3);

    for (std::uint64_t n : {10ULL, 200ULL}) {
        GraphState gg = grown(2, n, 7);
        auto hh = degree_histogram(gg);
        std::uint64_t sum = 0;
        for (auto& [k, c] : hh.counts) sum += c;
        CHECK(sum == n + 4);
    }
}

TEST_CASE("theoretical degree law") {
    CHECK(theoretical_pk(2, 3) == doctest::Approx(0.4).epsilon(1e-13));
    CHECK(theoretical_pk(2, 5) == doctest::Approx(4.0 / 35.0).epsilon(1e-13));
    // closed form at d=2: 24/(k(k+1)(k+2))
    for (std::uint64_t k : {3ULL, 10ULL, 100ULL, 5000ULL})
        CHECK(theoretical_pk(2, k) ==
              doctest::Approx(24.0 / (static_cast<double>(k) * (k + 1) * (k + 2)))
                  .epsilon(1e-12));
    CHECK_THROWS_AS(theoretical_pk(2, 2), std::invalid_argument);
}

TEST_CASE("degree law recursion residuals stay below 1e-12") {
    for (int d : {2, 3, 4, 5}) {
        double worst = 0.0;
        for (std::uint64_t k = d + 2; k <= 10000; ++k) {
            const double ak = static_cast<double>(cliques_of_degree(d, k));
            const double ak1 = static_cast<double>(cliques_of_degree(d, k - 1));
            const double lhs = theoretical_pk(d, k) * (d + ak);
            const double rhs = theoretical_pk(d, k - 1) * ak1;
            worst = std::max(worst, std::abs(lhs - rhs) / lhs);
        }
        CHECK(worst < 1e-12);
        // boundary case k = d+1: p_{d+1} (d + A_{d+1}) = d
        const double a0 = static_cast<double>(cliques_of_degree(d, d + 1));
        CHECK(theoretical_pk(d, d + 1) * (d + a0) == doctest::Approx(d).epsilon(1e-13));
    }
}

TEST_CASE("power-law slope of the degree law") {
    for (int d : {2, 3}) {
        long double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::uint64_t cnt = 0;
        for (std::uint64_t k = 1000; k <= 10000; ++k) {
            const long double x = std::log(static_cast<double>(k));
            const long double y = std::log(theoretical_pk(d, k));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++cnt;
        }
        const double slope =
            static_cast<double>((cnt * sxy - sx * sy) / (cnt * sxx - sx * sx));
        CHECK(std::abs(slope + (2.0 * d - 1) / (d - 1)) < 0.01);
    }
}

TEST_CASE("sup deviation") {
    // initial graph: all mass on degree 3, p_3 = 0.4
    GraphState g = new_graph(2, Model::ran);
    CHECK(sup_deviation(degree_histogram(g), 2) == doctest::Approx(0.6).epsilon(1e-12));
    // a histogram proportional to p_k has (numerically) no deviation
    DegreeHistogram h;
    h.total = 1000000000ULL;
    for (std::uint32_t k = 3; k <= 400; ++k)
        h.counts[k] =
            static_cast<std::uint64_t>(theoretical_pk(2, k) * static_cast<double>(h.total));
    CHECK(sup_deviation(h, 2) < 2e-3);
    // larger graphs sit closer to the limit law
    const double far = sup_deviation(degree_histogram(grown(2, 100, 5, false)), 2);
    const double near = sup_deviation(degree_histogram(grown(2, 20000, 5, false)), 2);
    CHECK(near < far);
}

TEST_CASE("clustering coefficients") {
    // initial K4: every vertex has a complete neighborhood
    GraphState g0 = new_graph(2, Model::ran);
    auto rep0 = clustering(g0);
    CHECK(rep0.direct_avg == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep0.formula_avg == doctest::Approx(1.0).epsilon(1e-12));
    // the per-degree formula is deterministic: the two averages agree exactly
    for (int d : {2, 3}) {
        GraphState g = grown(d, 2000, 11 + d);
        auto rep = clustering(g);
        CHECK(std::abs(rep.direct_avg - rep.formula_avg) < 1e-9);
        CHECK(rep.direct_avg > 0.5);
        CHECK(rep.direct_avg < 1.0);
    }
}

TEST_CASE("clustering series") {
    const auto cl2 = theoretical_clustering(2);
    CHECK(cl2.value == doctest::Approx(0.7685861464).epsilon(1e-8));
    CHECK(cl2.tail_bound < 1e-15);
    CHECK(theoretical_clustering(3).value == doctest::Approx(0.8243614026).epsilon(1e-8));
    CHECK(theoretical_clustering(4).value == doctest::Approx(6.0 / 7.0).epsilon(1e-8));
    CHECK(theoretical_clustering(5).value == doctest::Approx(0.8789640727).epsilon(1e-8));
    // truncating earlier only loses the tail
    const auto cl2s = theoretical_clustering(2, 100000);
    CHECK(std::abs(cl2s.value - cl2.value) < cl2s.tail_bound);
}

TEST_CASE("BFS distances on the hand-built reference graph") {
    GraphState g = reference_graph();
    CHECK(g.vertex_count() == 12);
    const std::uint32_t u = vertex_by_code(g, "132");
    const std::uint32_t v = vertex_by_code(g, "3312");
    CHECK(bfs_distance(g, u, v) == 3);
    CHECK(code_distance(g.code_of(u), g.code_of(v)) == 3);
    CHECK(bfs_distance(g, u, u) == 0);
    // adjacent pair: "3312" was born inside clique 3312, whose member via T_3 is "33"
    const std::uint32_t w = vertex_by_code(g, "33");
    CHECK(bfs_distance(g, v, w) == 1);
}

TEST_CASE("flooding and diameter") {
    GraphState g0 = new_graph(2, Model::ran);
    CHECK(flooding(g0, 0) == 1);
    CHECK(diameter(g0) == 1);

    GraphState g = grown(2, 300, 17);
    std::uint32_t best = 0;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) best = std::max(best, flooding(g, v));
    const std::uint32_t diam_par = diameter(g, 20000, true);
    const std::uint32_t diam_ser = diameter(g, 20000, false);
    CHECK(diam_par == best);
    CHECK(diam_ser == best);
    CHECK(best >= flooding(g, 42));
    CHECK_THROWS_AS(diameter(g, 50), std::length_error);
}

TEST_CASE("diameter growth at moderate size stays in the coarse band") {
    GraphState g = grown(2, 10000, 23);
    const double ratio = diameter(g) / std::log(10000.0);
    CHECK(ratio >= 1.0);
    CHECK(ratio <= 2.3);
}

TEST_CASE("clique-pair distance vs member-vertex distance differs by at most 2") {
    GraphState g = grown(2, 500, 29);
    Rng rng(31);
    for (int it = 0; it < 300; ++it) {
        const std::size_t i = sample_uniform_active(g, rng);
        const std::size_t j = sample_uniform_active(g, rng);
        if (i == j) continue;
        const std::size_t clique_dist = code_distance(g.clique_code(i), g.clique_code(j));
        const std::uint32_t a = g.members(i)[rng.below(3)];
        const std::uint32_t b = g.members(j)[rng.below(3)];
        const std::uint32_t hop = bfs_distance(g, a, b);
        CHECK(hop + 2 >= clique_dist);
        CHECK(hop <= clique_dist + 2);
    }
}

TEST_CASE("csv writers emit the pinned headers") {
    const auto h = degree_histogram(grown(2, 50, 37, false));
    write_degree_table(h, 2, "/tmp/ran_deg.csv");
    std::ifstream in("/tmp/ran_deg.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "k,empirical,theoretical,abs_diff");

    write_distance_samples({{0, 1, 2, 0, 3, 3}}, "/tmp/ran_dist.csv");
    std::ifstream din("/tmp/ran_dist.csv");
    std::getline(din, line);
    CHECK(line == "pair_id,gen_u,gen_v,ancestor_gen,code_dist,bfs_dist");
    std::getline(din, line);
    CHECK(line == "0,1,2,0,3,3");
}

TEST_CASE("code distance equals BFS on EAN graphs and for root pairs") {
    // the derivation is model-independent: EAN growth only changes which
    // cliques fill, not the adjacency rule
    Rng rng(43);
    GraphState g = new_graph(2, Model::ean);
    grow(g, 400, QSchedule::harmonic(0.5), rng);
    REQUIRE(g.added > 100);
    const std::uint32_t first = 4;
    const std::uint32_t nv = static_cast<std::uint32_t>(g.vertex_count());
    std::vector<Code> codes(nv);
    for (std::uint32_t v = first; v < nv; ++v) codes[v] = g.code_of(v);
    std::size_t bad = 0;
    for (std::uint32_t a = first; a < nv; ++a) {
        const auto dist = bfs_distances(g, a);
        for (std::uint32_t b = a + 1; b < nv; ++b)
            bad += code_distance(codes[a], codes[b]) != dist[b];
    }
    CHECK(bad == 0);
    // the root carries the empty code; the ancestor-case formula stays exact
    const auto from_root = bfs_distances(g, 0);
    for (std::uint32_t b = first; b < nv; ++b)
        CHECK(code_distance(Code({}, 2), codes[b]) == from_root[b]);
}

TEST_CASE("code distance equals BFS at d=4") {
    Rng rng(47);
    GraphState g = new_graph(4, Model::ran);
    grow(g, 120, QSchedule::constant(1.0), rng);
    const std::uint32_t first = 6;
    const std::uint32_t nv = static_cast<std::uint32_t>(g.vertex_count());
    std::size_t bad = 0;
    for (std::uint32_t a = first; a < nv; ++a) {
        const auto dist = bfs_distances(g, a);
        for (std::uint32_t b = a + 1; b < nv; ++b)
            bad += code_distance(g.code_of(a), g.code_of(b)) != dist[b];
    }
    CHECK(bad == 0);
}
