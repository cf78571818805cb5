#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ran/code.hpp"
#include "ran/rng.hpp"

namespace ran {

enum class Model { ran, ean };

// Occupation-parameter sequence {q_n} for EAN growth, n >= 1.
struct QSchedule {
    enum class Kind { constant, harmonic, power, custom };
    Kind kind = Kind::constant;
    double q = 1.0;       // constant
    double c = 1.0;       // harmonic q_n = min(1, c/n); power q_n = min(1, c n^-gamma)
    double gamma = 1.0;   // power
    std::vector<double> values;  // custom, 1-based via values[n-1]

    double at(std::uint64_t n) const;

    static QSchedule constant(double q);
    static QSchedule harmonic(double c);
    static QSchedule power(double c, double gamma);
    static QSchedule custom(std::vector<double> values);
    // "const:0.5", "harmonic:0.5", "power:1,0.5"
    static QSchedule parse(const std::string& text);
    std::string describe() const;
};

struct VertexRecord {
    std::uint32_t mother = 0;       // vertex whose code is this code minus its last symbol
    std::uint32_t generation = 0;   // == code length (0 for root and corners)
    std::uint32_t degree = 0;
    std::uint32_t birth_step = 0;
    Symbol symbol = 0;              // last code symbol (0 for initial vertices)
};

// The evolving network. Vertex ids: 0 = root O (empty code), 1..d+1 = corner
// sentinels (no code), then coded vertices in birth order. Active cliques
// live in parallel dense arrays with swap-remove (RAN) so their order never
// leaks into exports.
struct GraphState {
    int d = 2;
    Model model = Model::ran;
    std::uint64_t step = 0;
    std::uint64_t added = 0;  // N(n): number of non-initial vertices
    bool with_adjacency = true;
    std::uint32_t max_generation = 0;

    std::vector<VertexRecord> vertices;
    std::vector<std::uint32_t> clique_mother;
    std::vector<Symbol> clique_symbol;
    std::vector<std::uint32_t> clique_members;  // stride d+1, index = symbol-1
    std::vector<std::vector<std::uint32_t>> adjacency;
    std::vector<double> qhat_history;  // EAN empirical occupation parameters

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t active_count() const { return clique_mother.size(); }
    bool is_initial(std::uint32_t v) const { return v <= static_cast<std::uint32_t>(d) + 1; }

    Code code_of(std::uint32_t v) const;          // root -> empty; corners throw
    Code clique_code(std::size_t idx) const;
    std::uint32_t clique_generation(std::size_t idx) const;
    std::span<const std::uint32_t> members(std::size_t idx) const {
        return {clique_members.data() + idx * (d + 1), static_cast<std::size_t>(d + 1)};
    }
};

GraphState new_graph(int d, Model model, bool with_adjacency = true);

void step_ran(GraphState& g, Rng& rng);
void step_ean(GraphState& g, double q, Rng& rng);
// Fill a specific active clique (deterministic construction of reference graphs).
std::uint32_t step_at(GraphState& g, std::size_t clique_idx);

void grow(GraphState& g, std::uint64_t steps, const QSchedule& schedule, Rng& rng);

std::size_t sample_uniform_active(const GraphState& g, Rng& rng);
// Uniform clique, then uniform member: vertex law proportional to the number
// of active cliques containing the vertex (A_deg for non-initial vertices).
std::uint32_t sample_size_biased_vertex(const GraphState& g, Rng& rng);

// A_k = 2 + (k-d)(d-1): active cliques containing a non-initial vertex of
// degree k (also the root; corners hold one fewer).
inline std::uint64_t cliques_of_degree(int d, std::uint64_t k) {
    return 2 + (k - d) * (d - 1);
}

// Writes <prefix>.vertices.csv and <prefix>.edges.csv (sorted, bit-stable).
void export_graph(const GraphState& g, const std::string& prefix);

struct LoadedGraph {
    struct Vertex {
        std::uint32_t id, generation, degree, birth_step;
        std::string code;
    };
    struct Edge {
        std::uint32_t u, v;
        std::string type;
    };
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
};
LoadedGraph import_graph(const std::string& prefix);
void export_loaded(const LoadedGraph& g, const std::string& prefix);

// Structural checks used by tests and debug paths; throw on violation.
void verify_state(const GraphState& g);

}  // namespace ran
