#include "ran/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ran {

double QSchedule::at(std::uint64_t n) const {
    switch (kind) {
        case Kind::constant: return q;
        case Kind::harmonic: return std::min(1.0, c / static_cast<double>(n));
        case Kind::power: return std::min(1.0, c * std::pow(static_cast<double>(n), -gamma));
        case Kind::custom:
            if (n == 0 || n > values.size())
                throw std::invalid_argument("custom schedule not defined at step " + std::to_string(n));
            return values[n - 1];
    }
    return 0.0;
}

static void check_prob(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("occupation parameter outside [0,1]");
}

QSchedule QSchedule::constant(double q) {
    check_prob(q);
    QSchedule s;
    s.kind = Kind::constant;
    s.q = q;
    return s;
}
QSchedule QSchedule::harmonic(double c) {
    if (c < 0) throw std::invalid_argument("harmonic coefficient must be >= 0");
    QSchedule s;
    s.kind = Kind::harmonic;
    s.c = c;
    return s;
}
QSchedule QSchedule::power(double c, double gamma) {
    if (c < 0) throw std::invalid_argument("power coefficient must be >= 0");
    QSchedule s;
    s.kind = Kind::power;
    s.c = c;
    s.gamma = gamma;
    return s;
}
QSchedule QSchedule::custom(std::vector<double> values) {
    for (double v : values) check_prob(v);
    QSchedule s;
    s.kind = Kind::custom;
    s.values = std::move(values);
    return s;
}

QSchedule QSchedule::parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("schedule must look like kind:params");
    std::string kind = text.substr(0, colon);
    std::string params = text.substr(colon + 1);
    try {
        if (kind == "const" || kind == "constant") return constant(std::stod(params));
        if (kind == "harmonic") return harmonic(std::stod(params));
        if (kind == "power") {
            auto comma = params.find(',');
            if (comma == std::string::npos) throw std::invalid_argument("power needs c,gamma");
            return power(std::stod(params.substr(0, comma)), std::stod(params.substr(comma + 1)));
        }
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad schedule parameters: " + text);
    }
    throw std::invalid_argument("unknown schedule kind: " + kind);
}

std::string QSchedule::describe() const {
    char buf[64];
    switch (kind) {
        case Kind::constant: std::snprintf(buf, sizeof buf, "const:%g", q); break;
        case Kind::harmonic: std::snprintf(buf, sizeof buf, "harmonic:%g", c); break;
        case Kind::power: std::snprintf(buf, sizeof buf, "power:%g,%g", c, gamma); break;
        case Kind::custom: std::snprintf(buf, sizeof buf, "custom[%zu]", values.size()); break;
    }
    return buf;
}

Code GraphState::code_of(std::uint32_t v) const {
    if (v == 0) return Code({}, d);
    if (is_initial(v)) throw std::invalid_argument("corner vertices carry no code");
    std::vector<Symbol> rev;
    while (v != 0) {
        rev.push_back(vertices[v].symbol);
        v = vertices[v].mother;
    }
    std::reverse(rev.begin(), rev.end());
    return Code(std::move(rev), d);
}

Code GraphState::clique_code(std::size_t idx) const {
    Code c = code_of(clique_mother[idx]);
    c.symbols.push_back(clique_symbol[idx]);
    return c;
}

std::uint32_t GraphState::clique_generation(std::size_t idx) const {
    return vertices[clique_mother[idx]].generation + 1;
}

GraphState new_graph(int d, Model model, bool with_adjacency) {
    if (d < 2 || d > 40) throw std::invalid_argument("dimension must be in [2, 40]");
    GraphState g;
    g.d = d;
    g.model = model;
    g.with_adjacency = with_adjacency;
    const std::uint32_t nv = static_cast<std::uint32_t>(d) + 2;
    g.vertices.assign(nv, VertexRecord{});
    for (auto& v : g.vertices) v.degree = nv - 1;  // K_{d+2}
    if (with_adjacency) {
        g.adjacency.assign(nv, {});
        for (std::uint32_t a = 0; a < nv; ++a)
            for (std::uint32_t b = 0; b < nv; ++b)
                if (a != b) g.adjacency[a].push_back(b);
    }
    // clique i = {root} + all corners except corner i
    g.clique_mother.assign(d + 1, 0);
    g.clique_symbol.resize(d + 1);
    g.clique_members.resize(static_cast<std::size_t>(d + 1) * (d + 1));
    for (int i = 1; i <= d + 1; ++i) {
        g.clique_symbol[i - 1] = static_cast<Symbol>(i);
        auto* m = g.clique_members.data() + static_cast<std::size_t>(i - 1) * (d + 1);
        for (int j = 1; j <= d + 1; ++j) m[j - 1] = (j == i) ? 0 : static_cast<std::uint32_t>(j);
    }
    return g;
}

namespace {

// Insert the vertex filling clique idx; members must be a pre-step copy.
// Does not touch the clique arrays.
std::uint32_t give_birth(GraphState& g, std::size_t idx, const std::uint32_t* members) {
    const int d = g.d;
    const std::uint32_t vid = static_cast<std::uint32_t>(g.vertices.size());
    VertexRecord rec;
    rec.mother = g.clique_mother[idx];
    rec.symbol = g.clique_symbol[idx];
    rec.generation = g.vertices[rec.mother].generation + 1;
    rec.degree = static_cast<std::uint32_t>(d) + 1;
    rec.birth_step = static_cast<std::uint32_t>(g.step);
    g.vertices.push_back(rec);
    g.max_generation = std::max(g.max_generation, rec.generation);
    for (int j = 0; j <= d; ++j) g.vertices[members[j]].degree += 1;
    if (g.with_adjacency) {
        g.adjacency.emplace_back(members, members + d + 1);
        for (int j = 0; j <= d; ++j) g.adjacency[members[j]].push_back(vid);
    }
    g.added += 1;
    return vid;
}

void append_children(GraphState& g, std::uint32_t vid, const std::uint32_t* members) {
    const int d = g.d;
    for (int k = 1; k <= d + 1; ++k) {
        g.clique_mother.push_back(vid);
        g.clique_symbol.push_back(static_cast<Symbol>(k));
        const std::size_t base = g.clique_members.size();
        g.clique_members.resize(base + d + 1);
        auto* m = g.clique_members.data() + base;
        for (int j = 0; j <= d; ++j) m[j] = members[j];
        m[k - 1] = vid;  // the new vertex replaces T_k
    }
}

void swap_remove_clique(GraphState& g, std::size_t idx) {
    const int d = g.d;
    const std::size_t last = g.clique_mother.size() - 1;
    if (idx != last) {
        g.clique_mother[idx] = g.clique_mother[last];
        g.clique_symbol[idx] = g.clique_symbol[last];
        auto* dst = g.clique_members.data() + idx * (d + 1);
        const auto* src = g.clique_members.data() + last * (d + 1);
        std::copy(src, src + d + 1, dst);
    }
    g.clique_mother.pop_back();
    g.clique_symbol.pop_back();
    g.clique_members.resize(g.clique_members.size() - (d + 1));
}

}  // namespace

std::uint32_t step_at(GraphState& g, std::size_t idx) {
    const int d = g.d;
    g.step += 1;
    std::uint32_t members[64];
    std::copy_n(g.clique_members.data() + idx * (d + 1), d + 1, members);
    const std::uint32_t vid = give_birth(g, idx, members);
    swap_remove_clique(g, idx);
    append_children(g, vid, members);
    return vid;
}

void step_ran(GraphState& g, Rng& rng) {
    if (g.model != Model::ran) throw std::logic_error("step_ran on an EAN state");
    step_at(g, static_cast<std::size_t>(rng.below(g.active_count())));
}

void step_ean(GraphState& g, double q, Rng& rng) {
    if (g.model != Model::ean) throw std::logic_error("step_ean on a RAN state");
    check_prob(q);
    const int d = g.d;
    const std::size_t snapshot = g.active_count();
    g.step += 1;
    // One draw per clique active at step entry, in storage order.
    std::vector<std::uint8_t> filled(snapshot);
    std::size_t nfill = 0;
    for (std::size_t s = 0; s < snapshot; ++s) {
        filled[s] = rng.bernoulli(q);
        nfill += filled[s];
    }
    g.qhat_history.push_back(static_cast<double>(nfill) / static_cast<double>(snapshot));
    if (nfill == 0) return;
    // Births first (member snapshots are stable), then compact + append.
    std::vector<std::uint32_t> born(snapshot, 0);
    for (std::size_t s = 0; s < snapshot; ++s)
        if (filled[s]) born[s] = give_birth(g, s, g.clique_members.data() + s * (d + 1));
    std::vector<std::uint32_t> mothers = std::move(g.clique_mother);
    std::vector<Symbol> symbols = std::move(g.clique_symbol);
    std::vector<std::uint32_t> members = std::move(g.clique_members);
    g.clique_mother.clear();
    g.clique_symbol.clear();
    g.clique_members.clear();
    const std::size_t total = mothers.size();
    g.clique_mother.reserve(total - nfill + nfill * (d + 1));
    for (std::size_t s = 0; s < total; ++s) {
        if (s < snapshot && filled[s]) continue;
        g.clique_mother.push_back(mothers[s]);
        g.clique_symbol.push_back(symbols[s]);
        g.clique_members.insert(g.clique_members.end(), members.begin() + s * (d + 1),
                                members.begin() + (s + 1) * (d + 1));
    }
    for (std::size_t s = 0; s < snapshot; ++s)
        if (filled[s]) append_children(g, born[s], members.data() + s * (d + 1));
}

void grow(GraphState& g, std::uint64_t steps, const QSchedule& schedule, Rng& rng) {
    if (g.model == Model::ran) {
        for (std::uint64_t i = 0; i < steps; ++i) step_ran(g, rng);
        return;
    }
    constexpr std::size_t kActiveCap = 80'000'000;
    for (std::uint64_t i = 0; i < steps; ++i) {
        step_ean(g, schedule.at(g.step + 1), rng);
        if (g.active_count() > kActiveCap)
            throw std::length_error("EAN growth exceeded the in-memory clique budget");
    }
}

std::size_t sample_uniform_active(const GraphState& g, Rng& rng) {
    if (g.active_count() == 0) throw std::logic_error("no active cliques");
    return static_cast<std::size_t>(rng.below(g.active_count()));
}

std::uint32_t sample_size_biased_vertex(const GraphState& g, Rng& rng) {
    const std::size_t idx = sample_uniform_active(g, rng);
    return g.members(idx)[rng.below(g.d + 1)];
}

namespace {

std::string vertex_code_field(const GraphState& g, std::uint32_t v) {
    if (v == 0) return "";
    if (g.is_initial(v)) return "#" + std::to_string(v);
    return to_string(g.code_of(v));
}

const char* edge_type(const GraphState& g, std::uint32_t a, std::uint32_t b) {
    const std::uint32_t later = std::max(a, b);
    const std::uint32_t other = std::min(a, b);
    if (g.is_initial(later)) return "initial";
    return g.vertices[later].mother == other ? "forward" : "shortcut";
}

}  // namespace

void export_graph(const GraphState& g, const std::string& prefix) {
    if (!g.with_adjacency)
        throw std::runtime_error("export requires a graph grown with adjacency tracking");
    {
        std::ofstream out(prefix + ".vertices.csv");
        if (!out) throw std::runtime_error("cannot write " + prefix + ".vertices.csv");
        out << "id,code,generation,degree,birth_step\n";
        for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
            const auto& rec = g.vertices[v];
            out << v << ',' << vertex_code_field(g, v) << ',' << rec.generation << ','
                << rec.degree << ',' << rec.birth_step << '\n';
        }
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        for (std::uint32_t u : g.adjacency[v])
            if (u < v) edges.emplace_back(u, v);
    std::sort(edges.begin(), edges.end());
    std::ofstream out(prefix + ".edges.csv");
    if (!out) throw std::runtime_error("cannot write " + prefix + ".edges.csv");
    out << "u,v,type\n";
    for (auto [u, v] : edges) out << u << ',' << v << ',' << edge_type(g, u, v) << '\n';
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

LoadedGraph import_graph(const std::string& prefix) {
    LoadedGraph g;
    std::ifstream vin(prefix + ".vertices.csv");
    if (!vin) throw std::runtime_error("cannot read " + prefix + ".vertices.csv");
    std::string line;
    std::getline(vin, line);
    if (line != "id,code,generation,degree,birth_step")
        throw std::runtime_error("unexpected vertex table header in " + prefix);
    while (std::getline(vin, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 5) throw std::runtime_error("malformed vertex row: " + line);
        g.vertices.push_back({static_cast<std::uint32_t>(std::stoul(f[0])),
                              static_cast<std::uint32_t>(std::stoul(f[2])),
                              static_cast<std::uint32_t>(std::stoul(f[3])),
                              static_cast<std::uint32_t>(std::stoul(f[4])), f[1]});
    }
    std::ifstream ein(prefix + ".edges.csv");
    if (!ein) throw std::runtime_error("cannot read " + prefix + ".edges.csv");
    std::getline(ein, line);
    if (line != "u,v,type") throw std::runtime_error("unexpected edge table header in " + prefix);
    while (std::getline(ein, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 3) throw std::runtime_error("malformed edge row: " + line);
        g.edges.push_back({static_cast<std::uint32_t>(std::stoul(f[0])),
                           static_cast<std::uint32_t>(std::stoul(f[1])), f[2]});
    }
    return g;
}

void export_loaded(const LoadedGraph& g, const std::string& prefix) {
    std::ofstream vout(prefix + ".vertices.csv");
    if (!vout) throw std::runtime_error("cannot write " + prefix + ".vertices.csv");
    vout << "id,code,generation,degree,birth_step\n";
    for (const auto& v : g.vertices)
        vout << v.id << ',' << v.code << ',' << v.generation << ',' << v.degree << ','
             << v.birth_step << '\n';
    std::ofstream eout(prefix + ".edges.csv");
    if (!eout) throw std::runtime_error("cannot write " + prefix + ".edges.csv");
    eout << "u,v,type\n";
    for (const auto& e : g.edges) eout << e.u << ',' << e.v << ',' << e.type << '\n';
}

void verify_state(const GraphState& g) {
    const int d = g.d;
    if (g.model == Model::ran) {
        if (g.active_count() != static_cast<std::size_t>(d) * g.step + d + 1)
            throw std::logic_error("active clique count violates d n + d + 1");
        if (g.vertex_count() != g.step + d + 2)
            throw std::logic_error("vertex count violates n + d + 2");
    } else {
        if (g.active_count() != static_cast<std::size_t>(d) * g.added + d + 1)
            throw std::logic_error("active clique count violates d N(n) + d + 1");
    }
    // member sets equal {T_i(code)} under the corner convention
    for (std::size_t idx = 0; idx < g.active_count(); ++idx) {
        const Code code = g.clique_code(idx);
        auto mem = g.members(idx);
        for (int i = 1; i <= d + 1; ++i) {
            auto cut = cut_t(code, static_cast<Symbol>(i));
            std::uint32_t want;
            if (!cut) {
                want = static_cast<std::uint32_t>(i);  // corner
            } else if (cut->empty()) {
                want = 0;  // root
            } else {
                std::uint32_t v = mem[i - 1];
                if (g.is_initial(v) || !(g.code_of(v) == *cut))
                    throw std::logic_error("clique member does not match T_i of its code");
                continue;
            }
            if (mem[i - 1] != want) throw std::logic_error("corner convention violated");
        }
    }
    // degree/clique identity: sum of memberships = (d+1) |active|;
    // corners sit in one clique fewer than A_deg.
    std::uint64_t total = 0;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        std::uint64_t a = cliques_of_degree(d, g.vertices[v].degree);
        if (v >= 1 && g.is_initial(v)) a -= 1;
        total += a;
    }
    if (total != static_cast<std::uint64_t>(d + 1) * g.active_count())
        throw std::logic_error("degree/clique membership identity violated");
    if (g.with_adjacency) {
        for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
            if (g.adjacency[v].size() != g.vertices[v].degree)
                throw std::logic_error("tracked degree disagrees with adjacency");
    }
}

}  // namespace ran
