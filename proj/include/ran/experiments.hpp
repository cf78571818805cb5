#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ran/graph.hpp"

namespace ran {
namespace experiments {

enum class Kind { hopclt, degree, depth, clustering, ean_hop, ean_degree, dist_oracle };

Kind parse_kind(const std::string& name);
std::string kind_name(Kind k);

struct Config {
    Kind kind = Kind::hopclt;
    int d = 2;
    std::uint64_t n = 1000;          // growth steps
    std::uint32_t replicates = 1;
    std::uint64_t master_seed = 1;
    QSchedule schedule = QSchedule::harmonic(0.5);  // EAN kinds
    std::string out_prefix;          // empty: no files
    int threads = 0;                 // 0: library default
    bool serial = false;             // reference single-thread path
    // Extra hop samples per grown graph. Samples within one graph are
    // correlated, so the default is one per graph; values > 1 are a fast
    // mode and are flagged in the summary metadata.
    std::uint32_t pairs_per_graph = 1;
};

// Ordered key/value record; values keep their exact formatted form so that
// emitted CSV/JSON bytes are reproducible.
struct Summary {
    std::string kind;
    Config config;
    std::vector<std::pair<std::string, std::string>> stats;

    void put(const std::string& key, double value);
    void put_int(const std::string& key, std::uint64_t value);
    void put_raw(const std::string& key, const std::string& value);
    std::string to_json() const;
};

struct Result {
    std::vector<std::string> csv_rows;  // one formatted row per entry
    std::string csv_header;
    Summary summary;
    bool witness_failure = false;  // dist_oracle disagreement
};

Result run_experiment(const Config& config);

// Writes <prefix>.csv and <prefix>.summary.json.
void write_result(const Result& result, const std::string& prefix);

std::string format_double(double v);  // shared %.12g formatting

}  // namespace experiments
}  // namespace ran
