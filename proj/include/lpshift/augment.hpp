#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lpshift/graph.hpp"
#include "lpshift/heuristics.hpp"

namespace lpshift {

// Independent per-edge removal with probability p. The keep/drop
// decision is a pure function of (seed, draw_index, edge), so worker
// count and iteration order cannot change the outcome. draw_index
// selects among repeated draws with one seed.
Graph drop_edge(const Graph& g, double p, std::uint64_t seed, std::uint64_t draw_index = 0);

struct EpsResult {
    Graph graph;
    std::uint64_t added = 0;
    std::uint64_t candidate_pool = 0;
    bool pool_exhausted = false;  // k exceeded the candidate pool
};

// Add the top-k heuristic-scored non-edges. Candidates are the
// non-adjacent two-hop pairs (exactly the support of CN > 0); ties
// break by a seeded per-pair key.
EpsResult eps_filter(const Graph& g, HeuristicKind filter_heuristic, std::uint64_t k, std::uint64_t seed,
                     int threads = 0);

// Parsed CLI/augment-spec form, e.g. "dropedge:0.3" or "eps:cn:100".
struct AugmentSpec {
    enum class Kind { drop_edge, eps_filter };
    Kind kind = Kind::drop_edge;
    double p = 0.0;                                            // drop_edge
    HeuristicKind filter = HeuristicKind::common_neighbors;    // eps_filter
    std::uint64_t k = 0;                                       // eps_filter

    std::string label() const;
    static AugmentSpec parse(const std::string& text);  // throws std::invalid_argument
};

// Dispatch on the parsed form; returns the augmented graph.
Graph apply_augmentation(const Graph& g, const AugmentSpec& spec, std::uint64_t seed, int threads = 0);

}  // namespace lpshift
