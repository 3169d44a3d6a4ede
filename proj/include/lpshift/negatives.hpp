#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lpshift/graph.hpp"
#include "lpshift/heuristics.hpp"
#include "lpshift/split.hpp"

namespace lpshift {

// Heuristic-ranked negatives: for each positive (u,v), candidates are
// the single-endpoint corruptions (u,w) and (w,v) over all nodes of the
// train graph, scored on the train graph. Each side contributes its
// top-scored half of the budget; a short side is backfilled from the
// other. Ties break by a seeded per-candidate key.
struct NegativeTable {
    std::vector<Edge> positives;                 // same order as the split file
    std::vector<std::vector<Edge>> negatives;    // per positive, ranked; u-side block then v-side block
    std::uint32_t m = 250;
    HeuristicKind heuristic = HeuristicKind::common_neighbors;
    std::uint64_t seed = 0;
    std::uint64_t shortfall_positives = 0;       // positives with fewer than m candidates
};

// Pair-exclusion index shared across positives: edges of the original
// graph plus every split positive.
class KnownPositives {
public:
    KnownPositives(const Graph& full_graph, const LoadedSplit& split);
    bool contains(Edge e) const;
    bool extra_empty() const { return extra_keys_.empty(); }
    const Graph& full_graph() const { return *full_graph_; }

private:
    const Graph* full_graph_;
    std::vector<std::uint64_t> extra_keys_;  // sorted; split edges not in the full graph
};

// Negatives for one positive. Throws if no candidate exists at all.
std::vector<Edge> generate_negatives(const KnownPositives& known, const Graph& train_graph, Edge positive,
                                     std::uint32_t m, HeuristicKind kind, std::uint64_t seed);

// Whole-table generation over a positives list (valid or test edges).
NegativeTable generate_negative_table(const Graph& full_graph, const LoadedSplit& split,
                                      std::span<const Edge> positives, std::uint32_t m, HeuristicKind kind,
                                      std::uint64_t seed, int threads = 0);

// One line per positive: "u v | w1 x1 w2 x2 ...", preceded by a single
// '#' header carrying m, heuristic and seed.
void write_negatives(const NegativeTable& table, const std::string& path);
NegativeTable read_negatives(const std::string& path);

}  // namespace lpshift
