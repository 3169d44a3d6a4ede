#include "lpshift/synth.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "lpshift/rng.hpp"

namespace lpshift {

std::vector<Edge> generate_ba(NodeId n, std::uint32_t attach, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("ba: need at least 2 nodes");
    if (attach < 1 || attach >= n) throw std::invalid_argument("ba: attachment count must be in [1, n)");

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(attach) * (n - attach) + static_cast<std::size_t>(attach) * (attach - 1) / 2);

    // Degree-proportional sampling pool: node id appears once per degree.
    std::vector<NodeId> pool;

    // Seed clique on the first `attach` nodes.
    for (NodeId u = 0; u < attach; ++u) {
        for (NodeId v = u + 1; v < attach; ++v) {
            edges.push_back(Edge{u, v});
            pool.push_back(u);
            pool.push_back(v);
        }
    }
    // attach == 1 leaves the pool empty; make node 0 samplable.
    if (pool.empty()) pool.push_back(0);

    Rng rng(derive_seed(seed, "ba"));
    std::vector<NodeId> picks;
    std::unordered_set<NodeId> picked;
    for (NodeId i = attach; i < n; ++i) {
        picks.clear();
        picked.clear();
        while (picks.size() < attach) {
            const NodeId target = pool[rng.bounded(pool.size())];
            if (picked.insert(target).second) picks.push_back(target);
        }
        for (NodeId target : picks) {
            edges.push_back(make_edge(i, target));
            pool.push_back(target);
        }
        for (std::uint32_t r = 0; r < attach; ++r) pool.push_back(i);
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

std::vector<Edge> generate_er(NodeId n, double p, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("er: need at least 1 node");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("er: p must be in [0,1]");
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (unit_double(hash_u64(seed, u, v)) < p) edges.push_back(Edge{u, v});
        }
    }
    return edges;
}

}  // namespace lpshift
