#include "lpshift/heuristics.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "lpshift/parallel.hpp"

namespace lpshift {

std::string_view to_string(HeuristicKind kind) {
    switch (kind) {
        case HeuristicKind::common_neighbors: return "cn";
        case HeuristicKind::preferential_attachment: return "pa";
        case HeuristicKind::shortest_path: return "sp";
        case HeuristicKind::resource_allocation: return "ra";
    }
    return "?";
}

std::optional<HeuristicKind> heuristic_from_string(std::string_view name) {
    if (name == "cn" || name == "common_neighbors") return HeuristicKind::common_neighbors;
    if (name == "pa" || name == "preferential_attachment") return HeuristicKind::preferential_attachment;
    if (name == "sp" || name == "shortest_path") return HeuristicKind::shortest_path;
    if (name == "ra" || name == "resource_allocation") return HeuristicKind::resource_allocation;
    return std::nullopt;
}

namespace {

void check_pair(const Graph& g, NodeId u, NodeId v) {
    if (u >= g.num_nodes() || v >= g.num_nodes())
        throw std::out_of_range("pair (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    if (u == v) throw std::invalid_argument("heuristics are undefined for u == v");
}

// Visit every common neighbor of u and v in ascending order. Linear
// merge by default; when one list is >32x longer, binary-search each
// element of the short list in the long one instead.
template <typename Fn>
void for_each_common_neighbor(const Graph& g, NodeId u, NodeId v, Fn&& fn) {
    std::span<const NodeId> a = g.neighbors(u);
    std::span<const NodeId> b = g.neighbors(v);
    if (a.size() > b.size()) std::swap(a, b);
    if (a.empty()) return;
    if (b.size() / 32 > a.size()) {
        auto lo = b.begin();
        for (NodeId x : a) {
            lo = std::lower_bound(lo, b.end(), x);
            if (lo == b.end()) return;
            if (*lo == x) fn(x);
        }
        return;
    }
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            fn(a[i]);
            ++i;
            ++j;
        }
    }
}

// Scratch for repeated BFS queries; one instance per worker. Stamped
// visit marks avoid clearing the distance arrays between queries.
struct BfsScratch {
    std::vector<std::uint32_t> stamp_fwd, stamp_bwd;
    std::vector<std::uint32_t> dist_fwd, dist_bwd;
    std::vector<NodeId> frontier_fwd, frontier_bwd, next;
    std::uint32_t epoch = 0;

    void prepare(NodeId n) {
        if (stamp_fwd.size() < n) {
            stamp_fwd.assign(n, 0);
            stamp_bwd.assign(n, 0);
            dist_fwd.resize(n);
            dist_bwd.resize(n);
        }
        ++epoch;
        if (epoch == 0) {  // stamp wrap: reset everything once
            std::fill(stamp_fwd.begin(), stamp_fwd.end(), 0);
            std::fill(stamp_bwd.begin(), stamp_bwd.end(), 0);
            epoch = 1;
        }
    }
};

constexpr std::uint32_t kUnreachable = 0xffffffffu;

// Exact unweighted distance between u and v with the single edge (u,v)
// excluded. Bidirectional level-synchronous BFS: frontiers alternate,
// the smaller one expands, and the search only stops once the proven
// lower bound (levels done on both sides + 1) reaches the best meeting
// distance found so far, which makes the result identical to a plain
// BFS.
std::uint32_t bfs_distance_excluding_edge(const Graph& g, NodeId u, NodeId v, BfsScratch& s) {
    s.prepare(g.num_nodes());
    const std::uint32_t ep = s.epoch;

    s.stamp_fwd[u] = ep;
    s.dist_fwd[u] = 0;
    s.stamp_bwd[v] = ep;
    s.dist_bwd[v] = 0;
    s.frontier_fwd.assign(1, u);
    s.frontier_bwd.assign(1, v);
    std::uint32_t depth_fwd = 0, depth_bwd = 0;
    std::uint32_t best = kUnreachable;

    auto expand = [&](std::vector<NodeId>& frontier, std::vector<std::uint32_t>& stamp,
                      std::vector<std::uint32_t>& dist, const std::vector<std::uint32_t>& other_stamp,
                      const std::vector<std::uint32_t>& other_dist, std::uint32_t next_depth) {
        s.next.clear();
        for (NodeId x : frontier) {
            for (NodeId y : g.neighbors(x)) {
                // Skip only the direct u-v hop; every other edge stays.
                if ((x == u && y == v) || (x == v && y == u)) continue;
                if (stamp[y] == ep) continue;
                stamp[y] = ep;
                dist[y] = next_depth;
                if (other_stamp[y] == ep) best = std::min(best, next_depth + other_dist[y]);
                s.next.push_back(y);
            }
        }
        frontier.swap(s.next);
    };

    while (!s.frontier_fwd.empty() && !s.frontier_bwd.empty()) {
        // A path not yet found must cross both unexplored regions.
        if (best != kUnreachable && depth_fwd + depth_bwd + 1 >= best) break;
        if (s.frontier_fwd.size() <= s.frontier_bwd.size()) {
            expand(s.frontier_fwd, s.stamp_fwd, s.dist_fwd, s.stamp_bwd, s.dist_bwd, ++depth_fwd);
        } else {
            expand(s.frontier_bwd, s.stamp_bwd, s.dist_bwd, s.stamp_fwd, s.dist_fwd, ++depth_bwd);
        }
    }
    return best;
}

double shortest_path_score_with_scratch(const Graph& g, NodeId u, NodeId v, BfsScratch& s) {
    check_pair(g, u, v);
    const std::uint32_t d = bfs_distance_excluding_edge(g, u, v, s);
    return d == kUnreachable ? 0.0 : 1.0 / static_cast<double>(d);
}

}  // namespace

double common_neighbors(const Graph& g, NodeId u, NodeId v) {
    check_pair(g, u, v);
    std::uint64_t count = 0;
    for_each_common_neighbor(g, u, v, [&count](NodeId) { ++count; });
    return static_cast<double>(count);
}

double preferential_attachment(const Graph& g, NodeId u, NodeId v) {
    check_pair(g, u, v);
    return static_cast<double>(g.degree(u)) * static_cast<double>(g.degree(v));
}

double shortest_path_score(const Graph& g, NodeId u, NodeId v) {
    BfsScratch scratch;
    return shortest_path_score_with_scratch(g, u, v, scratch);
}

double resource_allocation(const Graph& g, NodeId u, NodeId v) {
    check_pair(g, u, v);
    double sum = 0.0;
    // A common neighbor touches both u and v, so degree(w) >= 2.
    for_each_common_neighbor(g, u, v, [&](NodeId w) { sum += 1.0 / static_cast<double>(g.degree(w)); });
    return sum;
}

double score_pair(const Graph& g, NodeId u, NodeId v, HeuristicKind kind) {
    switch (kind) {
        case HeuristicKind::common_neighbors: return common_neighbors(g, u, v);
        case HeuristicKind::preferential_attachment: return preferential_attachment(g, u, v);
        case HeuristicKind::shortest_path: return shortest_path_score(g, u, v);
        case HeuristicKind::resource_allocation: return resource_allocation(g, u, v);
    }
    throw std::invalid_argument("unknown heuristic");
}

std::vector<double> score_pairs(const Graph& g, std::span<const Edge> pairs, HeuristicKind kind, int threads) {
    std::vector<double> scores(pairs.size());
    if (kind == HeuristicKind::shortest_path) {
        parallel_for_workers(pairs.size(), threads, [&](int, std::size_t begin, std::size_t end) {
            BfsScratch scratch;
            for (std::size_t i = begin; i < end; ++i)
                scores[i] = shortest_path_score_with_scratch(g, pairs[i].u, pairs[i].v, scratch);
        });
        return scores;
    }
    parallel_for(pairs.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) scores[i] = score_pair(g, pairs[i].u, pairs[i].v, kind);
    });
    return scores;
}

std::vector<double> score_all_edges(const Graph& g, HeuristicKind kind, int threads) {
    const std::vector<Edge> edges = g.edges();
    return score_pairs(g, edges, kind, threads);
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

void write_score_dump(const Graph& g, HeuristicKind kind, const std::string& path, int threads) {
    const std::vector<Edge> edges = g.edges();
    const std::vector<double> scores = score_pairs(g, edges, kind, threads);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write score dump: " + path);
    for (std::size_t i = 0; i < edges.size(); ++i)
        out << edges[i].u << '\t' << edges[i].v << '\t' << format_double(scores[i]) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace lpshift
