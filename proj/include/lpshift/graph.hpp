#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lpshift {

// Dense node index. Ingestion remaps arbitrary labels to 0..n-1.
using NodeId = std::uint32_t;

// Canonical undirected pair, u < v. Weights are standardized to 1 at
// build time, so none is carried.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend std::strong_ordering operator<=>(const Edge&, const Edge&) = default;
};

// Throws std::invalid_argument on a self-loop.
Edge make_edge(NodeId a, NodeId b);

// 64-bit key for hash sets of canonical pairs.
constexpr std::uint64_t edge_key(const Edge& e) {
    return (static_cast<std::uint64_t>(e.u) << 32) | e.v;
}

struct IngestStats {
    std::uint64_t records = 0;             // data records parsed
    std::uint64_t duplicates_collapsed = 0; // repeated (u,v)/(v,u) records
    std::uint64_t self_loops_rejected = 0;
};

struct IngestResult {
    std::vector<Edge> edges;           // canonical, ascending, unique
    std::vector<std::string> labels;   // dense id -> original label
    IngestStats stats;

    NodeId num_nodes() const { return static_cast<NodeId>(labels.size()); }
};

// Parse a text edge list: one "src dst [weight]" record per line,
// separated by spaces, tabs or commas; '#' starts a comment line.
// Labels are remapped densely in order of first appearance. Duplicate
// records collapse to one canonical edge, self-loops are dropped and
// counted. Throws std::runtime_error with a line number on malformed
// records and on empty input.
IngestResult ingest_edge_list(std::istream& in);
IngestResult ingest_edge_list_file(const std::string& path);

// Immutable undirected adjacency. Neighbor lists are strictly sorted,
// which the heuristics rely on for linear-merge intersection. Safe for
// unlimited concurrent readers.
class Graph {
public:
    Graph() = default;

    NodeId num_nodes() const { return num_nodes_; }
    std::uint64_t num_edges() const { return adj_.size() / 2; }

    std::uint32_t degree(NodeId u) const {
        check_node(u);
        return static_cast<std::uint32_t>(offsets_[u + 1] - offsets_[u]);
    }

    std::span<const NodeId> neighbors(NodeId u) const {
        check_node(u);
        return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
    }

    bool has_edge(NodeId a, NodeId b) const;

    // Canonical edge enumeration, ascending (u,v).
    std::vector<Edge> edges() const;

    template <typename Fn>
    void for_each_edge(Fn&& fn) const {
        for (NodeId u = 0; u < num_nodes_; ++u) {
            for (std::uint64_t i = offsets_[u]; i < offsets_[u + 1]; ++i) {
                const NodeId v = adj_[i];
                if (v > u) fn(Edge{u, v});
            }
        }
    }

private:
    friend Graph build_graph(std::span<const Edge> edges, NodeId num_nodes);

    void check_node(NodeId u) const;

    NodeId num_nodes_ = 0;
    std::vector<std::uint64_t> offsets_;  // size n+1
    std::vector<NodeId> adj_;             // size 2m, sorted per node
};

// Build the adjacency from canonical edges. Duplicate edges collapse;
// self-loops or ids >= num_nodes throw.
Graph build_graph(std::span<const Edge> edges, NodeId num_nodes);

// Canonical text dump, "u<TAB>v" per line, ascending. This is both the
// debug dump format and the checksum pre-image used in manifests.
void write_edge_list(std::span<const Edge> edges, std::ostream& out);
void write_edge_list_file(std::span<const Edge> edges, const std::string& path);
std::string canonical_edge_dump(std::span<const Edge> edges);

// sha256 of canonical_edge_dump; independent of the input dialect.
std::string edge_set_sha256(std::span<const Edge> edges);

}  // namespace lpshift
