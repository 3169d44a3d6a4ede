#include "lpshift/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "lpshift/sha256.hpp"

namespace lpshift {

Edge make_edge(NodeId a, NodeId b) {
    if (a == b) throw std::invalid_argument("self-loop (" + std::to_string(a) + "," + std::to_string(b) + ")");
    return a < b ? Edge{a, b} : Edge{b, a};
}

void Graph::check_node(NodeId u) const {
    if (u >= num_nodes_)
        throw std::out_of_range("node id " + std::to_string(u) + " out of range (n=" + std::to_string(num_nodes_) + ")");
}

bool Graph::has_edge(NodeId a, NodeId b) const {
    check_node(a);
    check_node(b);
    if (a == b) return false;
    // Search the shorter list.
    if (offsets_[a + 1] - offsets_[a] > offsets_[b + 1] - offsets_[b]) std::swap(a, b);
    const auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for_each_edge([&out](Edge e) { out.push_back(e); });
    return out;
}

Graph build_graph(std::span<const Edge> edges, NodeId num_nodes) {
    std::vector<Edge> canon;
    canon.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.u >= num_nodes || e.v >= num_nodes)
            throw std::out_of_range("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    ") exceeds num_nodes=" + std::to_string(num_nodes));
        canon.push_back(make_edge(e.u, e.v));
    }
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());

    Graph g;
    g.num_nodes_ = num_nodes;
    g.offsets_.assign(static_cast<std::size_t>(num_nodes) + 1, 0);
    for (const Edge& e : canon) {
        ++g.offsets_[e.u + 1];
        ++g.offsets_[e.v + 1];
    }
    for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
    g.adj_.resize(canon.size() * 2);
    std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const Edge& e : canon) {
        g.adj_[cursor[e.u]++] = e.v;
        g.adj_[cursor[e.v]++] = e.u;
    }
    // Canonical edge input is sorted by (u,v), so each node's slice is
    // filled ascending for neighbors > u but interleaved for smaller
    // ones; sort each slice to restore the strict ordering invariant.
    for (NodeId u = 0; u < num_nodes; ++u)
        std::sort(g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]),
                  g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]));
    return g;
}

namespace {

bool is_separator(char c) { return c == ' ' || c == '\t' || c == ','; }

// Split a record into at most 4 fields; more than 3 is malformed.
int split_fields(const std::string& line, std::string_view out[4]) {
    int count = 0;
    std::size_t i = 0;
    const std::size_t n = line.size();
    while (i < n) {
        while (i < n && is_separator(line[i])) ++i;
        if (i >= n) break;
        const std::size_t start = i;
        while (i < n && !is_separator(line[i])) ++i;
        if (count < 4) out[count] = std::string_view(line).substr(start, i - start);
        ++count;
        if (count > 3) break;
    }
    return count;
}

[[noreturn]] void malformed(std::uint64_t line_no, const std::string& why) {
    throw std::runtime_error("edge list line " + std::to_string(line_no) + ": " + why);
}

}  // namespace

IngestResult ingest_edge_list(std::istream& in) {
    IngestResult result;
    std::unordered_map<std::string, NodeId> remap;
    std::vector<Edge> raw;

    auto intern = [&](std::string_view label) -> NodeId {
        auto it = remap.find(std::string(label));
        if (it != remap.end()) return it->second;
        const NodeId id = static_cast<NodeId>(result.labels.size());
        result.labels.emplace_back(label);
        remap.emplace(result.labels.back(), id);
        return id;
    };

    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view fields[4];
        // Skip blank and comment lines.
        std::size_t first = line.find_first_not_of(" \t,");
        if (first == std::string::npos || line[first] == '#') continue;
        const int nfields = split_fields(line, fields);
        if (nfields < 2 || nfields > 3) malformed(line_no, "expected 'src dst [weight]', got " + std::to_string(nfields) + " fields");
        if (nfields == 3) {
            double w = 0.0;
            const auto* b = fields[2].data();
            const auto* e = b + fields[2].size();
            const auto [ptr, ec] = std::from_chars(b, e, w);
            if (ec != std::errc{} || ptr != e) malformed(line_no, "weight '" + std::string(fields[2]) + "' is not a number");
            if (!(w > 0.0)) malformed(line_no, "weight must be positive (weights are standardized to 1 after build)");
        }
        ++result.stats.records;
        const NodeId a = intern(fields[0]);
        const NodeId b = intern(fields[1]);
        if (a == b) {
            ++result.stats.self_loops_rejected;
            continue;
        }
        raw.push_back(make_edge(a, b));
    }

    if (result.stats.records == 0) throw std::runtime_error("edge list is empty (no data records)");

    std::sort(raw.begin(), raw.end());
    const auto unique_end = std::unique(raw.begin(), raw.end());
    result.stats.duplicates_collapsed = static_cast<std::uint64_t>(raw.end() - unique_end);
    raw.erase(unique_end, raw.end());
    result.edges = std::move(raw);
    return result;
}

IngestResult ingest_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);
    return ingest_edge_list(in);
}

void write_edge_list(std::span<const Edge> edges, std::ostream& out) {
    for (const Edge& e : edges) out << e.u << '\t' << e.v << '\n';
}

void write_edge_list_file(std::span<const Edge> edges, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write edge list: " + path);
    write_edge_list(edges, out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string canonical_edge_dump(std::span<const Edge> edges) {
    std::ostringstream out;
    write_edge_list(edges, out);
    return out.str();
}

std::string edge_set_sha256(std::span<const Edge> edges) {
    Sha256 h;
    char buf[48];
    for (const Edge& e : edges) {
        const int len = std::snprintf(buf, sizeof(buf), "%u\t%u\n", e.u, e.v);
        h.update(buf, static_cast<std::size_t>(len));
    }
    return h.hex_digest();
}

}  // namespace lpshift
