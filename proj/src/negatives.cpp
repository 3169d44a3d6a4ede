#include "lpshift/negatives.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "lpshift/parallel.hpp"
#include "lpshift/rng.hpp"

namespace lpshift {

KnownPositives::KnownPositives(const Graph& full_graph, const LoadedSplit& split) : full_graph_(&full_graph) {
    auto add_missing = [this](const std::vector<Edge>& edges) {
        for (const Edge& e : edges)
            if (!full_graph_->has_edge(e.u, e.v)) extra_keys_.push_back(edge_key(e));
    };
    add_missing(split.train_edges);
    add_missing(split.valid_edges);
    add_missing(split.test_edges);
    std::sort(extra_keys_.begin(), extra_keys_.end());
    extra_keys_.erase(std::unique(extra_keys_.begin(), extra_keys_.end()), extra_keys_.end());
}

bool KnownPositives::contains(Edge e) const {
    if (full_graph_->has_edge(e.u, e.v)) return true;
    return std::binary_search(extra_keys_.begin(), extra_keys_.end(), edge_key(e));
}

namespace {

// Candidate ordering: score descending, then the seeded tie key, then
// the pair itself so the order is total.
struct Candidate {
    double score;
    std::uint64_t key;
    Edge pair;
};

bool better(const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.key != b.key) return a.key < b.key;
    return a.pair < b.pair;
}

// Per-worker scratch. Stamped accumulator gives O(touched) resets.
struct NegScratch {
    std::vector<std::uint32_t> stamp;
    std::vector<double> acc;
    std::vector<std::uint32_t> adj_stamp;
    std::uint32_t epoch = 0;
    std::uint32_t adj_epoch = 0;

    void prepare(NodeId n) {
        if (stamp.size() < n) {
            stamp.assign(n, 0);
            acc.assign(n, 0.0);
            adj_stamp.assign(n, 0);
        }
    }
    void next_epoch() {
        if (++epoch == 0) {
            std::fill(stamp.begin(), stamp.end(), 0);
            epoch = 1;
        }
    }
    void next_adj_epoch() {
        if (++adj_epoch == 0) {
            std::fill(adj_stamp.begin(), adj_stamp.end(), 0);
            adj_epoch = 1;
        }
    }
};

// One corruption side: pairs (keep, w) for all admissible w.
struct Side {
    NodeId keep = 0;
    std::uint64_t available = 0;
};

class SideScorer {
public:
    SideScorer(const KnownPositives& known, const Graph& train_graph, Edge positive, HeuristicKind kind,
               std::uint64_t seed, NegScratch& scratch)
        : known_(known), train_(train_graph), positive_(positive), kind_(kind), seed_(seed), scratch_(scratch) {}

    void begin_side(NodeId keep, NodeId other) {
        keep_ = keep;
        other_ = other;
        scratch_.next_adj_epoch();
        for (NodeId x : known_.full_graph().neighbors(keep)) scratch_.adj_stamp[x] = scratch_.adj_epoch;
        if (kind_ == HeuristicKind::common_neighbors || kind_ == HeuristicKind::resource_allocation) {
            // Two-hop sweep; every other node scores 0. Contributions per
            // candidate arrive in ascending common-neighbor order, matching
            // the pairwise merge exactly.
            scratch_.next_epoch();
            for (NodeId x : train_.neighbors(keep)) {
                const double weight = kind_ == HeuristicKind::common_neighbors
                                          ? 1.0
                                          : 1.0 / static_cast<double>(train_.degree(x));
                for (NodeId w : train_.neighbors(x)) {
                    if (scratch_.stamp[w] != scratch_.epoch) {
                        scratch_.stamp[w] = scratch_.epoch;
                        scratch_.acc[w] = 0.0;
                    }
                    scratch_.acc[w] += weight;
                }
            }
        }
    }

    bool admissible(NodeId w) const {
        if (w == keep_ || w == other_) return false;
        if (scratch_.adj_stamp[w] == scratch_.adj_epoch) return false;  // full-graph edge
        if (!known_.extra_empty() && known_.contains(make_edge(keep_, w))) return false;
        return true;
    }

    Candidate make_candidate(NodeId w) const {
        const Edge pair = make_edge(keep_, w);
        double score = 0.0;
        switch (kind_) {
            case HeuristicKind::common_neighbors:
            case HeuristicKind::resource_allocation:
                score = scratch_.stamp[w] == scratch_.epoch ? scratch_.acc[w] : 0.0;
                break;
            case HeuristicKind::preferential_attachment:
                score = preferential_attachment(train_, pair.u, pair.v);
                break;
            case HeuristicKind::shortest_path:
                score = shortest_path_score(train_, pair.u, pair.v);
                break;
        }
        return Candidate{score, hash_u64(seed_, positive_.u, positive_.v, pair.u, pair.v), pair};
    }

private:
    const KnownPositives& known_;
    const Graph& train_;
    Edge positive_;
    HeuristicKind kind_;
    std::uint64_t seed_;
    NegScratch& scratch_;
    NodeId keep_ = 0;
    NodeId other_ = 0;
};

// Keep the top-k candidates of a stream under the total order. The heap
// root is the worst kept element.
class TopK {
public:
    explicit TopK(std::size_t k) : k_(k) {}

    void offer(const Candidate& c) {
        if (k_ == 0) return;
        if (heap_.size() < k_) {
            heap_.push_back(c);
            std::push_heap(heap_.begin(), heap_.end(), better);
        } else if (better(c, heap_.front())) {
            std::pop_heap(heap_.begin(), heap_.end(), better);
            heap_.back() = c;
            std::push_heap(heap_.begin(), heap_.end(), better);
        }
    }

    std::vector<Candidate> ranked() && {
        std::sort(heap_.begin(), heap_.end(), better);
        return std::move(heap_);
    }

private:
    std::size_t k_;
    std::vector<Candidate> heap_;
};

std::vector<Edge> generate_with_scratch(const KnownPositives& known, const Graph& train_graph, Edge positive,
                                        std::uint32_t m, HeuristicKind kind, std::uint64_t seed,
                                        NegScratch& scratch) {
    if (m == 0) return {};
    const NodeId n = train_graph.num_nodes();
    scratch.prepare(n);
    SideScorer scorer(known, train_graph, positive, kind, seed, scratch);

    Side sides[2] = {Side{positive.u, 0}, Side{positive.v, 0}};
    const NodeId others[2] = {positive.v, positive.u};

    // Pass 1: availability per side, so backfill budgets are exact.
    for (int s = 0; s < 2; ++s) {
        scorer.begin_side(sides[s].keep, others[s]);
        std::uint64_t avail = 0;
        for (NodeId w = 0; w < n; ++w) avail += scorer.admissible(w) ? 1 : 0;
        sides[s].available = avail;
    }
    const std::uint64_t total_available = sides[0].available + sides[1].available;
    if (total_available == 0) {
        std::ostringstream msg;
        msg << "no negative candidates exist for positive (" << positive.u << "," << positive.v << ")";
        throw std::runtime_error(msg.str());
    }

    // Even split of the budget (keep-u side gets the odd extra), short
    // sides backfilled from the other.
    std::uint64_t take[2] = {(m + 1) / 2, m / 2};
    take[0] = std::min(take[0], sides[0].available);
    take[1] = std::min(take[1], sides[1].available);
    std::uint64_t leftover = m - take[0] - take[1];
    for (int s = 0; s < 2 && leftover > 0; ++s) {
        const std::uint64_t extra = std::min(leftover, sides[s].available - take[s]);
        take[s] += extra;
        leftover -= extra;
    }

    // Pass 2: bounded top-k selection per side.
    std::vector<Edge> out;
    out.reserve(take[0] + take[1]);
    for (int s = 0; s < 2; ++s) {
        if (take[s] == 0) continue;
        scorer.begin_side(sides[s].keep, others[s]);
        TopK top(static_cast<std::size_t>(take[s]));
        for (NodeId w = 0; w < n; ++w)
            if (scorer.admissible(w)) top.offer(scorer.make_candidate(w));
        for (const Candidate& c : std::move(top).ranked()) out.push_back(c.pair);
    }
    return out;
}

}  // namespace

std::vector<Edge> generate_negatives(const KnownPositives& known, const Graph& train_graph, Edge positive,
                                     std::uint32_t m, HeuristicKind kind, std::uint64_t seed) {
    NegScratch scratch;
    return generate_with_scratch(known, train_graph, positive, m, kind, seed, scratch);
}

NegativeTable generate_negative_table(const Graph& full_graph, const LoadedSplit& split,
                                      std::span<const Edge> positives, std::uint32_t m, HeuristicKind kind,
                                      std::uint64_t seed, int threads) {
    KnownPositives known(full_graph, split);
    NegativeTable table;
    table.positives.assign(positives.begin(), positives.end());
    table.negatives.resize(positives.size());
    table.m = m;
    table.heuristic = kind;
    table.seed = seed;

    std::string first_error;
    std::mutex error_mutex;
    parallel_for_workers(positives.size(), threads, [&](int, std::size_t begin, std::size_t end) {
        NegScratch scratch;
        for (std::size_t i = begin; i < end; ++i) {
            try {
                table.negatives[i] =
                    generate_with_scratch(known, split.train_graph, positives[i], m, kind, seed, scratch);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error.empty()) first_error = e.what();
                return;
            }
        }
    });
    if (!first_error.empty()) throw std::runtime_error(first_error);

    for (const auto& negs : table.negatives)
        if (negs.size() < m) ++table.shortfall_positives;
    return table;
}

void write_negatives(const NegativeTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write negatives: " + path);
    out << "# lpshift-negatives-v1 m=" << table.m << " heuristic=" << to_string(table.heuristic)
        << " seed=" << table.seed << '\n';
    for (std::size_t i = 0; i < table.positives.size(); ++i) {
        out << table.positives[i].u << ' ' << table.positives[i].v << " |";
        for (const Edge& e : table.negatives[i]) out << ' ' << e.u << ' ' << e.v;
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

NegativeTable read_negatives(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open negatives: " + path);
    NegativeTable table;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# lpshift-negatives-v1", 0) != 0)
        throw std::runtime_error(path + ": missing negatives header");
    {
        std::istringstream hs(line.substr(std::string("# lpshift-negatives-v1").size()));
        std::string tok;
        while (hs >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) throw std::runtime_error(path + ": malformed header token '" + tok + "'");
            const std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
            if (key == "m") {
                table.m = static_cast<std::uint32_t>(std::stoul(value));
            } else if (key == "heuristic") {
                const auto kind = heuristic_from_string(value);
                if (!kind) throw std::runtime_error(path + ": unknown heuristic '" + value + "'");
                table.heuristic = *kind;
            } else if (key == "seed") {
                table.seed = std::stoull(value);
            }
        }
    }
    std::uint64_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        NodeId u = 0, v = 0;
        std::string bar;
        if (!(ls >> u >> v >> bar) || bar != "|")
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed negatives line");
        table.positives.push_back(make_edge(u, v));
        std::vector<Edge> negs;
        NodeId a = 0, b = 0;
        while (ls >> a >> b) negs.push_back(make_edge(a, b));
        if (!ls.eof()) throw std::runtime_error(path + ":" + std::to_string(line_no) + ": trailing tokens");
        table.negatives.push_back(std::move(negs));
    }
    for (const auto& negs : table.negatives)
        if (negs.size() < table.m) ++table.shortfall_positives;
    return table;
}

}  // namespace lpshift
