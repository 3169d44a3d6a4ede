#include "lpshift/augment.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "lpshift/parallel.hpp"
#include "lpshift/rng.hpp"

namespace lpshift {

Graph drop_edge(const Graph& g, double p, std::uint64_t seed, std::uint64_t draw_index) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("drop probability must be in [0,1]");
    std::vector<Edge> kept;
    kept.reserve(g.num_edges());
    g.for_each_edge([&](Edge e) {
        const double draw = unit_double(hash_u64(seed, draw_index, e.u, e.v));
        if (!(draw < p)) kept.push_back(e);
    });
    return build_graph(kept, g.num_nodes());
}

namespace {

// Non-adjacent pairs at distance exactly two, i.e. all pairs with at
// least one common neighbor.
std::vector<Edge> two_hop_candidates(const Graph& g) {
    std::vector<Edge> cands;
    for (NodeId w = 0; w < g.num_nodes(); ++w) {
        const auto nb = g.neighbors(w);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                if (!g.has_edge(nb[i], nb[j])) cands.push_back(Edge{nb[i], nb[j]});
            }
        }
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    return cands;
}

}  // namespace

EpsResult eps_filter(const Graph& g, HeuristicKind filter_heuristic, std::uint64_t k, std::uint64_t seed,
                     int threads) {
    EpsResult result;
    std::vector<Edge> cands = two_hop_candidates(g);
    result.candidate_pool = cands.size();
    if (k >= cands.size()) {
        result.pool_exhausted = k > cands.size();
        result.added = cands.size();
    } else {
        const std::vector<double> scores = score_pairs(g, cands, filter_heuristic, threads);
        std::vector<std::size_t> order(cands.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        auto better = [&](std::size_t a, std::size_t b) {
            if (scores[a] != scores[b]) return scores[a] > scores[b];
            const std::uint64_t ka = hash_u64(seed, cands[a].u, cands[a].v);
            const std::uint64_t kb = hash_u64(seed, cands[b].u, cands[b].v);
            if (ka != kb) return ka < kb;
            return cands[a] < cands[b];
        };
        std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), better);
        order.resize(static_cast<std::size_t>(k));
        std::vector<Edge> top;
        top.reserve(order.size());
        for (std::size_t i : order) top.push_back(cands[i]);
        std::sort(top.begin(), top.end());
        cands = std::move(top);
        result.added = cands.size();
    }

    std::vector<Edge> all = g.edges();
    all.insert(all.end(), cands.begin(), cands.end());
    result.graph = build_graph(all, g.num_nodes());
    return result;
}

std::string AugmentSpec::label() const {
    if (kind == Kind::drop_edge) return "dropedge_p" + format_double(p);
    return "eps_" + std::string(to_string(filter)) + "_k" + std::to_string(k);
}

AugmentSpec AugmentSpec::parse(const std::string& text) {
    AugmentSpec spec;
    const auto first = text.find(':');
    const std::string head = text.substr(0, first);
    if (head == "dropedge") {
        if (first == std::string::npos) throw std::invalid_argument("dropedge needs a probability: 'dropedge:P'");
        const std::string rest = text.substr(first + 1);
        double p = 0.0;
        const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), p);
        if (ec != std::errc{} || ptr != rest.data() + rest.size() || !(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("bad dropedge probability: '" + rest + "'");
        spec.kind = Kind::drop_edge;
        spec.p = p;
        return spec;
    }
    if (head == "eps") {
        if (first == std::string::npos) throw std::invalid_argument("eps needs 'eps:HEURISTIC:K'");
        const auto second = text.find(':', first + 1);
        if (second == std::string::npos) throw std::invalid_argument("eps needs 'eps:HEURISTIC:K'");
        const std::string hname = text.substr(first + 1, second - first - 1);
        const auto kind = heuristic_from_string(hname);
        if (!kind) throw std::invalid_argument("unknown eps filter heuristic: '" + hname + "'");
        const std::string rest = text.substr(second + 1);
        std::uint64_t k = 0;
        const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
        if (ec != std::errc{} || ptr != rest.data() + rest.size())
            throw std::invalid_argument("bad eps k: '" + rest + "'");
        spec.kind = Kind::eps_filter;
        spec.filter = *kind;
        spec.k = k;
        return spec;
    }
    throw std::invalid_argument("unknown augmentation '" + text + "' (expected dropedge:P or eps:HEURISTIC:K)");
}

Graph apply_augmentation(const Graph& g, const AugmentSpec& spec, std::uint64_t seed, int threads) {
    if (spec.kind == AugmentSpec::Kind::drop_edge) return drop_edge(g, spec.p, seed);
    return eps_filter(g, spec.filter, spec.k, seed, threads).graph;
}

}  // namespace lpshift
