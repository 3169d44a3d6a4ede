#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpshift/graph.hpp"

namespace lpshift {

// The three split-driving heuristics plus the RA baseline predictor.
enum class HeuristicKind { common_neighbors, preferential_attachment, shortest_path, resource_allocation };

// Short names used in CLI flags, manifests and file names: cn, pa, sp, ra.
std::string_view to_string(HeuristicKind kind);
std::optional<HeuristicKind> heuristic_from_string(std::string_view name);

// |N(u) ∩ N(v)|, linear merge over sorted neighbor lists with a galloping
// fallback when the degrees are badly skewed.
double common_neighbors(const Graph& g, NodeId u, NodeId v);

// degree(u) * degree(v). Degrees include the scored edge itself when it
// exists; scoring never mutates the graph.
double preferential_attachment(const Graph& g, NodeId u, NodeId v);

// 1/d for the BFS distance d between u and v with the direct edge (u,v),
// when present, excluded from the traversal; 0 when disconnected. For an
// existing edge this is at most 1/2.
double shortest_path_score(const Graph& g, NodeId u, NodeId v);

// Σ 1/degree(w) over common neighbors w.
double resource_allocation(const Graph& g, NodeId u, NodeId v);

double score_pair(const Graph& g, NodeId u, NodeId v, HeuristicKind kind);

// Batch scoring. Output order matches the input pair order (for
// score_all_edges: the canonical edge order) regardless of worker count.
std::vector<double> score_pairs(const Graph& g, std::span<const Edge> pairs, HeuristicKind kind, int threads = 0);
std::vector<double> score_all_edges(const Graph& g, HeuristicKind kind, int threads = 0);

// Score dump: "u<TAB>v<TAB>score" with shortest round-trip decimals.
void write_score_dump(const Graph& g, HeuristicKind kind, const std::string& path, int threads = 0);

// Shortest round-trip decimal formatting, shared by all text emitters.
std::string format_double(double value);

}  // namespace lpshift
