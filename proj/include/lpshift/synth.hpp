#pragma once

#include <cstdint>
#include <vector>

#include "lpshift/graph.hpp"

namespace lpshift {

// Barabasi-Albert preferential attachment. Starts from a complete
// graph on `attach` seed nodes; every later node attaches `attach`
// edges to distinct existing nodes sampled proportionally to degree.
// Edge count is exactly attach*(n-attach) + attach*(attach-1)/2.
std::vector<Edge> generate_ba(NodeId n, std::uint32_t attach, std::uint64_t seed);

// Erdos-Renyi G(n,p); each pair decided by a pure function of
// (seed, u, v).
std::vector<Edge> generate_er(NodeId n, double p, std::uint64_t seed);

}  // namespace lpshift
