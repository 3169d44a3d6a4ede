#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lpshift/graph.hpp"
#include "lpshift/heuristics.hpp"
#include "vendor_json.hpp"

namespace lpshift {

// Average-tie rank of the positive within its candidate set:
//   1 + #{negatives scoring higher} + #{negatives scoring equal}/2.
// Throws on an empty negative list.
double rank_sample(double positive_score, std::span<const double> negative_scores);

struct RankingReport {
    std::string method;    // heuristic short name
    std::string split_id;  // e.g. "cn_0_1_2_forward:test"
    double mrr = 0.0;
    std::map<int, double> hits_at;  // k -> fraction of ranks <= k
    std::vector<double> ranks;      // per-sample, same order as the positives
    std::uint32_t m = 0;            // negatives per positive

    nlohmann::ordered_json to_json() const;
};

// MRR and Hits@k from per-sample ranks. ks must be non-empty.
RankingReport evaluate_ranks(std::string method, std::string split_id, std::vector<double> ranks,
                             std::span<const int> ks, std::uint32_t m);

// Table-3 style aggregation: per split, methods are ordered by
// descending Hits@k (ties share the average ordinal); ordinals are then
// averaged across splits. Every method must appear in every split.
struct MeanRankTable {
    std::vector<std::string> split_ids;
    std::vector<std::pair<std::string, double>> mean_rank_by_method;  // sorted ascending by rank, then name
};

MeanRankTable mean_rank(std::span<const RankingReport> reports, int k = 20);

}  // namespace lpshift
