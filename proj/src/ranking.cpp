#include "lpshift/ranking.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace lpshift {

using ordered_json = nlohmann::ordered_json;

double rank_sample(double positive_score, std::span<const double> negative_scores) {
    if (negative_scores.empty()) throw std::invalid_argument("rank_sample requires at least one negative");
    std::uint64_t greater = 0, equal = 0;
    for (double s : negative_scores) {
        if (s > positive_score) {
            ++greater;
        } else if (s == positive_score) {
            ++equal;
        }
    }
    return 1.0 + static_cast<double>(greater) + static_cast<double>(equal) / 2.0;
}

RankingReport evaluate_ranks(std::string method, std::string split_id, std::vector<double> ranks,
                             std::span<const int> ks, std::uint32_t m) {
    if (ranks.empty()) throw std::invalid_argument("evaluate_ranks requires at least one sample");
    if (ks.empty()) throw std::invalid_argument("evaluate_ranks requires at least one k");
    RankingReport report;
    report.method = std::move(method);
    report.split_id = std::move(split_id);
    report.m = m;
    double sum_reciprocal = 0.0;
    for (double r : ranks) sum_reciprocal += 1.0 / r;
    report.mrr = sum_reciprocal / static_cast<double>(ranks.size());
    for (int k : ks) {
        std::uint64_t hits = 0;
        for (double r : ranks)
            if (r <= static_cast<double>(k)) ++hits;
        report.hits_at[k] = static_cast<double>(hits) / static_cast<double>(ranks.size());
    }
    report.ranks = std::move(ranks);
    return report;
}

ordered_json RankingReport::to_json() const {
    ordered_json j;
    j["method"] = method;
    j["split"] = split_id;
    j["m"] = m;
    j["tie_convention"] = "average";
    j["mrr"] = mrr;
    ordered_json hits;
    for (const auto& [k, v] : hits_at) hits[std::to_string(k)] = v;
    j["hits"] = std::move(hits);
    j["n"] = ranks.size();
    return j;
}

MeanRankTable mean_rank(std::span<const RankingReport> reports, int k) {
    if (reports.empty()) throw std::invalid_argument("mean_rank requires at least one report");

    std::map<std::string, std::map<std::string, double>> hits_by_split;  // split -> method -> hits@k
    std::set<std::string> methods;
    for (const RankingReport& r : reports) {
        const auto it = r.hits_at.find(k);
        if (it == r.hits_at.end())
            throw std::invalid_argument("report " + r.method + "/" + r.split_id + " lacks Hits@" + std::to_string(k));
        auto [pos, inserted] = hits_by_split[r.split_id].emplace(r.method, it->second);
        if (!inserted) throw std::invalid_argument("duplicate report for " + r.method + "/" + r.split_id);
        methods.insert(r.method);
    }
    for (const auto& [split, by_method] : hits_by_split) {
        if (by_method.size() != methods.size())
            throw std::invalid_argument("split " + split + " is missing some methods; mean_rank needs a full grid");
    }

    std::map<std::string, double> ordinal_sum;
    for (const auto& [split, by_method] : hits_by_split) {
        std::vector<std::pair<double, std::string>> order;  // (-hits, method) ascending = hits descending
        order.reserve(by_method.size());
        for (const auto& [method, hits] : by_method) order.emplace_back(-hits, method);
        std::sort(order.begin(), order.end());
        // Average ordinals across ties on hits.
        std::size_t i = 0;
        while (i < order.size()) {
            std::size_t j = i;
            while (j < order.size() && order[j].first == order[i].first) ++j;
            const double shared = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
            for (std::size_t t = i; t < j; ++t) ordinal_sum[order[t].second] += shared;
            i = j;
        }
    }

    MeanRankTable table;
    for (const auto& [split, by_method] : hits_by_split) table.split_ids.push_back(split);
    const double num_splits = static_cast<double>(hits_by_split.size());
    for (const auto& [method, sum] : ordinal_sum) table.mean_rank_by_method.emplace_back(method, sum / num_splits);
    std::sort(table.mean_rank_by_method.begin(), table.mean_rank_by_method.end(),
              [](const auto& a, const auto& b) { return a.second != b.second ? a.second < b.second : a.first < b.first; });
    return table;
}

}  // namespace lpshift
