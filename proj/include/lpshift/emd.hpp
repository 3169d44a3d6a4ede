#pragma once

#include <span>
#include <string>
#include <vector>

#include "lpshift/graph.hpp"
#include "lpshift/heuristics.hpp"

namespace lpshift {

// A normalized 1-D score distribution: either raw samples (each with
// mass 1/n) or a histogram over bins. Mass must sum to 1 within 1e-12.
struct ScoreDistribution {
    enum class Form { samples, histogram };

    Form form = Form::samples;
    std::vector<double> values;    // samples form: sorted sample values
    std::vector<double> bin_edges; // histogram form: size masses.size()+1, strictly increasing
    std::vector<double> masses;    // histogram form: per-bin mass

    static ScoreDistribution from_samples(std::vector<double> samples);
    static ScoreDistribution from_histogram(std::vector<double> bin_edges, std::vector<double> masses);

    std::size_t sample_count() const { return form == Form::samples ? values.size() : masses.size(); }
    void validate() const;  // throws on unnormalized or malformed input
};

// Heuristic scores of the given edges computed on g (pass the train
// graph for the shift a model actually sees, or the original graph).
ScoreDistribution collect_distribution(const Graph& g, std::span<const Edge> edges, HeuristicKind kind,
                                       int threads = 0);

struct EmdResult {
    double value = 0.0;
    std::string method;  // "exact-1d" or "histogram"
    std::size_t n_p = 0, n_q = 0;
};

// Exact 1-D Earth Mover's Distance: the integral of |CDF_p - CDF_q|
// over the merged support. Histogram inputs are evaluated on their bin
// midpoints.
EmdResult emd_1d(const ScoreDistribution& p, const ScoreDistribution& q);

// Lossy uniform-bin reduction for very large sample sets. A point-mass
// input keeps its position (bins centered on the value).
ScoreDistribution to_histogram(const ScoreDistribution& samples, int bins);

struct EmdReportRow {
    std::string split_label;
    std::string heuristic;
    std::string variant;  // "baseline", "dropedge_p0.3", "eps_k100", ...
    double emd = 0.0;
};

// emd.csv: "split_label,heuristic,variant,emd" with shortest round-trip
// decimals.
void write_emd_csv(std::span<const EmdReportRow> rows, const std::string& path);

}  // namespace lpshift
