#include "lpshift/emd.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace lpshift {

ScoreDistribution ScoreDistribution::from_samples(std::vector<double> samples) {
    if (samples.empty()) throw std::invalid_argument("a score distribution needs at least one sample");
    std::sort(samples.begin(), samples.end());
    ScoreDistribution d;
    d.form = Form::samples;
    d.values = std::move(samples);
    d.validate();
    return d;
}

ScoreDistribution ScoreDistribution::from_histogram(std::vector<double> bin_edges, std::vector<double> masses) {
    ScoreDistribution d;
    d.form = Form::histogram;
    d.bin_edges = std::move(bin_edges);
    d.masses = std::move(masses);
    d.validate();
    return d;
}

void ScoreDistribution::validate() const {
    if (form == Form::samples) {
        if (values.empty()) throw std::invalid_argument("empty sample distribution");
        if (!std::is_sorted(values.begin(), values.end())) throw std::invalid_argument("samples must be sorted");
        for (double v : values)
            if (!std::isfinite(v)) throw std::invalid_argument("sample values must be finite");
        return;
    }
    if (masses.empty() || bin_edges.size() != masses.size() + 1)
        throw std::invalid_argument("histogram needs k masses and k+1 bin edges");
    for (std::size_t i = 1; i < bin_edges.size(); ++i)
        if (!(bin_edges[i - 1] < bin_edges[i])) throw std::invalid_argument("bin edges must be strictly increasing");
    double total = 0.0;
    for (double m : masses) {
        if (!(m >= 0.0)) throw std::invalid_argument("histogram masses must be non-negative");
        total += m;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("histogram mass must sum to 1 within 1e-12");
}

ScoreDistribution collect_distribution(const Graph& g, std::span<const Edge> edges, HeuristicKind kind,
                                       int threads) {
    if (edges.empty()) throw std::invalid_argument("collect_distribution: empty edge set");
    return ScoreDistribution::from_samples(score_pairs(g, edges, kind, threads));
}

namespace {

// Point-mass view of either form: (position, mass) pairs ascending.
// Histograms are represented by their bin midpoints.
void append_point_masses(const ScoreDistribution& d, std::vector<std::pair<double, double>>& out) {
    if (d.form == ScoreDistribution::Form::samples) {
        const double mass = 1.0 / static_cast<double>(d.values.size());
        for (double v : d.values) out.emplace_back(v, mass);
        return;
    }
    for (std::size_t i = 0; i < d.masses.size(); ++i)
        out.emplace_back((d.bin_edges[i] + d.bin_edges[i + 1]) / 2.0, d.masses[i]);
}

}  // namespace

ScoreDistribution to_histogram(const ScoreDistribution& samples, int bins) {
    if (samples.form != ScoreDistribution::Form::samples)
        throw std::invalid_argument("to_histogram expects a sample distribution");
    if (bins < 1) throw std::invalid_argument("to_histogram needs at least one bin");
    const double mn = samples.values.front();
    const double mx = samples.values.back();
    std::vector<double> edges;
    std::vector<double> masses;
    if (mn == mx) {
        edges = {mn - 0.5, mn + 0.5};
        masses = {1.0};
        return ScoreDistribution::from_histogram(std::move(edges), std::move(masses));
    }
    edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int i = 0; i <= bins; ++i) edges[static_cast<std::size_t>(i)] = mn + (mx - mn) * i / bins;
    edges.back() = mx;
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(bins), 0);
    const double width = (mx - mn) / bins;
    for (double v : samples.values) {
        int bin = static_cast<int>((v - mn) / width);
        if (bin >= bins) bin = bins - 1;
        if (bin < 0) bin = 0;
        ++counts[static_cast<std::size_t>(bin)];
    }
    masses.resize(counts.size());
    const double unit = 1.0 / static_cast<double>(samples.values.size());
    for (std::size_t i = 0; i < counts.size(); ++i) masses[i] = static_cast<double>(counts[i]) * unit;
    return ScoreDistribution::from_histogram(std::move(edges), std::move(masses));
}

EmdResult emd_1d(const ScoreDistribution& p, const ScoreDistribution& q) {
    p.validate();
    q.validate();

    std::vector<std::pair<double, double>> pp, qq;  // (position, mass), ascending
    append_point_masses(p, pp);
    append_point_masses(q, qq);

    EmdResult result;
    result.method = (p.form == ScoreDistribution::Form::samples && q.form == ScoreDistribution::Form::samples)
                        ? "exact-1d"
                        : "histogram";
    result.n_p = p.sample_count();
    result.n_q = q.sample_count();

    // Walk the merged support accumulating |CDF_p - CDF_q| * gap.
    double emd = 0.0;
    double cdf_p = 0.0, cdf_q = 0.0;
    std::size_t i = 0, j = 0;
    double prev = 0.0;
    bool first = true;
    while (i < pp.size() || j < qq.size()) {
        const double x = (j >= qq.size() || (i < pp.size() && pp[i].first <= qq[j].first)) ? pp[i].first
                                                                                           : qq[j].first;
        if (!first) emd += std::abs(cdf_p - cdf_q) * (x - prev);
        while (i < pp.size() && pp[i].first == x) cdf_p += pp[i++].second;
        while (j < qq.size() && qq[j].first == x) cdf_q += qq[j++].second;
        prev = x;
        first = false;
    }
    result.value = emd;
    return result;
}

void write_emd_csv(std::span<const EmdReportRow> rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write emd csv: " + path);
    out << "split_label,heuristic,variant,emd\n";
    for (const EmdReportRow& r : rows)
        out << r.split_label << ',' << r.heuristic << ',' << r.variant << ',' << format_double(r.emd) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace lpshift
