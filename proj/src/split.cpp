#include "lpshift/split.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "lpshift/rng.hpp"

namespace lpshift {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string_view to_string(SplitDirection d) {
    return d == SplitDirection::forward ? "forward" : "inverse";
}

std::optional<SplitDirection> direction_from_string(std::string_view name) {
    if (name == "forward" || name == "fwd") return SplitDirection::forward;
    if (name == "inverse" || name == "inv") return SplitDirection::inverse;
    return std::nullopt;
}

void SplitSpec::validate() const {
    if (!std::isfinite(train_bound) || !std::isfinite(valid_bound) || !std::isfinite(test_min))
        throw std::invalid_argument("split bounds must be finite scores");
    if (!(train_bound <= valid_bound && valid_bound <= test_min))
        throw std::invalid_argument("split bounds must satisfy train_bound <= valid_bound <= test_min");
    if (valid_cap < 1 || test_cap < 1) throw std::invalid_argument("caps must be >= 1");
    if (train_cap && *train_cap < 1) throw std::invalid_argument("train cap must be >= 1");
}

std::string SplitSpec::label() const {
    std::string out(to_string(heuristic));
    for (const std::string& l : triple_labels) {
        out += '_';
        out += l.empty() ? "x" : l;
    }
    out += '_';
    out += to_string(direction);
    return out;
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    if (b == std::string_view::npos) return {};
    return std::string(s.substr(b, e - b + 1));
}

bool is_infinity_label(const std::string& s) {
    return s == "inf" || s == "infinity" || s == "oo" || s == "∞";
}

double parse_number(const std::string& s, const std::string& what) {
    double value = 0.0;
    const char* b = s.data();
    const char* e = b + s.size();
    const auto [ptr, ec] = std::from_chars(b, e, value);
    if (ec != std::errc{} || ptr != e) throw std::invalid_argument(what + " '" + s + "' is not a number");
    return value;
}

}  // namespace

SplitSpec make_split_spec(HeuristicKind kind, const std::string& triple, SplitDirection direction) {
    std::array<std::string, 3> labels;
    {
        std::size_t pos = 0;
        for (int i = 0; i < 3; ++i) {
            const std::size_t comma = triple.find(',', pos);
            if (i < 2 && comma == std::string::npos)
                throw std::invalid_argument("threshold triple must have three comma-separated values: '" + triple + "'");
            if (i == 2 && comma != std::string::npos)
                throw std::invalid_argument("threshold triple has more than three values: '" + triple + "'");
            labels[i] = trim(triple.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
            for (char& c : labels[i]) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            if (is_infinity_label(labels[i])) labels[i] = "inf";
            pos = comma + 1;
        }
    }

    auto to_score = [&](const std::string& label) -> double {
        if (kind == HeuristicKind::shortest_path) {
            // Labels are path lengths; infinity means disconnected (score 0).
            if (label == "inf") return 0.0;
            const double len = parse_number(label, "path length");
            if (!(len > 0.0)) throw std::invalid_argument("path length must be positive: '" + label + "'");
            return 1.0 / len;
        }
        const double score = parse_number(label, "threshold");
        if (score < 0.0) throw std::invalid_argument("threshold must be non-negative: '" + label + "'");
        return score;
    };

    SplitSpec spec;
    spec.heuristic = kind;
    spec.direction = direction;
    spec.triple_labels = labels;
    spec.train_bound = to_score(labels[0]);
    spec.valid_bound = to_score(labels[1]);
    spec.test_min = to_score(labels[2]);
    spec.validate();
    return spec;
}

CategorizedEdges categorize_edges(const Graph& g, const SplitSpec& spec, int threads) {
    spec.validate();
    CategorizedEdges cat;
    cat.edges = g.edges();
    cat.scores = score_pairs(g, cat.edges, spec.heuristic, threads);
    cat.categories.resize(cat.edges.size());
    for (std::size_t i = 0; i < cat.scores.size(); ++i) {
        const double h = cat.scores[i];
        EdgeCategory c;
        if (h <= spec.train_bound) {
            c = EdgeCategory::train;
        } else if (h <= spec.valid_bound) {
            c = EdgeCategory::valid;
        } else if (h >= spec.test_min) {
            c = EdgeCategory::test;
        } else {
            c = EdgeCategory::gap;
        }
        cat.categories[i] = c;
    }
    return cat;
}

void apply_direction(CategorizedEdges& cat, SplitDirection direction) {
    if (direction == SplitDirection::forward) return;
    for (EdgeCategory& c : cat.categories) {
        if (c == EdgeCategory::train) {
            c = EdgeCategory::test;
        } else if (c == EdgeCategory::test) {
            c = EdgeCategory::train;
        }
    }
}

namespace {

ScoreHistogram make_histogram(const std::vector<double>& values) {
    ScoreHistogram h;
    if (values.empty()) return h;
    const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
    const double mn = *mn_it, mx = *mx_it;
    if (mn == mx) {
        h.bin_edges = {mn, mx};
        h.counts = {values.size()};
        return h;
    }
    constexpr int kBins = 32;
    h.bin_edges.resize(kBins + 1);
    for (int i = 0; i <= kBins; ++i) h.bin_edges[i] = mn + (mx - mn) * static_cast<double>(i) / kBins;
    h.bin_edges.back() = mx;
    h.counts.assign(kBins, 0);
    const double width = (mx - mn) / kBins;
    for (double v : values) {
        int bin = static_cast<int>((v - mn) / width);
        if (bin >= kBins) bin = kBins - 1;  // max value lands in the last bin
        if (bin < 0) bin = 0;
        ++h.counts[static_cast<std::size_t>(bin)];
    }
    return h;
}

}  // namespace

DatasetSplit finalize_split(const Graph& g, const CategorizedEdges& cat, const SplitSpec& spec) {
    spec.validate();
    const std::size_t n_edges = cat.edges.size();
    if (cat.scores.size() != n_edges || cat.categories.size() != n_edges)
        throw std::invalid_argument("categorization arrays disagree in length");

    std::vector<std::size_t> train_idx, valid_idx, test_idx;
    DroppedCounts dropped;
    for (std::size_t i = 0; i < n_edges; ++i) {
        switch (cat.categories[i]) {
            case EdgeCategory::train: train_idx.push_back(i); break;
            case EdgeCategory::valid: valid_idx.push_back(i); break;
            case EdgeCategory::test: test_idx.push_back(i); break;
            case EdgeCategory::gap: ++dropped.gap; break;
        }
    }

    // Caps first, then filters; final counts may fall below the caps.
    auto apply_cap = [&spec](std::vector<std::size_t>& idx, std::uint64_t cap, std::string_view stream,
                             std::uint64_t& dropped_slot) {
        if (idx.size() <= cap) return;
        Rng rng(derive_seed(spec.seed, stream));
        partial_shuffle(idx, static_cast<std::size_t>(cap), rng);
        dropped_slot = idx.size() - cap;
        idx.resize(static_cast<std::size_t>(cap));
        std::sort(idx.begin(), idx.end());
    };
    if (spec.train_cap) apply_cap(train_idx, *spec.train_cap, "train-cap", dropped.cap_train);
    apply_cap(valid_idx, spec.valid_cap, "valid-cap", dropped.cap_valid);
    apply_cap(test_idx, spec.test_cap, "test-cap", dropped.cap_test);

    std::unordered_set<std::uint64_t> train_keys;
    train_keys.reserve(train_idx.size() * 2);
    for (std::size_t i : train_idx) train_keys.insert(edge_key(cat.edges[i]));

    std::vector<char> covered(g.num_nodes(), 0);
    for (std::size_t i : train_idx) {
        covered[cat.edges[i].u] = 1;
        covered[cat.edges[i].v] = 1;
    }

    auto filter_eval = [&](std::vector<std::size_t>& idx) {
        std::vector<std::size_t> kept;
        kept.reserve(idx.size());
        for (std::size_t i : idx) {
            const Edge& e = cat.edges[i];
            if (train_keys.contains(edge_key(e))) {
                ++dropped.duplicate;
            } else if (!covered[e.u] || !covered[e.v]) {
                ++dropped.uncovered;
            } else {
                kept.push_back(i);
            }
        }
        idx = std::move(kept);
    };
    filter_eval(valid_idx);
    filter_eval(test_idx);

    if (train_idx.empty()) throw std::runtime_error("split produced an empty train set; no graph to learn from");

    DatasetSplit ds;
    auto materialize = [&cat](const std::vector<std::size_t>& idx, std::vector<Edge>& edges, std::vector<double>& scores) {
        edges.reserve(idx.size());
        scores.reserve(idx.size());
        for (std::size_t i : idx) {
            edges.push_back(cat.edges[i]);
            scores.push_back(cat.scores[i]);
        }
    };
    std::vector<double> train_scores, valid_scores, test_scores;
    materialize(train_idx, ds.train_edges, train_scores);
    materialize(valid_idx, ds.valid_edges, valid_scores);
    materialize(test_idx, ds.test_edges, test_scores);

    ds.train_graph = build_graph(ds.train_edges, g.num_nodes());

    SplitManifest& m = ds.manifest;
    m.spec = spec;
    m.input_nodes = g.num_nodes();
    m.input_edges = n_edges;
    m.input_sha256 = edge_set_sha256(cat.edges);
    m.train_count = ds.train_edges.size();
    m.valid_count = ds.valid_edges.size();
    m.test_count = ds.test_edges.size();
    m.dropped = dropped;
    m.train_hist = make_histogram(train_scores);
    m.valid_hist = make_histogram(valid_scores);
    m.test_hist = make_histogram(test_scores);
    if (ds.valid_edges.empty()) m.warnings.push_back("valid split is empty");
    if (ds.test_edges.empty()) m.warnings.push_back("test split is empty");
    if (!m.reconciles()) throw std::logic_error("split manifest counts do not reconcile");
    return ds;
}

namespace {

ordered_json histogram_to_json(const ScoreHistogram& h) {
    return ordered_json{{"bin_edges", h.bin_edges}, {"counts", h.counts}};
}

ScoreHistogram histogram_from_json(const ordered_json& j) {
    ScoreHistogram h;
    h.bin_edges = j.at("bin_edges").get<std::vector<double>>();
    h.counts = j.at("counts").get<std::vector<std::uint64_t>>();
    return h;
}

}  // namespace

ordered_json SplitManifest::to_json() const {
    ordered_json j;
    j["format"] = "lpshift-split-manifest-v1";
    j["label"] = spec.label();
    ordered_json js;
    js["heuristic"] = std::string(to_string(spec.heuristic));
    js["triple"] = spec.triple_labels;
    js["score_bounds"] = ordered_json{{"train_bound", spec.train_bound},
                                      {"valid_bound", spec.valid_bound},
                                      {"test_min", spec.test_min}};
    js["direction"] = std::string(to_string(spec.direction));
    js["valid_cap"] = spec.valid_cap;
    js["test_cap"] = spec.test_cap;
    if (spec.train_cap) {
        js["train_cap"] = *spec.train_cap;
    } else {
        js["train_cap"] = nullptr;
    }
    js["seed"] = spec.seed;
    j["spec"] = std::move(js);
    j["input"] = ordered_json{{"nodes", input_nodes}, {"edges", input_edges}, {"sha256", input_sha256}};
    j["counts"] = ordered_json{{"train", train_count}, {"valid", valid_count}, {"test", test_count}};
    j["dropped"] = ordered_json{
        {"gap", dropped.gap},
        {"duplicate", dropped.duplicate},
        {"uncovered", dropped.uncovered},
        {"cap", ordered_json{{"train", dropped.cap_train}, {"valid", dropped.cap_valid}, {"test", dropped.cap_test}}}};
    j["histograms"] = ordered_json{{"train", histogram_to_json(train_hist)},
                                   {"valid", histogram_to_json(valid_hist)},
                                   {"test", histogram_to_json(test_hist)}};
    j["warnings"] = warnings;
    return j;
}

SplitManifest SplitManifest::from_json(const ordered_json& j) {
    SplitManifest m;
    const auto& js = j.at("spec");
    const auto kind = heuristic_from_string(js.at("heuristic").get<std::string>());
    if (!kind) throw std::runtime_error("manifest: unknown heuristic");
    m.spec.heuristic = *kind;
    const auto triple = js.at("triple").get<std::vector<std::string>>();
    if (triple.size() != 3) throw std::runtime_error("manifest: triple must have three labels");
    std::copy(triple.begin(), triple.end(), m.spec.triple_labels.begin());
    m.spec.train_bound = js.at("score_bounds").at("train_bound").get<double>();
    m.spec.valid_bound = js.at("score_bounds").at("valid_bound").get<double>();
    m.spec.test_min = js.at("score_bounds").at("test_min").get<double>();
    const auto dir = direction_from_string(js.at("direction").get<std::string>());
    if (!dir) throw std::runtime_error("manifest: unknown direction");
    m.spec.direction = *dir;
    m.spec.valid_cap = js.at("valid_cap").get<std::uint64_t>();
    m.spec.test_cap = js.at("test_cap").get<std::uint64_t>();
    if (!js.at("train_cap").is_null()) m.spec.train_cap = js.at("train_cap").get<std::uint64_t>();
    m.spec.seed = js.at("seed").get<std::uint64_t>();
    m.input_nodes = j.at("input").at("nodes").get<NodeId>();
    m.input_edges = j.at("input").at("edges").get<std::uint64_t>();
    m.input_sha256 = j.at("input").at("sha256").get<std::string>();
    m.train_count = j.at("counts").at("train").get<std::uint64_t>();
    m.valid_count = j.at("counts").at("valid").get<std::uint64_t>();
    m.test_count = j.at("counts").at("test").get<std::uint64_t>();
    m.dropped.gap = j.at("dropped").at("gap").get<std::uint64_t>();
    m.dropped.duplicate = j.at("dropped").at("duplicate").get<std::uint64_t>();
    m.dropped.uncovered = j.at("dropped").at("uncovered").get<std::uint64_t>();
    m.dropped.cap_train = j.at("dropped").at("cap").at("train").get<std::uint64_t>();
    m.dropped.cap_valid = j.at("dropped").at("cap").at("valid").get<std::uint64_t>();
    m.dropped.cap_test = j.at("dropped").at("cap").at("test").get<std::uint64_t>();
    m.train_hist = histogram_from_json(j.at("histograms").at("train"));
    m.valid_hist = histogram_from_json(j.at("histograms").at("valid"));
    m.test_hist = histogram_from_json(j.at("histograms").at("test"));
    m.warnings = j.at("warnings").get<std::vector<std::string>>();
    return m;
}

void write_split(const DatasetSplit& ds, const std::string& out_dir) {
    fs::create_directories(out_dir);
    write_edge_list_file(ds.train_edges, (fs::path(out_dir) / "train.tsv").string());
    write_edge_list_file(ds.valid_edges, (fs::path(out_dir) / "valid.tsv").string());
    write_edge_list_file(ds.test_edges, (fs::path(out_dir) / "test.tsv").string());
    std::ofstream out(fs::path(out_dir) / "manifest.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest.json in " + out_dir);
    out << ds.manifest.to_json().dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: manifest.json");
}

namespace {

std::vector<Edge> read_edge_tsv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<Edge> edges;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        NodeId u = 0, v = 0;
        const char* b = line.data();
        const char* e = b + line.size();
        auto r1 = std::from_chars(b, e, u);
        if (r1.ec != std::errc{} || r1.ptr == e || *r1.ptr != '\t')
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": malformed edge line");
        auto r2 = std::from_chars(r1.ptr + 1, e, v);
        if (r2.ec != std::errc{} || r2.ptr != e)
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": malformed edge line");
        edges.push_back(make_edge(u, v));
    }
    return edges;
}

}  // namespace

LoadedSplit read_split(const std::string& dir) {
    LoadedSplit s;
    std::ifstream mf(fs::path(dir) / "manifest.json");
    if (!mf) throw std::runtime_error("missing manifest.json in " + dir);
    s.manifest = SplitManifest::from_json(ordered_json::parse(mf));
    s.train_edges = read_edge_tsv(fs::path(dir) / "train.tsv");
    s.valid_edges = read_edge_tsv(fs::path(dir) / "valid.tsv");
    s.test_edges = read_edge_tsv(fs::path(dir) / "test.tsv");
    if (s.train_edges.size() != s.manifest.train_count || s.valid_edges.size() != s.manifest.valid_count ||
        s.test_edges.size() != s.manifest.test_count)
        throw std::runtime_error("split files disagree with manifest counts in " + dir);
    s.train_graph = build_graph(s.train_edges, s.manifest.input_nodes);
    return s;
}

}  // namespace lpshift
