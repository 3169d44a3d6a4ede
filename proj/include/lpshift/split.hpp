#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpshift/graph.hpp"
#include "lpshift/heuristics.hpp"
#include "vendor_json.hpp"

namespace lpshift {

enum class SplitDirection { forward, inverse };

std::string_view to_string(SplitDirection d);
std::optional<SplitDirection> direction_from_string(std::string_view name);

enum class EdgeCategory : std::uint8_t { train, valid, test, gap };

// Threshold triple in score space plus caps and the sampling seed.
// Bounds are inclusive the way the splitting algorithm reads them:
//   train:  h <= train_bound
//   valid:  train_bound < h <= valid_bound
//   test:   h >= test_min
//   gap:    valid_bound < h < test_min   (discarded, counted)
// For shortest-path the caller converts length labels to scores first
// (length L -> 1/L, infinity -> 0), so bounds here are always ascending.
struct SplitSpec {
    HeuristicKind heuristic = HeuristicKind::common_neighbors;
    double train_bound = 0.0;
    double valid_bound = 0.0;
    double test_min = 0.0;
    SplitDirection direction = SplitDirection::forward;
    std::uint64_t valid_cap = 100000;
    std::uint64_t test_cap = 100000;
    std::optional<std::uint64_t> train_cap;
    std::uint64_t seed = 0;

    // Label-space echo for manifests, e.g. ["0","1","2"] or ["inf","6","4"].
    std::array<std::string, 3> triple_labels;

    void validate() const;  // throws std::invalid_argument

    // "cn_0_1_2_forward" style identifier used in reports and file names.
    std::string label() const;
};

// Parse a label-space triple "X,Y,Z". For sp the labels are path
// lengths ("inf" or "∞" accepted) and are converted to reciprocal
// scores; for cn/pa/ra they are scores as written. The triple must be
// ascending in score space.
SplitSpec make_split_spec(HeuristicKind kind, const std::string& triple, SplitDirection direction);

struct CategorizedEdges {
    std::vector<Edge> edges;             // canonical order snapshot of g.edges()
    std::vector<double> scores;          // heuristic scores on the original graph
    std::vector<EdgeCategory> categories;
};

// Score every edge of g on g itself and assign categories per the
// threshold rules above. Direction is NOT applied here.
CategorizedEdges categorize_edges(const Graph& g, const SplitSpec& spec, int threads = 0);

// forward = identity; inverse swaps train and test. Involution.
void apply_direction(CategorizedEdges& cat, SplitDirection direction);

struct DroppedCounts {
    std::uint64_t gap = 0;
    std::uint64_t duplicate = 0;
    std::uint64_t uncovered = 0;
    std::uint64_t cap_train = 0;
    std::uint64_t cap_valid = 0;
    std::uint64_t cap_test = 0;

    std::uint64_t total() const { return gap + duplicate + uncovered + cap_train + cap_valid + cap_test; }
};

struct ScoreHistogram {
    std::vector<double> bin_edges;  // size counts.size()+1, strictly increasing (or equal pair for a point mass)
    std::vector<std::uint64_t> counts;
};

struct SplitManifest {
    SplitSpec spec;
    NodeId input_nodes = 0;
    std::uint64_t input_edges = 0;
    std::string input_sha256;
    std::uint64_t train_count = 0, valid_count = 0, test_count = 0;
    DroppedCounts dropped;
    ScoreHistogram train_hist, valid_hist, test_hist;
    std::vector<std::string> warnings;

    // |input edges| == kept + dropped, enforced by finalize_split.
    bool reconciles() const { return input_edges == train_count + valid_count + test_count + dropped.total(); }

    nlohmann::ordered_json to_json() const;
    static SplitManifest from_json(const nlohmann::ordered_json& j);
};

struct DatasetSplit {
    std::vector<Edge> train_edges, valid_edges, test_edges;  // canonical ascending
    Graph train_graph;
    SplitManifest manifest;
};

// Appendix-style finalization, in order: train cap, valid/test caps,
// duplicate-of-train removal, uncovered-endpoint removal, train graph
// build, manifest reconciliation. Throws on an empty train set; an
// empty valid or test set is a manifest warning.
DatasetSplit finalize_split(const Graph& g, const CategorizedEdges& cat, const SplitSpec& spec);

// train.tsv / valid.tsv / test.tsv (canonical "u<TAB>v" lines) plus
// manifest.json. Deterministic bytes for a fixed input and spec.
void write_split(const DatasetSplit& ds, const std::string& out_dir);

struct LoadedSplit {
    std::vector<Edge> train_edges, valid_edges, test_edges;
    Graph train_graph;
    SplitManifest manifest;
};

LoadedSplit read_split(const std::string& dir);

}  // namespace lpshift
