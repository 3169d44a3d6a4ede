#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpshift/augment.hpp"
#include "lpshift/heuristics.hpp"
#include "lpshift/split.hpp"
#include "vendor_json.hpp"

namespace lpshift {

// File-level orchestration behind the CLI subcommands. Each run_*
// returns the machine-readable summary the CLI prints. All randomness
// derives from the master seed via labeled streams, so reruns are
// byte-identical.

struct SynthOptions {
    std::string model = "ba";  // "ba" or "er"
    NodeId n = 0;
    std::uint32_t attach = 2;  // ba
    double p = 0.0;            // er
    std::uint64_t seed = 0;
    std::string out_file;
};
nlohmann::ordered_json run_synth(const SynthOptions& opt);

struct SplitOptions {
    std::string input;
    HeuristicKind heuristic = HeuristicKind::common_neighbors;
    std::string triple;  // label space, e.g. "0,1,2" or "inf,6,4"
    SplitDirection direction = SplitDirection::forward;
    std::uint64_t valid_cap = 100000;
    std::uint64_t test_cap = 100000;
    std::optional<std::uint64_t> train_cap;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::optional<std::string> score_dump;
    int threads = 0;
};
nlohmann::ordered_json run_split(const SplitOptions& opt);

struct NegativesOptions {
    std::string input;
    std::string split_dir;
    std::uint32_t m = 250;
    HeuristicKind heuristic = HeuristicKind::common_neighbors;
    std::uint64_t seed = 0;
    int threads = 0;
};
nlohmann::ordered_json run_negatives(const NegativesOptions& opt);

struct EvaluateOptions {
    std::vector<std::string> split_dirs;
    std::vector<HeuristicKind> methods;
    std::vector<int> ks = {1, 3, 10, 20, 50, 100};
    std::string subset = "both";  // "valid", "test" or "both"
    std::string out_dir;
    int threads = 0;
};
nlohmann::ordered_json run_evaluate(const EvaluateOptions& opt);

struct EmdOptions {
    std::vector<std::string> split_dirs;
    std::vector<HeuristicKind> kinds;
    std::vector<std::string> augments;  // parsed with AugmentSpec::parse
    bool score_on_original = false;     // score on the original graph instead of the train graph
    std::optional<std::string> input;   // required with score_on_original
    std::uint64_t seed = 0;
    std::optional<int> histogram_bins;  // exact sorted-sample EMD when unset
    std::string out_dir;
    int threads = 0;
};
nlohmann::ordered_json run_emd(const EmdOptions& opt);

struct AugmentOptions {
    std::string input;
    std::string augment;  // AugmentSpec::parse syntax
    std::uint64_t seed = 0;
    std::string out_dir;
    int threads = 0;
};
nlohmann::ordered_json run_augment(const AugmentOptions& opt);

}  // namespace lpshift
