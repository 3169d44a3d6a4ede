// lpshift: heuristic-driven link prediction splits, negatives, ranking
// evaluation, EMD shift analysis and structural augmentations.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lpshift/pipeline.hpp"

namespace {

using lpshift::HeuristicKind;

HeuristicKind parse_heuristic(const std::string& name) {
    const auto kind = lpshift::heuristic_from_string(name);
    if (!kind) throw CLI::ValidationError("--heuristic", "unknown heuristic '" + name + "' (cn, pa, sp, ra)");
    return *kind;
}

std::vector<HeuristicKind> parse_heuristics(const std::vector<std::string>& names) {
    std::vector<HeuristicKind> kinds;
    kinds.reserve(names.size());
    for (const std::string& n : names) kinds.push_back(parse_heuristic(n));
    return kinds;
}

lpshift::SplitDirection parse_direction(const std::string& name) {
    const auto dir = lpshift::direction_from_string(name);
    if (!dir) throw CLI::ValidationError("--direction", "expected 'forward' or 'inverse'");
    return *dir;
}

void print_summary(const nlohmann::ordered_json& summary) { std::cout << summary.dump(2) << std::endl; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"structural distribution shift pipeline for link prediction"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from a TOML-style config file");
    app.option_defaults()->always_capture_default();

    // ---- synth ----
    auto* synth = app.add_subcommand("synth", "generate a deterministic synthetic graph (ba or er)");
    lpshift::SynthOptions synth_opt;
    std::uint64_t synth_n = 0;
    synth->add_option("--model", synth_opt.model, "generator: ba or er")->check(CLI::IsMember({"ba", "er"}));
    synth->add_option("--n", synth_n, "number of nodes")->required();
    synth->add_option("--attach", synth_opt.attach, "ba: edges per new node");
    synth->add_option("--p", synth_opt.p, "er: edge probability");
    synth->add_option("--seed", synth_opt.seed, "master seed");
    synth->add_option("--out", synth_opt.out_file, "output edge list path")->required();

    // ---- split ----
    auto* split = app.add_subcommand("split", "threshold-split a graph into train/valid/test");
    lpshift::SplitOptions split_opt;
    std::string split_heuristic = "cn", split_direction = "forward";
    std::int64_t split_train_cap = -1;
    split->add_option("--input", split_opt.input, "input edge list")->required();
    split->add_option("--heuristic", split_heuristic, "split heuristic: cn, pa, sp");
    split->add_option("--triple", split_opt.triple, "threshold triple X,Y,Z in label space (sp: path lengths, inf allowed)")
        ->required();
    split->add_option("--direction", split_direction, "forward or inverse");
    split->add_option("--valid-cap", split_opt.valid_cap, "max validation edges");
    split->add_option("--test-cap", split_opt.test_cap, "max test edges");
    split->add_option("--train-cap", split_train_cap, "max train edges (-1 = unlimited)");
    split->add_option("--seed", split_opt.seed, "master seed");
    split->add_option("--out", split_opt.out_dir, "output split directory")->required();
    std::string split_score_dump;
    split->add_option("--dump-scores", split_score_dump, "also write a per-edge score TSV");
    split->add_option("--threads", split_opt.threads, "worker count (0 = auto)");

    // ---- negatives ----
    auto* negatives = app.add_subcommand("negatives", "heuristic-ranked negatives for valid/test positives");
    lpshift::NegativesOptions neg_opt;
    std::string neg_heuristic = "cn";
    negatives->add_option("--input", neg_opt.input, "original input edge list")->required();
    negatives->add_option("--split-dir", neg_opt.split_dir, "split directory")->required();
    negatives->add_option("--m", neg_opt.m, "negatives per positive");
    negatives->add_option("--heuristic", neg_heuristic, "ranking heuristic");
    negatives->add_option("--seed", neg_opt.seed, "master seed");
    negatives->add_option("--threads", neg_opt.threads, "worker count (0 = auto)");

    // ---- evaluate ----
    auto* evaluate = app.add_subcommand("evaluate", "rank positives against negatives with heuristic predictors");
    lpshift::EvaluateOptions eval_opt;
    std::vector<std::string> eval_methods = {"ra", "cn", "pa", "sp"};
    evaluate->add_option("--split-dir", eval_opt.split_dirs, "split directories (repeatable)")->required();
    evaluate->add_option("--methods", eval_methods, "predictor heuristics")->delimiter(',');
    evaluate->add_option("--k", eval_opt.ks, "Hits@k cutoffs")->delimiter(',');
    evaluate->add_option("--subset", eval_opt.subset, "valid, test or both")
        ->check(CLI::IsMember({"valid", "test", "both"}));
    evaluate->add_option("--out", eval_opt.out_dir, "output directory")->required();
    evaluate->add_option("--threads", eval_opt.threads, "worker count (0 = auto)");

    // ---- emd ----
    auto* emd = app.add_subcommand("emd", "EMD between train and test heuristic score distributions");
    lpshift::EmdOptions emd_opt;
    std::vector<std::string> emd_kinds = {"cn", "pa", "sp", "ra"};
    std::string emd_input;
    std::int64_t emd_bins = -1;
    emd->add_option("--split-dir", emd_opt.split_dirs, "split directories (repeatable)")->required();
    emd->add_option("--heuristics", emd_kinds, "heuristics to compare")->delimiter(',');
    emd->add_option("--augment", emd_opt.augments, "variants, e.g. dropedge:0.3 or eps:cn:100 (repeatable)");
    emd->add_flag("--score-on-original", emd_opt.score_on_original,
                  "score both splits on the original graph instead of the train graph");
    emd->add_option("--input", emd_input, "original edge list (with --score-on-original)");
    emd->add_option("--seed", emd_opt.seed, "master seed");
    emd->add_option("--histogram-bins", emd_bins, "histogram mode bin count (-1 = exact)");
    emd->add_option("--out", emd_opt.out_dir, "output directory")->required();
    emd->add_option("--threads", emd_opt.threads, "worker count (0 = auto)");

    // ---- augment ----
    auto* augment = app.add_subcommand("augment", "apply DropEdge or the EPS filter to a graph");
    lpshift::AugmentOptions aug_opt;
    augment->add_option("--input", aug_opt.input, "input edge list")->required();
    augment->add_option("--apply", aug_opt.augment, "dropedge:P or eps:HEURISTIC:K")->required();
    augment->add_option("--seed", aug_opt.seed, "master seed");
    augment->add_option("--out", aug_opt.out_dir, "output directory")->required();
    augment->add_option("--threads", aug_opt.threads, "worker count (0 = auto)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*synth) {
            synth_opt.n = static_cast<lpshift::NodeId>(synth_n);
            print_summary(lpshift::run_synth(synth_opt));
        } else if (*split) {
            split_opt.heuristic = parse_heuristic(split_heuristic);
            split_opt.direction = parse_direction(split_direction);
            if (split_train_cap >= 0) split_opt.train_cap = static_cast<std::uint64_t>(split_train_cap);
            if (!split_score_dump.empty()) split_opt.score_dump = split_score_dump;
            print_summary(lpshift::run_split(split_opt));
        } else if (*negatives) {
            neg_opt.heuristic = parse_heuristic(neg_heuristic);
            print_summary(lpshift::run_negatives(neg_opt));
        } else if (*evaluate) {
            eval_opt.methods = parse_heuristics(eval_methods);
            print_summary(lpshift::run_evaluate(eval_opt));
        } else if (*emd) {
            emd_opt.kinds = parse_heuristics(emd_kinds);
            if (!emd_input.empty()) emd_opt.input = emd_input;
            if (emd_bins >= 1) emd_opt.histogram_bins = static_cast<int>(emd_bins);
            print_summary(lpshift::run_emd(emd_opt));
        } else if (*augment) {
            print_summary(lpshift::run_augment(aug_opt));
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
