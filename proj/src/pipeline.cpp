#include "lpshift/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>

#include "lpshift/emd.hpp"
#include "lpshift/negatives.hpp"
#include "lpshift/ranking.hpp"
#include "lpshift/rng.hpp"
#include "lpshift/synth.hpp"

namespace lpshift {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

Graph ingest_graph(const std::string& path, IngestResult* out_ingest = nullptr) {
    IngestResult ingest = ingest_edge_list_file(path);
    Graph g = build_graph(ingest.edges, ingest.num_nodes());
    if (out_ingest) *out_ingest = std::move(ingest);
    return g;
}

std::string format_mrr_x100(double mrr) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", mrr * 100.0);
    return buf;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

ordered_json run_synth(const SynthOptions& opt) {
    std::vector<Edge> edges;
    if (opt.model == "ba") {
        edges = generate_ba(opt.n, opt.attach, derive_seed(opt.seed, "synth"));
    } else if (opt.model == "er") {
        edges = generate_er(opt.n, opt.p, derive_seed(opt.seed, "synth"));
    } else {
        throw std::invalid_argument("unknown synth model '" + opt.model + "' (expected ba or er)");
    }
    if (const fs::path parent = fs::path(opt.out_file).parent_path(); !parent.empty())
        fs::create_directories(parent);
    write_edge_list_file(edges, opt.out_file);

    ordered_json summary;
    summary["command"] = "synth";
    summary["model"] = opt.model;
    summary["nodes"] = opt.n;
    if (opt.model == "ba") summary["attach"] = opt.attach;
    if (opt.model == "er") summary["p"] = opt.p;
    summary["seed"] = opt.seed;
    summary["edges"] = edges.size();
    summary["sha256"] = edge_set_sha256(edges);
    summary["out"] = opt.out_file;
    return summary;
}

ordered_json run_split(const SplitOptions& opt) {
    const Graph g = ingest_graph(opt.input);

    SplitSpec spec = make_split_spec(opt.heuristic, opt.triple, opt.direction);
    spec.valid_cap = opt.valid_cap;
    spec.test_cap = opt.test_cap;
    spec.train_cap = opt.train_cap;
    spec.seed = derive_seed(opt.seed, "split");
    spec.validate();

    CategorizedEdges cat = categorize_edges(g, spec, opt.threads);
    apply_direction(cat, spec.direction);
    const DatasetSplit ds = finalize_split(g, cat, spec);
    write_split(ds, opt.out_dir);
    if (opt.score_dump) write_score_dump(g, spec.heuristic, *opt.score_dump, opt.threads);

    ordered_json summary;
    summary["command"] = "split";
    summary["out"] = opt.out_dir;
    summary["manifest"] = ds.manifest.to_json();
    return summary;
}

ordered_json run_negatives(const NegativesOptions& opt) {
    const Graph full = ingest_graph(opt.input);
    LoadedSplit split = read_split(opt.split_dir);
    if (full.num_nodes() != split.manifest.input_nodes || full.num_edges() != split.manifest.input_edges)
        throw std::runtime_error("input graph does not match the split manifest (node/edge counts differ)");

    const std::uint64_t seed = derive_seed(opt.seed, "negatives");
    const NegativeTable valid_table =
        generate_negative_table(full, split, split.valid_edges, opt.m, opt.heuristic, seed, opt.threads);
    const NegativeTable test_table =
        generate_negative_table(full, split, split.test_edges, opt.m, opt.heuristic, seed, opt.threads);
    write_negatives(valid_table, (fs::path(opt.split_dir) / "valid_neg.tsv").string());
    write_negatives(test_table, (fs::path(opt.split_dir) / "test_neg.tsv").string());

    // Extend the split manifest so the directory stays self-describing.
    const fs::path manifest_path = fs::path(opt.split_dir) / "manifest.json";
    ordered_json manifest;
    {
        std::ifstream in(manifest_path);
        if (!in) throw std::runtime_error("missing manifest.json in " + opt.split_dir);
        manifest = ordered_json::parse(in);
    }
    ordered_json negatives_info;
    negatives_info["m"] = opt.m;
    negatives_info["heuristic"] = std::string(to_string(opt.heuristic));
    negatives_info["seed"] = seed;
    negatives_info["procedure"] = "per-side corruption, heuristic-ranked, even split with backfill";
    negatives_info["valid"] = ordered_json{{"positives", valid_table.positives.size()},
                                           {"shortfall_positives", valid_table.shortfall_positives}};
    negatives_info["test"] = ordered_json{{"positives", test_table.positives.size()},
                                          {"shortfall_positives", test_table.shortfall_positives}};
    manifest["negatives"] = negatives_info;
    write_text_file(manifest_path, manifest.dump(2) + "\n");

    ordered_json summary;
    summary["command"] = "negatives";
    summary["split_dir"] = opt.split_dir;
    summary["negatives"] = negatives_info;
    return summary;
}

ordered_json run_evaluate(const EvaluateOptions& opt) {
    if (opt.split_dirs.empty()) throw std::invalid_argument("evaluate needs at least one split directory");
    if (opt.methods.empty()) throw std::invalid_argument("evaluate needs at least one method");
    if (opt.subset != "valid" && opt.subset != "test" && opt.subset != "both")
        throw std::invalid_argument("subset must be valid, test or both");
    fs::create_directories(opt.out_dir);

    struct Group {
        std::string split_id;
        const std::vector<Edge>* positives;
        NegativeTable table;
        const Graph* train_graph;
    };

    std::vector<LoadedSplit> splits;
    splits.reserve(opt.split_dirs.size());
    std::vector<Group> groups;
    for (const std::string& dir : opt.split_dirs) {
        splits.push_back(read_split(dir));
        LoadedSplit& split = splits.back();
        const std::string label = split.manifest.spec.label();
        auto add_group = [&](const char* name, const std::vector<Edge>& positives, const char* file) {
            const fs::path path = fs::path(dir) / file;
            if (!fs::exists(path))
                throw std::runtime_error("missing negatives file " + path.string() + "; run the negatives command first");
            Group g{label + ":" + name, &positives, read_negatives(path.string()), &split.train_graph};
            if (g.table.positives != positives)
                throw std::runtime_error(path.string() + " does not match the split positives");
            groups.push_back(std::move(g));
        };
        if (opt.subset != "test") add_group("valid", split.valid_edges, "valid_neg.tsv");
        if (opt.subset != "valid") add_group("test", split.test_edges, "test_neg.tsv");
    }

    std::vector<RankingReport> reports;
    std::string ranks_tsv = "method\tsplit\tu\tv\trank\n";
    for (const HeuristicKind method : opt.methods) {
        for (const Group& group : groups) {
            const std::vector<Edge>& positives = *group.positives;
            if (positives.empty())
                throw std::runtime_error("split " + group.split_id + " has no positives to evaluate");
            // One flat scoring batch: positives first, then all negatives.
            std::vector<Edge> pairs(positives.begin(), positives.end());
            std::vector<std::size_t> offsets;
            offsets.reserve(positives.size() + 1);
            for (const auto& negs : group.table.negatives) {
                offsets.push_back(pairs.size());
                pairs.insert(pairs.end(), negs.begin(), negs.end());
            }
            offsets.push_back(pairs.size());
            const std::vector<double> scores = score_pairs(*group.train_graph, pairs, method, opt.threads);

            std::vector<double> ranks(positives.size());
            for (std::size_t i = 0; i < positives.size(); ++i) {
                const std::span<const double> neg_scores(scores.data() + offsets[i], offsets[i + 1] - offsets[i]);
                ranks[i] = rank_sample(scores[i], neg_scores);
            }
            RankingReport report = evaluate_ranks(std::string(to_string(method)), group.split_id, std::move(ranks),
                                                  opt.ks, group.table.m);
            for (std::size_t i = 0; i < positives.size(); ++i) {
                ranks_tsv += std::string(to_string(method)) + '\t' + report.split_id + '\t' +
                             std::to_string(positives[i].u) + '\t' + std::to_string(positives[i].v) + '\t' +
                             format_double(report.ranks[i]) + '\n';
            }
            reports.push_back(std::move(report));
        }
    }

    ordered_json report_json = ordered_json::array();
    for (const RankingReport& r : reports) report_json.push_back(r.to_json());
    write_text_file(fs::path(opt.out_dir) / "report.json", report_json.dump(2) + "\n");
    write_text_file(fs::path(opt.out_dir) / "ranks.tsv", ranks_tsv);

    // Wide MRR table, methods x splits, table convention (x100, 2 decimals).
    {
        std::string csv = "method";
        std::vector<std::string> split_ids;
        for (const Group& g : groups) split_ids.push_back(g.split_id);
        for (const std::string& id : split_ids) csv += "," + id;
        csv += "\n";
        for (const HeuristicKind method : opt.methods) {
            csv += std::string(to_string(method));
            for (const std::string& id : split_ids) {
                const auto it = std::find_if(reports.begin(), reports.end(), [&](const RankingReport& r) {
                    return r.method == to_string(method) && r.split_id == id;
                });
                csv += "," + format_mrr_x100(it->mrr);
            }
            csv += "\n";
        }
        write_text_file(fs::path(opt.out_dir) / "results.csv", csv);
    }

    ordered_json summary;
    summary["command"] = "evaluate";
    summary["out"] = opt.out_dir;
    ordered_json rows = ordered_json::array();
    for (const RankingReport& r : reports) {
        rows.push_back(ordered_json{{"method", r.method},
                                    {"split", r.split_id},
                                    {"mrr_x100", format_mrr_x100(r.mrr)},
                                    {"hits@20", r.hits_at.count(20) ? ordered_json(r.hits_at.at(20)) : ordered_json(nullptr)},
                                    {"n", r.ranks.size()}});
    }
    summary["results"] = std::move(rows);

    if (groups.size() >= 2) {
        const MeanRankTable table = mean_rank(reports, 20);
        std::string csv = "method,mean_rank\n";
        ordered_json mr = ordered_json::array();
        for (const auto& [method, rank] : table.mean_rank_by_method) {
            csv += method + "," + format_double(rank) + "\n";
            mr.push_back(ordered_json{{"method", method}, {"mean_rank", rank}});
        }
        write_text_file(fs::path(opt.out_dir) / "mean_rank.csv", csv);
        summary["mean_rank"] = std::move(mr);
    }
    return summary;
}

ordered_json run_emd(const EmdOptions& opt) {
    if (opt.split_dirs.empty()) throw std::invalid_argument("emd needs at least one split directory");
    if (opt.kinds.empty()) throw std::invalid_argument("emd needs at least one heuristic");
    if (opt.score_on_original && !opt.input)
        throw std::invalid_argument("--score-on-original needs the original edge list (--input)");
    fs::create_directories(opt.out_dir);

    std::optional<Graph> original;
    if (opt.score_on_original) original = ingest_graph(*opt.input);

    std::vector<std::pair<std::string, std::optional<AugmentSpec>>> variants;
    variants.emplace_back("baseline", std::nullopt);
    for (const std::string& text : opt.augments) {
        AugmentSpec spec = AugmentSpec::parse(text);
        variants.emplace_back(spec.label(), spec);
    }

    std::vector<EmdReportRow> rows;
    for (const std::string& dir : opt.split_dirs) {
        const LoadedSplit split = read_split(dir);
        if (split.test_edges.empty())
            throw std::runtime_error("split " + dir + " has an empty test set; nothing to compare");
        const Graph& basis = opt.score_on_original ? *original : split.train_graph;
        for (const auto& [label, spec] : variants) {
            Graph augmented;
            const Graph* score_graph = &basis;
            if (spec) {
                augmented = apply_augmentation(basis, *spec, derive_seed(opt.seed, "augment:" + label), opt.threads);
                score_graph = &augmented;
            }
            for (const HeuristicKind kind : opt.kinds) {
                const ScoreDistribution train_dist =
                    collect_distribution(*score_graph, split.train_edges, kind, opt.threads);
                const ScoreDistribution test_dist =
                    collect_distribution(*score_graph, split.test_edges, kind, opt.threads);
                EmdResult r;
                if (opt.histogram_bins) {
                    r = emd_1d(to_histogram(train_dist, *opt.histogram_bins),
                               to_histogram(test_dist, *opt.histogram_bins));
                } else {
                    r = emd_1d(train_dist, test_dist);
                }
                rows.push_back(EmdReportRow{split.manifest.spec.label(), std::string(to_string(kind)), label, r.value});
            }
        }
    }
    write_emd_csv(rows, (fs::path(opt.out_dir) / "emd.csv").string());

    // The on-disk manifest must not embed run-specific paths, so trees
    // from different working directories stay byte-identical.
    ordered_json manifest;
    manifest["format"] = "lpshift-emd-manifest-v1";
    manifest["score_basis"] = opt.score_on_original ? "original" : "train";
    manifest["method"] = opt.histogram_bins ? "histogram" : "exact-1d";
    manifest["seed"] = opt.seed;
    ordered_json jrows = ordered_json::array();
    for (const EmdReportRow& r : rows)
        jrows.push_back(ordered_json{
            {"split", r.split_label}, {"heuristic", r.heuristic}, {"variant", r.variant}, {"emd", r.emd}});
    manifest["rows"] = std::move(jrows);
    write_text_file(fs::path(opt.out_dir) / "manifest.json", manifest.dump(2) + "\n");

    ordered_json summary = manifest;
    summary.erase("format");
    summary["command"] = "emd";
    summary["out"] = opt.out_dir;
    return summary;
}

ordered_json run_augment(const AugmentOptions& opt) {
    IngestResult ingest;
    const Graph g = ingest_graph(opt.input, &ingest);
    const AugmentSpec spec = AugmentSpec::parse(opt.augment);
    const std::uint64_t seed = derive_seed(opt.seed, "augment");

    fs::create_directories(opt.out_dir);
    ordered_json manifest;
    manifest["format"] = "lpshift-augment-manifest-v1";
    manifest["augmentation"] = spec.label();
    manifest["seed"] = seed;
    manifest["input"] = ordered_json{{"nodes", g.num_nodes()}, {"edges", g.num_edges()},
                                     {"sha256", edge_set_sha256(ingest.edges)}};

    Graph out_graph;
    if (spec.kind == AugmentSpec::Kind::drop_edge) {
        out_graph = drop_edge(g, spec.p, seed);
        manifest["removed"] = g.num_edges() - out_graph.num_edges();
    } else {
        EpsResult r = eps_filter(g, spec.filter, spec.k, seed, opt.threads);
        out_graph = std::move(r.graph);
        manifest["added"] = r.added;
        manifest["candidate_pool"] = r.candidate_pool;
        if (r.pool_exhausted)
            manifest["warnings"] = ordered_json::array({"k exceeds the candidate pool; added all candidates"});
    }
    const std::vector<Edge> out_edges = out_graph.edges();
    manifest["output"] = ordered_json{{"edges", out_edges.size()}, {"sha256", edge_set_sha256(out_edges)}};

    write_edge_list_file(out_edges, (fs::path(opt.out_dir) / "edges.tsv").string());
    write_text_file(fs::path(opt.out_dir) / "manifest.json", manifest.dump(2) + "\n");

    ordered_json summary;
    summary["command"] = "augment";
    summary["out"] = opt.out_dir;
    summary["manifest"] = manifest;
    return summary;
}

}  // namespace lpshift
