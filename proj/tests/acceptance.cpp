// Acceptance suite: one pass/fail line per criterion. Exit code is the
// number of failed criteria. argv[1] is the CLI binary path (used by
// the determinism criterion).

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lpshift/augment.hpp"
#include "lpshift/emd.hpp"
#include "lpshift/negatives.hpp"
#include "lpshift/pipeline.hpp"
#include "lpshift/ranking.hpp"
#include "lpshift/rng.hpp"
#include "lpshift/split.hpp"
#include "lpshift/synth.hpp"
#include "oracles.hpp"

using namespace lpshift;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;
std::map<int, std::string> g_lines;

void report(int id, const std::string& name, bool pass, const std::string& detail = "") {
    std::ostringstream line;
    line << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << id << ": " << name;
    if (!detail.empty()) line << "  (" << detail << ")";
    g_lines[id] = line.str();
    if (!pass) ++g_failures;
}

void print_lines() {
    for (const auto& [id, line] : g_lines) std::cout << line << std::endl;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

std::map<std::string, std::string> tree_bytes(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        out[fs::relative(entry.path(), root).string()] = slurp(entry.path());
    }
    return out;
}

bool in_category_bounds(EdgeCategory cat, double h, const SplitSpec& spec) {
    switch (cat) {
        case EdgeCategory::train: return h <= spec.train_bound;
        case EdgeCategory::valid: return h > spec.train_bound && h <= spec.valid_bound;
        case EdgeCategory::test: return h >= spec.test_min;
        case EdgeCategory::gap: return h > spec.valid_bound && h < spec.test_min;
    }
    return false;
}

// Leakage + coverage + reconciliation checks applied to every finalized
// split the suite produces (criterion 3 counts the assertions).
std::uint64_t g_split_invariant_checks = 0;
std::uint64_t g_split_invariant_violations = 0;

void check_split_invariants(const DatasetSplit& ds) {
    ++g_split_invariant_checks;
    std::uint64_t bad = 0;
    for (const Edge& e : ds.valid_edges)
        if (ds.train_graph.has_edge(e.u, e.v)) ++bad;
    for (const Edge& e : ds.test_edges)
        if (ds.train_graph.has_edge(e.u, e.v)) ++bad;
    std::set<NodeId> train_nodes;
    for (const Edge& e : ds.train_edges) {
        train_nodes.insert(e.u);
        train_nodes.insert(e.v);
    }
    for (const Edge& e : ds.valid_edges)
        if (!train_nodes.contains(e.u) || !train_nodes.contains(e.v)) ++bad;
    for (const Edge& e : ds.test_edges)
        if (!train_nodes.contains(e.u) || !train_nodes.contains(e.v)) ++bad;
    if (!ds.manifest.reconciles()) ++bad;
    g_split_invariant_violations += bad;
}

double quantile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    const std::size_t idx = static_cast<std::size_t>(q * static_cast<double>(values.size() - 1));
    return values[idx];
}

int run_command(const std::string& cmd) {
    return std::system((cmd + " > /dev/null 2>&1").c_str());
}

// ---------------------------------------------------------------- 1 & 3

void criterion_threshold_soundness() {
    const auto start = Clock::now();
    const std::vector<Edge> edges = generate_ba(2000, 4, 7);
    const Graph g = build_graph(edges, 2000);

    struct SpecDef {
        HeuristicKind kind;
        std::string triple;
    };
    std::vector<SpecDef> defs = {
        {HeuristicKind::common_neighbors, "0,1,2"},
        {HeuristicKind::common_neighbors, "0,2,4"},
        {HeuristicKind::common_neighbors, "0,3,5"},
        {HeuristicKind::shortest_path, "inf,4,3"},
    };
    // PA triples scaled to the graph's degree range via score quantiles.
    {
        const std::vector<double> pa = score_all_edges(g, HeuristicKind::preferential_attachment, 4);
        const auto fmt = [](double v) {
            std::ostringstream os;
            os << static_cast<long long>(v);
            return os.str();
        };
        const double q30 = quantile(pa, 0.30), q60 = quantile(pa, 0.60), q85 = quantile(pa, 0.85);
        defs.push_back({HeuristicKind::preferential_attachment,
                        fmt(q30) + "," + fmt(std::max(q60, q30)) + "," + fmt(std::max(q85, q60))});
        const double q10 = quantile(pa, 0.10), q40 = quantile(pa, 0.40), q70 = quantile(pa, 0.70);
        defs.push_back({HeuristicKind::preferential_attachment,
                        fmt(q10) + "," + fmt(std::max(q40, q10)) + "," + fmt(std::max(q70, q40))});
    }

    std::uint64_t violations = 0;
    std::uint64_t checked = 0;
    std::string notes;
    for (const SpecDef& def : defs) {
        SplitSpec spec = make_split_spec(def.kind, def.triple, SplitDirection::forward);
        spec.seed = 7;
        CategorizedEdges cat = categorize_edges(g, spec, 4);
        apply_direction(cat, spec.direction);

        // Independent re-scoring of every categorized edge, single-pair path.
        for (std::size_t i = 0; i < cat.edges.size(); ++i) {
            const double h = score_pair(g, cat.edges[i].u, cat.edges[i].v, spec.heuristic);
            if (!in_category_bounds(cat.categories[i], h, spec)) ++violations;
            ++checked;
        }

        try {
            const DatasetSplit ds = finalize_split(g, cat, spec);
            check_split_invariants(ds);
            auto recheck = [&](const std::vector<Edge>& split_edges, EdgeCategory want) {
                for (const Edge& e : split_edges) {
                    const double h = score_pair(g, e.u, e.v, spec.heuristic);
                    if (!in_category_bounds(want, h, spec)) ++violations;
                    ++checked;
                }
            };
            recheck(ds.train_edges, EdgeCategory::train);
            recheck(ds.valid_edges, EdgeCategory::valid);
            recheck(ds.test_edges, EdgeCategory::test);
        } catch (const std::runtime_error&) {
            // A connected BA graph has no SP=inf edges, so the sp forward
            // split legitimately has an empty train set and cannot finalize;
            // category-level soundness above still covers it.
            notes += spec.label() + " train empty; ";
        }
    }
    const double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << checked << " rescored edges, " << violations << " violations, " << notes << elapsed << " s";
    report(1, "threshold soundness on BA(2000,4,seed 7)", violations == 0 && elapsed < 10.0, detail.str());
}

// ------------------------------------------------------------------- 2

void criterion_inverse_duality() {
    const std::vector<Edge> edges = generate_ba(800, 3, 19);
    const Graph g = build_graph(edges, 800);
    bool ok = true;
    std::string detail;
    for (auto kind : {HeuristicKind::common_neighbors, HeuristicKind::preferential_attachment,
                      HeuristicKind::shortest_path, HeuristicKind::resource_allocation}) {
        const std::string triple = kind == HeuristicKind::shortest_path
                                       ? "inf,4,3"
                                       : kind == HeuristicKind::resource_allocation ? "0,0.5,1" : "0,2,4";
        SplitSpec spec = make_split_spec(kind, triple, SplitDirection::forward);
        CategorizedEdges fwd = categorize_edges(g, spec, 4);
        CategorizedEdges inv = fwd;
        apply_direction(inv, SplitDirection::inverse);
        std::array<std::set<Edge>, 4> bf, bi;
        for (std::size_t i = 0; i < fwd.edges.size(); ++i) {
            bf[static_cast<std::size_t>(fwd.categories[i])].insert(fwd.edges[i]);
            bi[static_cast<std::size_t>(inv.categories[i])].insert(inv.edges[i]);
        }
        const bool match = bi[0] == bf[2] && bi[2] == bf[0] && bi[1] == bf[1] && bi[3] == bf[3];
        if (!match) {
            ok = false;
            detail += std::string(to_string(kind)) + " mismatch; ";
        }
    }
    report(2, "inverse duality pre-cap (train<->test set equality, every heuristic)", ok, detail);
}

// ------------------------------------------------------------------- 4

void criterion_heuristic_oracles() {
    Rng rng(404);
    std::uint64_t checked = 0, violations = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const NodeId n = 5 + static_cast<NodeId>(rng.bounded(46));
        std::vector<Edge> graph_edges = oracles::random_edges(n, 3.0 / static_cast<double>(n), rng);
        if (graph_edges.empty()) graph_edges.push_back(Edge{0, 1});
        const Graph g = build_graph(graph_edges, n);
        const auto full_dist = oracles::floyd_warshall(static_cast<int>(n), graph_edges);

        // Every edge, with per-edge removal for sp.
        for (const Edge& e : graph_edges) {
            if (common_neighbors(g, e.u, e.v) != oracles::cn_oracle(graph_edges, e.u, e.v)) ++violations;
            if (preferential_attachment(g, e.u, e.v) != oracles::pa_oracle(graph_edges, e.u, e.v)) ++violations;
            if (std::abs(resource_allocation(g, e.u, e.v) - oracles::ra_oracle(graph_edges, e.u, e.v)) > 1e-12)
                ++violations;
            if (shortest_path_score(g, e.u, e.v) !=
                oracles::sp_score_oracle(static_cast<int>(n), graph_edges, e.u, e.v))
                ++violations;
            checked += 4;
        }
        // Random non-edge pairs: sp uses the plain all-pairs distances.
        for (int probe = 0; probe < 20; ++probe) {
            const NodeId u = static_cast<NodeId>(rng.bounded(n));
            const NodeId v = static_cast<NodeId>(rng.bounded(n));
            if (u == v || g.has_edge(u, v)) continue;
            if (common_neighbors(g, u, v) != oracles::cn_oracle(graph_edges, u, v)) ++violations;
            if (preferential_attachment(g, u, v) != oracles::pa_oracle(graph_edges, u, v)) ++violations;
            if (std::abs(resource_allocation(g, u, v) - oracles::ra_oracle(graph_edges, u, v)) > 1e-12)
                ++violations;
            const int d = full_dist[u][v];
            const double want = d >= oracles::kInf ? 0.0 : 1.0 / d;
            if (shortest_path_score(g, u, v) != want) ++violations;
            checked += 4;
        }
    }
    std::ostringstream detail;
    detail << checked << " comparisons on 200 graphs, " << violations << " mismatches";
    report(4, "heuristic scores match Floyd-Warshall / set oracles", violations == 0, detail.str());
}

// ------------------------------------------------------------------- 5

void criterion_emd_oracle() {
    Rng rng(2718);
    std::uint64_t violations = 0;
    auto random_points = [&rng]() {
        const int distinct = 1 + static_cast<int>(rng.bounded(10));
        std::vector<std::pair<double, std::int64_t>> pts;
        std::set<double> used;
        for (int i = 0; i < distinct; ++i) {
            const double v = static_cast<double>(rng.bounded(40)) / 4.0;
            if (!used.insert(v).second) continue;
            pts.emplace_back(v, 1 + static_cast<std::int64_t>(rng.bounded(5)));
        }
        return pts;
    };
    auto to_samples = [](const std::vector<std::pair<double, std::int64_t>>& pts) {
        std::vector<double> samples;
        for (const auto& [v, c] : pts)
            for (std::int64_t i = 0; i < c; ++i) samples.push_back(v);
        return ScoreDistribution::from_samples(std::move(samples));
    };

    for (int trial = 0; trial < 500; ++trial) {
        const auto p = random_points();
        const auto q = random_points();
        const double got = emd_1d(to_samples(p), to_samples(q)).value;
        const double want = oracles::emd_lp_oracle(p, q);
        if (std::abs(got - want) > 1e-9) ++violations;
    }

    // Metric axioms on random triples.
    std::uint64_t axiom_violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = to_samples(random_points());
        const auto q = to_samples(random_points());
        const auto r = to_samples(random_points());
        const double pq = emd_1d(p, q).value, qp = emd_1d(q, p).value;
        if (std::abs(pq - qp) > 1e-12) ++axiom_violations;
        if (emd_1d(p, p).value != 0.0) ++axiom_violations;
        if (pq < 0.0) ++axiom_violations;
        if (pq > emd_1d(p, r).value + emd_1d(r, q).value + 1e-12) ++axiom_violations;
    }
    std::ostringstream detail;
    detail << "500 LP instances, " << violations << " beyond 1e-9; axiom violations " << axiom_violations;
    report(5, "exact 1-D EMD equals the transportation LP oracle", violations == 0 && axiom_violations == 0,
           detail.str());
}

// ------------------------------------------------------------------- 6

void criterion_ranking_oracle() {
    Rng rng(606);
    std::uint64_t violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::pair<double, std::vector<double>>> samples;
        const int n = 1 + static_cast<int>(rng.bounded(40));
        for (int i = 0; i < n; ++i) {
            const double pos = static_cast<double>(rng.bounded(6));
            std::vector<double> negs;
            const int m = 1 + static_cast<int>(rng.bounded(50));
            for (int j = 0; j < m; ++j) negs.push_back(static_cast<double>(rng.bounded(6)));
            samples.emplace_back(pos, std::move(negs));
        }
        std::vector<double> ranks;
        for (const auto& [pos, negs] : samples) ranks.push_back(rank_sample(pos, negs));
        const std::vector<int> ks{20};
        const RankingReport r = evaluate_ranks("x", "s", std::move(ranks), ks, 50);
        const oracles::NaiveEval naive = oracles::naive_eval(samples);
        if (std::abs(r.mrr - naive.mrr) > 1e-12) ++violations;
        if (std::abs(r.hits_at.at(20) - naive.hits_at_20) > 1e-12) ++violations;
    }
    const bool tie_ok = rank_sample(1.0, std::vector<double>{1.0, 1.0}) == 2.0;
    std::ostringstream detail;
    detail << "100 batches, " << violations << " mismatches; tie example rank "
           << rank_sample(1.0, std::vector<double>{1.0, 1.0});
    report(6, "MRR/Hits@20 match naive recomputation; average-tie rank", violations == 0 && tie_ok,
           detail.str());
}

// ------------------------------------------------------------------- 7

void criterion_negatives_oracle() {
    Rng rng(707);
    std::uint64_t mismatches = 0, invariant_violations = 0, cases = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const NodeId n = 8 + static_cast<NodeId>(rng.bounded(23));  // <= 30
        std::vector<Edge> edges = oracles::random_edges(n, 0.25, rng);
        if (edges.size() < 3) continue;
        const Graph full = build_graph(edges, n);
        const std::vector<Edge> all = full.edges();
        for (std::size_t pick = 0; pick < 2 && pick < all.size(); ++pick) {
            const Edge pos = all[(pick * 7919) % all.size()];
            const LoadedSplit split = oracles::toy_split(full, {}, {pos});
            const KnownPositives known(full, split);
            for (const std::uint32_t m : {1u, 4u, 7u, 10u}) {
                const std::uint64_t seed = rng.next();
                std::vector<Edge> got;
                try {
                    got = generate_negatives(known, split.train_graph, pos, m,
                                             HeuristicKind::common_neighbors, seed);
                } catch (const std::runtime_error&) {
                    continue;  // no candidates at all; covered by unit tests
                }
                ++cases;
                if (got != oracles::negatives_oracle(full, split, pos, m, seed)) ++mismatches;
                std::set<Edge> seen;
                for (const Edge& e : got) {
                    if (full.has_edge(e.u, e.v)) ++invariant_violations;
                    const bool shares = e.u == pos.u || e.v == pos.u || e.u == pos.v || e.v == pos.v;
                    if (!shares) ++invariant_violations;
                    if (!seen.insert(e).second) ++invariant_violations;
                }
            }
        }
    }
    std::ostringstream detail;
    detail << cases << " cases, " << mismatches << " oracle mismatches, " << invariant_violations
           << " invariant violations";
    report(7, "negatives equal exhaustive corruption enumeration", mismatches == 0 && invariant_violations == 0,
           detail.str());
}

// ------------------------------------------------------------------- 8

void criterion_augmentation() {
    bool ok = true;
    std::string detail;

    const std::vector<Edge> edges = generate_ba(2600, 4, 88);  // 10390 edges
    const Graph g = build_graph(edges, 2600);

    if (drop_edge(g, 0.0, 5).edges() != g.edges()) {
        ok = false;
        detail += "p=0 not identity; ";
    }
    if (drop_edge(g, 1.0, 5).num_edges() != 0) {
        ok = false;
        detail += "p=1 not empty; ";
    }
    {
        const double p = 0.3;
        const double n = static_cast<double>(g.num_edges());
        const double kept = static_cast<double>(drop_edge(g, p, 777).num_edges()) / n;
        const double sigma = std::sqrt(p * (1.0 - p) / n);
        if (std::abs(kept - 0.7) > 3.0 * sigma) {
            ok = false;
            detail += "3-sigma bound broken; ";
        }
        std::ostringstream os;
        os << "kept " << kept << " vs 0.7 +/- " << 3.0 * sigma << "; ";
        detail += os.str();
    }

    // eps: exact min(k,pool) additions matching the exhaustive oracle.
    Rng rng(808);
    for (int trial = 0; trial < 10 && ok; ++trial) {
        const NodeId n = 12 + static_cast<NodeId>(rng.bounded(18));
        const std::vector<Edge> small_edges = oracles::random_edges(n, 0.2, rng);
        if (small_edges.empty()) continue;
        const Graph sg = build_graph(small_edges, n);
        const std::uint64_t seed = rng.next();

        struct Cand {
            double score;
            std::uint64_t key;
            Edge pair;
        };
        std::vector<Cand> pool;
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v) {
                if (sg.has_edge(u, v)) continue;
                const double cn = oracles::cn_oracle(small_edges, u, v);
                if (cn > 0) pool.push_back(Cand{cn, hash_u64(seed, u, v), Edge{u, v}});
            }
        std::sort(pool.begin(), pool.end(), [](const Cand& a, const Cand& b) {
            if (a.score != b.score) return a.score > b.score;
            if (a.key != b.key) return a.key < b.key;
            return a.pair < b.pair;
        });
        for (const std::uint64_t k : {std::uint64_t{0}, std::uint64_t{5}, pool.size() + 10}) {
            const EpsResult r = eps_filter(sg, HeuristicKind::common_neighbors, k, seed);
            const std::uint64_t expect_added = std::min<std::uint64_t>(k, pool.size());
            if (r.added != expect_added) {
                ok = false;
                detail += "eps added count wrong; ";
                break;
            }
            std::set<Edge> got;
            const std::set<Edge> before(small_edges.begin(), small_edges.end());
            for (const Edge& e : r.graph.edges())
                if (!before.contains(e)) got.insert(e);
            std::set<Edge> want;
            for (std::uint64_t i = 0; i < expect_added; ++i) want.insert(pool[i].pair);
            if (got != want) {
                ok = false;
                detail += "eps set mismatch; ";
                break;
            }
        }
    }
    report(8, "drop_edge identity/empty/3-sigma and eps top-k oracle", ok, detail);
}

// ------------------------------------------------------------------- 9

void criterion_cli_determinism(const std::string& cli) {
    if (cli.empty()) {
        report(9, "CLI pipeline determinism", false, "CLI binary path not provided");
        return;
    }
    auto chain = [&cli](const fs::path& root) {
        fs::remove_all(root);
        fs::create_directories(root);
        const std::string graph = (root / "graph.tsv").string();
        const std::string split = (root / "split").string();
        std::vector<std::string> cmds = {
            cli + " synth --model ba --n 400 --attach 3 --seed 21 --out " + graph,
            cli + " split --input " + graph + " --heuristic cn --triple 0,1,2 --direction forward --seed 21 --out " +
                split,
            cli + " negatives --input " + graph + " --split-dir " + split + " --m 20 --seed 21",
            cli + " evaluate --split-dir " + split + " --methods ra,cn,pa,sp --subset both --out " +
                (root / "eval").string(),
            cli + " emd --split-dir " + split + " --heuristics cn,pa --augment dropedge:0.25 --augment eps:cn:30 " +
                "--seed 21 --out " + (root / "emd").string(),
        };
        for (const std::string& cmd : cmds)
            if (run_command(cmd) != 0) throw std::runtime_error("command failed: " + cmd);
    };
    try {
        const fs::path a = "acc_det_a", b = "acc_det_b";
        chain(a);
        chain(b);
        const bool identical = tree_bytes(a) == tree_bytes(b);

        // Exit-code contract: usage error 1, data error 2.
        const int usage_rc = run_command(cli + " split --triple");
        const int data_rc = run_command(cli + " split --input no_such_file.tsv --triple 0,1,2 --out acc_det_x");
        const bool codes_ok = WEXITSTATUS(usage_rc) == 1 && WEXITSTATUS(data_rc) == 2;

        fs::remove_all(a);
        fs::remove_all(b);
        fs::remove_all("acc_det_x");
        std::ostringstream detail;
        detail << (identical ? "trees byte-identical" : "trees differ") << "; usage rc " << WEXITSTATUS(usage_rc)
               << ", data rc " << WEXITSTATUS(data_rc);
        report(9, "CLI pipeline determinism (synth->split->negatives->evaluate->emd)", identical && codes_ok,
               detail.str());
    } catch (const std::exception& e) {
        report(9, "CLI pipeline determinism", false, e.what());
    }
}

// ------------------------------------------------------------------ 10

void criterion_performance() {
    const auto gen_start = Clock::now();
    const std::vector<Edge> edges = generate_ba(250003, 4, 11);
    const double gen_s = seconds_since(gen_start);

    const auto split_start = Clock::now();
    const Graph g = build_graph(edges, 250003);
    SplitSpec spec = make_split_spec(HeuristicKind::common_neighbors, "0,1,2", SplitDirection::forward);
    spec.seed = 11;
    spec.train_cap = 3000000;
    CategorizedEdges cat = categorize_edges(g, spec, 4);
    apply_direction(cat, spec.direction);
    const DatasetSplit ds = finalize_split(g, cat, spec);
    const double split_s = seconds_since(split_start);
    check_split_invariants(ds);

    // 100k evenly sampled edges for sp scoring.
    std::vector<Edge> sampled;
    sampled.reserve(100000);
    const std::size_t stride = std::max<std::size_t>(1, cat.edges.size() / 100000);
    for (std::size_t i = 0; i < cat.edges.size() && sampled.size() < 100000; i += stride)
        sampled.push_back(cat.edges[i]);
    const auto sp_start = Clock::now();
    const std::vector<double> sp = score_pairs(g, sampled, HeuristicKind::shortest_path, 4);
    const double sp_s = seconds_since(sp_start);
    double checksum = 0.0;
    for (double v : sp) checksum += v;

    std::ostringstream detail;
    detail << edges.size() << " edges; gen " << gen_s << " s, split+cn " << split_s << " s (< 60), sp "
           << sampled.size() << " pairs " << sp_s << " s (< 120), sp checksum " << checksum;
    report(10, "performance: 1M-edge split+cn < 60 s, 100k sp scores < 120 s",
           edges.size() >= 1000000 && split_s < 60.0 && sp_s < 120.0, detail.str());
}

// ------------------------------------------------------------------ 11

void criterion_collab_reproduction() {
    const char* path = std::getenv("LPSHIFT_COLLAB_EDGELIST");
    if (path == nullptr || !fs::exists(path)) {
        report(11, "ogbl-collab end-to-end (conditional)", true,
               "skipped: set LPSHIFT_COLLAB_EDGELIST to the collab edge list to run");
        return;
    }
    try {
        const auto start = Clock::now();
        const fs::path root = "acc_collab";
        fs::remove_all(root);
        fs::create_directories(root);

        SplitOptions split;
        split.input = path;
        split.heuristic = HeuristicKind::common_neighbors;
        split.triple = "0,1,2";
        split.seed = 1;
        split.out_dir = (root / "split").string();
        split.threads = 4;
        const auto split_summary = run_split(split);

        NegativesOptions negs;
        negs.input = path;
        negs.split_dir = split.out_dir;
        negs.m = 250;
        negs.seed = 1;
        negs.threads = 4;
        run_negatives(negs);

        EvaluateOptions eval;
        eval.split_dirs = {split.out_dir};
        eval.methods = {HeuristicKind::resource_allocation};
        eval.subset = "test";
        eval.out_dir = (root / "eval").string();
        eval.threads = 4;
        const auto eval_summary = run_evaluate(eval);

        const auto& counts = split_summary.at("manifest").at("counts");
        const double train = counts.at("train").get<double>();
        const double valid = counts.at("valid").get<double>();
        const double test = counts.at("test").get<double>();
        auto within = [](double got, double want) { return std::abs(got - want) <= 0.10 * want; };
        const bool counts_ok = within(train, 57638) && within(valid, 6920) && within(test, 4326);

        const double mrr_x100 =
            std::stod(eval_summary.at("results").at(0).at("mrr_x100").get<std::string>());
        const bool mrr_ok = mrr_x100 > 0.0 && mrr_x100 < 100.0;

        std::ostringstream detail;
        detail << "counts train/valid/test " << train << "/" << valid << "/" << test
               << " vs 57638/6920/4326 (+/-10%), RA test MRR " << mrr_x100 << " (reported, not asserted to a value), "
               << seconds_since(start) << " s";
        report(11, "ogbl-collab end-to-end (conditional)", counts_ok && mrr_ok, detail.str());
        fs::remove_all(root);
    } catch (const std::exception& e) {
        report(11, "ogbl-collab end-to-end (conditional)", false, e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    try {
        criterion_threshold_soundness();
        criterion_inverse_duality();
        // Criterion 3 aggregates the invariant checks made on every split
        // finalized anywhere in this suite; more are added by criterion 10.
        criterion_heuristic_oracles();
        criterion_emd_oracle();
        criterion_ranking_oracle();
        criterion_negatives_oracle();
        criterion_augmentation();
        criterion_cli_determinism(cli);
        criterion_performance();
        {
            std::ostringstream detail;
            detail << g_split_invariant_checks << " splits checked, " << g_split_invariant_violations
                   << " violations";
            report(3, "leakage & coverage on every generated split", g_split_invariant_violations == 0,
                   detail.str());
        }
        criterion_collab_reproduction();
    } catch (const std::exception& e) {
        print_lines();
        std::cout << "[FAIL] acceptance suite aborted: " << e.what() << std::endl;
        return 99;
    }
    print_lines();
    std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(g_failures))
              << std::endl;
    return g_failures;
}
