// Command-line front end: count / exact / preprocess / bench.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "agis/convergence.hpp"
#include "agis/engine.hpp"
#include "agis/graph.hpp"
#include "agis/graphgen.hpp"
#include "agis/oracle.hpp"
#include "agis/pattern.hpp"
#include "agis/preprocess.hpp"
#include "agis/sampler.hpp"

using nlohmann::json;
using namespace agis;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string default_sidecar(const std::string &graph_path) {
    return graph_path + ".agispp";
}

int env_threads_fallback(int threads) {
    if (threads != 0) return threads;
    if (const char *env = std::getenv("AGIS_THREADS")) {
        try {
            return std::stoi(env);
        } catch (...) {
            throw CLI::ValidationError("AGIS_THREADS", "not an integer: " + std::string(env));
        }
    }
    return 0;
}

// Serial re-enactment of one sampling trajectory with per-phase timers:
// candidate-set intersections, weight evaluation, and random drawing.
struct ProfileTimes {
    double set_ops = 0.0, weights = 0.0, drawing = 0.0;
    std::int64_t samples = 0;
};

ProfileTimes profile_sampling(const SampleContext &ctx, std::uint64_t seed,
                              std::int64_t num_samples) {
    ProfileTimes pt;
    Rng rng(stream_seed(seed, 0));
    SampleScratch sc;
    const PlanBundle &plan = *ctx.plan;
    const int k = plan.num_steps();
    std::vector<double> w;
    for (std::int64_t s = 0; s < num_samples; s++) {
        pt.samples++;
        sc.traj.clear();
        auto t0 = Clock::now();
        {
            const FirstVertexTable &t = *ctx.first;
            double r = rng.next_double() * t.total;
            auto it = std::upper_bound(t.prefix.begin(), t.prefix.end(), r);
            std::size_t v = static_cast<std::size_t>(it - t.prefix.begin());
            if (v >= t.weight.size()) v = t.weight.size() - 1;
            while (v > 0 && t.weight[v] == 0.0) v--;
            sc.traj.push_back(static_cast<vid>(v));
        }
        pt.drawing += elapsed(t0);
        for (int i = 2; i <= k; i++) {
            t0 = Clock::now();
            candidate_set(ctx, sc.traj, i, sc.cand, sc.tmp);
            pt.set_ops += elapsed(t0);
            if (sc.cand.empty()) break;
            std::size_t idx;
            if (plan.decision.use_approx[static_cast<std::size_t>(i - 1)]) {
                t0 = Clock::now();
                w.clear();
                double total = 0.0;
                for (vid v : sc.cand) {
                    double x = approx_weight(ctx, v, i);
                    w.push_back(x);
                    total += x;
                }
                pt.weights += elapsed(t0);
                if (total == 0.0) break;
                t0 = Clock::now();
                double r = rng.next_double() * total;
                idx = 0;
                double acc = 0.0;
                for (; idx + 1 < w.size(); idx++) {
                    acc += w[idx];
                    if (r < acc) break;
                }
                pt.drawing += elapsed(t0);
            } else {
                t0 = Clock::now();
                idx = static_cast<std::size_t>(
                    rng.next_below(static_cast<std::uint64_t>(sc.cand.size())));
                pt.drawing += elapsed(t0);
            }
            sc.traj.push_back(sc.cand[idx]);
        }
    }
    return pt;
}

struct CountArgs {
    std::string graph_path, pattern_spec, sidecar_path;
    RunConfig cfg;
    std::string mode = "agis", orientation = "auto", clustering = "exact";
    bool json_out = false, preprocess_inline = false, profile = false;
    bool no_i1 = false, no_f2 = false;
    std::uint64_t pp_seed = 1;
};

int cmd_count(const CountArgs &a) {
    auto t_load = Clock::now();
    Graph g = load_edge_list_file(a.graph_path);
    double load_s = elapsed(t_load);

    Pattern p = parse_pattern(a.pattern_spec);

    RunConfig cfg = a.cfg;
    cfg.threads = env_threads_fallback(cfg.threads);
    cfg.mode = a.mode == "uniform" ? Mode::uniform : Mode::agis;
    cfg.orientation = a.orientation == "on"    ? Orientation::on
                      : a.orientation == "off" ? Orientation::off
                                               : Orientation::automatic;
    cfg.terms.use_i1 = !a.no_i1;
    cfg.terms.use_f2 = !a.no_f2;

    auto t_pp = Clock::now();
    PreprocessedStats stats;
    if (a.preprocess_inline) {
        ClusteringMode cm = a.clustering == "sampled" ? ClusteringMode::sampled
                                                      : ClusteringMode::exact;
        stats = compute_stats(g, cm, a.pp_seed);
    } else {
        std::string side = a.sidecar_path.empty() ? default_sidecar(a.graph_path)
                                                  : a.sidecar_path;
        if (!std::filesystem::exists(side)) {
            std::cerr << "error: no preprocessing sidecar at " << side
                      << "\nrun `agis preprocess --graph " << a.graph_path
                      << "` first, or pass --preprocess-inline\n";
            return 1;
        }
        stats = read_sidecar(side, g.num_vertices);
    }
    double pp_s = elapsed(t_pp);

    MiningResult res = run(g, p, cfg, stats);

    if (a.json_out) {
        json j;
        j["graph"] = a.graph_path;
        j["pattern"] = p.name.empty() ? a.pattern_spec : p.name;
        j["mode"] = a.mode;
        j["epsilon"] = cfg.epsilon;
        j["delta"] = cfg.delta;
        j["beta"] = cfg.beta;
        j["seed"] = cfg.seed;
        j["threads"] = cfg.threads;
        j["estimate"] = res.estimate;
        j["instance_estimate"] = res.instance_estimate;
        j["samplers_used"] = res.samplers_used;
        j["eps_hat"] = std::isfinite(res.eps_hat) ? res.eps_hat : -1.0;
        j["converged"] = res.converged;
        j["automorphisms"] = res.automorphisms;
        j["oriented"] = res.oriented;
        j["matching_order"] = res.matching_order;
        j["certainty"] = res.certainty;
        std::vector<int> d(res.use_approx.begin(), res.use_approx.end());
        j["use_approx"] = d;
        j["timing"] = {{"load_seconds", load_s},
                       {"preprocess_seconds", pp_s},
                       {"plan_seconds", res.plan_seconds},
                       {"sampling_seconds", res.sampling_seconds}};
        if (!res.warning.empty()) j["warning"] = res.warning;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "estimate            " << res.estimate << "\n"
                  << "instance estimate   " << res.instance_estimate << "\n"
                  << "samplers used       " << res.samplers_used << "\n"
                  << "eps_hat             " << res.eps_hat << "\n"
                  << "converged           " << (res.converged ? "yes" : "no") << "\n"
                  << "time: load " << load_s << "s, preprocess " << pp_s
                  << "s, plan " << res.plan_seconds << "s, sampling "
                  << res.sampling_seconds << "s\n";
        if (!res.warning.empty()) std::cout << "warning: " << res.warning << "\n";
    }

    if (a.profile) {
        double beta = cfg.mode == Mode::uniform
                          ? std::numeric_limits<double>::infinity()
                          : cfg.beta;
        bool oriented = res.oriented;
        PlanBundle plan = build_plan(p, beta, oriented);
        OrientedGraph og;
        CsrView view = CsrView::of(g);
        if (oriented) {
            og = orient(g);
            view = CsrView::of(og);
        }
        FirstVertexTable first = build_first_vertex_table(view, plan, stats, cfg.terms);
        SampleContext ctx{view, &plan, stats.clustering.data(),
                          stats.avg_nbr_degree.data(), &first, cfg.terms};
        std::int64_t n = std::min<std::int64_t>(
            std::max<std::int64_t>(res.samplers_used, 1024), 100000);
        ProfileTimes pt = profile_sampling(ctx, cfg.seed, n);
        double tot = pt.set_ops + pt.weights + pt.drawing;
        std::cerr << "profile (" << pt.samples << " serial samplers): set-ops "
                  << pt.set_ops << "s, weights " << pt.weights << "s, drawing "
                  << pt.drawing << "s (fractions " << pt.set_ops / tot << " / "
                  << pt.weights / tot << " / " << pt.drawing / tot << ")\n";
    }

    return res.converged ? 0 : 2;
}

struct ExactArgs {
    std::string graph_path, pattern_spec;
    bool allow_large = false, json_out = false;
};

int cmd_exact(const ExactArgs &a) {
    Graph g = load_edge_list_file(a.graph_path);
    Pattern p = parse_pattern(a.pattern_spec);
    MatchingOrder mo = build_matching_order(p);
    ExactCount ec = exact_count(g, p, mo, a.allow_large);
    std::uint64_t aut = count_automorphisms(p);
    if (a.json_out) {
        json j;
        j["pattern"] = p.name.empty() ? a.pattern_spec : p.name;
        j["embeddings"] = ec.total;
        j["automorphisms"] = aut;
        j["instances"] = ec.total / static_cast<std::int64_t>(aut);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "C(G,P)        " << ec.total << "\n"
                  << "|Aut(P)|      " << aut << "\n"
                  << "instances     " << ec.total / static_cast<std::int64_t>(aut)
                  << "\n";
    }
    return 0;
}

struct PreprocessArgs {
    std::string graph_path, out_path, mode = "exact";
    std::uint64_t seed = 1;
    double c_min = kDefaultClusteringFloor;
    bool force = false;
};

int cmd_preprocess(const PreprocessArgs &a) {
    std::string out = a.out_path.empty() ? default_sidecar(a.graph_path) : a.out_path;
    if (std::filesystem::exists(out) && !a.force) {
        std::cerr << "error: sidecar " << out
                  << " already exists; pass --force to overwrite\n";
        return 1;
    }
    auto t0 = Clock::now();
    Graph g = load_edge_list_file(a.graph_path);
    double load_s = elapsed(t0);

    ClusteringMode cm =
        a.mode == "sampled" ? ClusteringMode::sampled : ClusteringMode::exact;

    t0 = Clock::now();
    PreprocessedStats stats;
    stats.mode = cm;
    stats.seed = a.seed;
    stats.c_min = a.c_min;
    stats.avg_nbr_degree = compute_avg_neighbor_degree(g);
    double and_s = elapsed(t0);
    t0 = Clock::now();
    stats.clustering = estimate_clustering(g, cm, a.seed, a.c_min);
    double cc_s = elapsed(t0);

    t0 = Clock::now();
    write_sidecar(out, stats);
    double write_s = elapsed(t0);

    std::cout << "wrote " << out << " (" << g.num_vertices << " vertices, "
              << g.num_edges << " edges, " << a.mode << " clustering)\n"
              << "time: load " << load_s << "s, avg-neighbor-degree " << and_s
              << "s, clustering " << cc_s << "s, write " << write_s << "s\n";
    return 0;
}

struct BenchArgs {
    std::string suite = "kl", graph_path;
    std::uint64_t seed = 1;
    double epsilon = 0.1, delta = 0.01;
    int threads = 0;
    vid gen_n = 2000;
    double gen_avg_deg = 8.0;
};

struct BenchRow {
    std::string pattern, mode;
    double kl = std::nan("");
    std::int64_t samplers = -1;
    double eta = std::nan(""), realized = std::nan(""), eps_hat = std::nan("");
};

void print_row(const BenchRow &r) {
    auto cell = [](double x) {
        if (std::isnan(x)) return std::string();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", x);
        return std::string(buf);
    };
    std::cout << r.pattern << "," << r.mode << "," << cell(r.kl) << ","
              << (r.samplers < 0 ? std::string() : std::to_string(r.samplers)) << ","
              << cell(r.eta) << "," << cell(r.realized) << "," << cell(r.eps_hat)
              << "\n";
}

// Normalized first-vertex distribution the sampler would draw from.
std::vector<double> first_vertex_distribution(const Graph &g, const Pattern &p,
                                              const PreprocessedStats &stats,
                                              double beta) {
    PlanBundle plan = build_plan(p, beta, false);
    FirstVertexTable t = build_first_vertex_table(CsrView::of(g), plan, stats, {});
    std::vector<double> q(t.weight.size());
    for (std::size_t v = 0; v < q.size(); v++) q[v] = t.weight[v] / t.total;
    return q;
}

int cmd_bench(const BenchArgs &a) {
    Graph g = a.graph_path.empty()
                  ? powerlaw_chung_lu(a.gen_n, a.gen_avg_deg, 2.5, a.seed)
                  : load_edge_list_file(a.graph_path);
    PreprocessedStats stats = compute_stats(g, ClusteringMode::exact, a.seed);
    const double inf = std::numeric_limits<double>::infinity();

    std::cout << "pattern,mode,kl_to_ideal,samplers_to_converge,eta,realized_error,"
                 "eps_hat\n";

    auto run_one = [&](const Pattern &p, Mode mode, WeightConfig terms,
                       const std::string &label, double exact_total) {
        RunConfig cfg;
        cfg.epsilon = a.epsilon;
        cfg.delta = a.delta;
        cfg.threads = env_threads_fallback(a.threads);
        cfg.seed = a.seed;
        cfg.mode = mode;
        cfg.orientation = Orientation::off;
        cfg.terms = terms;
        cfg.max_samplers = 50'000'000;
        MiningResult r = run(g, p, cfg, stats);
        BenchRow row;
        row.pattern = p.name;
        row.mode = label;
        row.samplers = r.samplers_used;
        row.eps_hat = r.eps_hat;
        if (exact_total > 0)
            row.realized = std::abs(r.estimate - exact_total) / exact_total;
        return row;
    };

    if (a.suite == "kl") {
        for (const char *name : {"triangle", "4-clique", "4-chain"}) {
            Pattern p = parse_pattern(name);
            MatchingOrder mo = build_matching_order(p);
            ExactCount ec = exact_count(g, p, mo);
            if (ec.total == 0) continue;
            std::vector<double> ideal = ideal_first_vertex_distribution(ec);
            std::vector<double> fa = first_vertex_distribution(g, p, stats, 0.8);
            std::vector<double> fu = first_vertex_distribution(g, p, stats, inf);
            BenchRow ra, ru;
            ra.pattern = ru.pattern = name;
            ra.mode = "agis";
            ru.mode = "uniform";
            ra.kl = kl_divergence(ideal, fa);
            ru.kl = kl_divergence(ideal, fu);
            print_row(ra);
            print_row(ru);
        }
    } else if (a.suite == "samplers") {
        for (const char *name : {"3-star-2-star", "triangle-2-star", "triangle-triangle"}) {
            Pattern p = parse_pattern(name);
            MatchingOrder mo = build_matching_order(p);
            // Enumeration cost is proportional to the count itself, which
            // explodes for star-heavy patterns on skewed graphs; only fill the
            // oracle-backed columns on small inputs.
            ExactCount ec;
            if (g.num_vertices <= 400) ec = exact_count(g, p, mo);
            for (Mode m : {Mode::agis, Mode::uniform}) {
                BenchRow row = run_one(p, m, {}, m == Mode::agis ? "agis" : "uniform",
                                       ec.total > 0 ? static_cast<double>(ec.total)
                                                    : 0.0);
                if (ec.total > 0) {
                    PlanBundle plan =
                        build_plan(p, m == Mode::uniform ? inf : 0.8, false);
                    FirstVertexTable t =
                        build_first_vertex_table(CsrView::of(g), plan, stats, {});
                    SampleContext ctx{CsrView::of(g), &plan, stats.clustering.data(),
                                      stats.avg_nbr_degree.data(), &t, {}};
                    row.eta = estimate_mean_eta(ctx, ec, 200000, a.seed + 7).eta;
                    std::vector<double> ideal = ideal_first_vertex_distribution(ec);
                    std::vector<double> q(t.weight.size());
                    for (std::size_t v = 0; v < q.size(); v++)
                        q[v] = t.weight[v] / t.total;
                    row.kl = kl_divergence(ideal, q);
                }
                print_row(row);
            }
        }
    } else if (a.suite == "ablation") {
        for (const char *name : {"4-clique", "4-chain"}) {
            Pattern p = parse_pattern(name);
            MatchingOrder mo = build_matching_order(p);
            ExactCount ec = exact_count(g, p, mo);
            struct TermSet {
                WeightConfig cfg;
                const char *label;
            } sets[] = {{{false, false}, "f1"},
                        {{true, false}, "f1+i1"},
                        {{true, true}, "f1+i1+f2"}};
            for (const auto &ts : sets)
                print_row(run_one(p, Mode::agis, ts.cfg, ts.label,
                                  static_cast<double>(ec.total)));
        }
    } else {
        std::cerr << "error: unknown suite `" << a.suite
                  << "` (choose kl, samplers, or ablation)\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"approximate graph pattern counting via structure-informed "
                 "neighbor sampling"};
    app.require_subcommand(1);

    CountArgs ca;
    auto *count = app.add_subcommand("count", "estimate the embedding count of a pattern");
    count->add_option("--graph", ca.graph_path, "edge-list file")->required();
    count->add_option("--pattern", ca.pattern_spec, "builtin name or edge-list file")
        ->required();
    count->add_option("--epsilon", ca.cfg.epsilon, "relative error target");
    count->add_option("--delta", ca.cfg.delta, "failure probability");
    count->add_option("--beta", ca.cfg.beta, "certainty threshold");
    count->add_option("--seed", ca.cfg.seed, "rng seed");
    count->add_option("--threads", ca.cfg.threads,
                      "worker threads (0 = AGIS_THREADS env or all cores)");
    count->add_option("--check-interval", ca.cfg.check_interval,
                      "outputs between convergence checks");
    count->add_option("--max-samplers", ca.cfg.max_samplers, "sampler budget");
    count->add_option("--max-seconds", ca.cfg.max_seconds, "wall-clock cap (0 = off)");
    count->add_option("--mode", ca.mode, "agis | uniform")
        ->check(CLI::IsMember({"agis", "uniform"}));
    count->add_option("--orientation", ca.orientation, "auto | on | off")
        ->check(CLI::IsMember({"auto", "on", "off"}));
    count->add_option("--sidecar", ca.sidecar_path,
                      "preprocessing sidecar (default <graph>.agispp)");
    count->add_flag("--preprocess-inline", ca.preprocess_inline,
                    "compute per-vertex stats in-process instead of reading a sidecar");
    count->add_option("--clustering", ca.clustering,
                      "exact | sampled (with --preprocess-inline)")
        ->check(CLI::IsMember({"exact", "sampled"}));
    count->add_option("--preprocess-seed", ca.pp_seed, "seed for sampled clustering");
    count->add_flag("--json", ca.json_out, "emit the result as JSON");
    count->add_flag("--profile", ca.profile,
                    "report sampling time split into set-ops / weights / drawing");
    count->add_flag("--no-i1", ca.no_i1, "drop the clustering term from weights");
    count->add_flag("--no-f2", ca.no_f2, "drop the neighbor-degree term from weights");

    ExactArgs ea;
    auto *exact = app.add_subcommand("exact", "brute-force exact count");
    exact->add_option("--graph", ea.graph_path, "edge-list file")->required();
    exact->add_option("--pattern", ea.pattern_spec, "builtin name or edge-list file")
        ->required();
    exact->add_flag("--allow-large", ea.allow_large, "override the size guard");
    exact->add_flag("--json", ea.json_out, "emit the result as JSON");

    PreprocessArgs pa;
    auto *pp = app.add_subcommand("preprocess", "write the per-vertex stats sidecar");
    pp->add_option("--graph", pa.graph_path, "edge-list file")->required();
    pp->add_option("--out", pa.out_path, "sidecar path (default <graph>.agispp)");
    pp->add_option("--mode", pa.mode, "exact | sampled")
        ->check(CLI::IsMember({"exact", "sampled"}));
    pp->add_option("--seed", pa.seed, "seed for sampled clustering");
    pp->add_option("--c-min", pa.c_min, "clustering clamp floor");
    pp->add_flag("--force", pa.force, "overwrite an existing sidecar");

    BenchArgs ba;
    auto *bench = app.add_subcommand("bench", "desk-scale benchmark suites (CSV)");
    bench->add_option("--suite", ba.suite, "kl | samplers | ablation")->required();
    bench->add_option("--graph", ba.graph_path,
                      "edge-list file (default: generated power-law graph)");
    bench->add_option("--gen-n", ba.gen_n, "generated graph vertices");
    bench->add_option("--gen-avg-deg", ba.gen_avg_deg, "generated graph average degree");
    bench->add_option("--seed", ba.seed, "rng seed");
    bench->add_option("--epsilon", ba.epsilon, "relative error target");
    bench->add_option("--delta", ba.delta, "failure probability");
    bench->add_option("--threads", ba.threads, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*count) return cmd_count(ca);
        if (*exact) return cmd_exact(ea);
        if (*pp) return cmd_preprocess(pa);
        if (*bench) return cmd_bench(ba);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
