#include "agis/engine.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "agis/convergence.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace agis {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

struct Budget {
    std::int64_t max_samplers;
    double max_seconds;
    std::chrono::steady_clock::time_point t0;

    bool time_up() const {
        return max_seconds > 0.0 && seconds_since(t0) >= max_seconds;
    }
};

} // namespace

MiningResult run(const Graph &g, const Pattern &p, const RunConfig &cfg,
                 const PreprocessedStats &stats) {
    if (cfg.orientation == Orientation::on && !p.is_clique())
        throw std::invalid_argument("orientation requires a clique pattern");
    if (cfg.epsilon <= 0.0 || cfg.delta <= 0.0 || cfg.delta >= 1.0)
        throw std::invalid_argument("need epsilon > 0 and delta in (0, 1)");

    MiningResult res;
    auto plan_t0 = std::chrono::steady_clock::now();

    const bool oriented = cfg.orientation == Orientation::on ||
                          (cfg.orientation == Orientation::automatic && p.is_clique());
    const double beta = cfg.mode == Mode::uniform
                            ? std::numeric_limits<double>::infinity()
                            : cfg.beta;

    PlanBundle plan = build_plan(p, beta, oriented);

    OrientedGraph og;
    CsrView view;
    if (oriented) {
        og = orient(g);
        view = CsrView::of(og);
    } else {
        view = CsrView::of(g);
    }

    FirstVertexTable first = build_first_vertex_table(view, plan, stats, cfg.terms);

    res.automorphisms = plan.automorphisms;
    res.oriented = oriented;
    res.matching_order = plan.order.order;
    res.certainty = plan.decision.certainty;
    res.use_approx = plan.decision.use_approx;
    res.plan_seconds = seconds_since(plan_t0);

    // Oriented sampling sees each instance as exactly one trajectory; undirected
    // sampling sees |Aut(P)| of them. Normalize both to the embedding count.
    const double scale = oriented ? static_cast<double>(plan.automorphisms) : 1.0;

    if (first.total <= 0.0) {
        res.warning = "first-vertex weights sum to zero: no vertex can start a "
                      "trajectory, the pattern count is exactly 0";
        res.converged = true;
        return res;
    }

    SampleContext ctx{view, &plan, stats.clustering.data(),
                      stats.avg_nbr_degree.data(), &first, cfg.terms};

    auto samp_t0 = std::chrono::steady_clock::now();
    Budget budget{cfg.max_samplers, cfg.max_seconds, samp_t0};

    ConvergenceStats total;
    ConvergenceDecision dec;
    const int threads = resolve_threads(cfg.threads);

    if (threads == 1) {
        // Serial reference path: exact single stream, checks on the same
        // boundaries as the parallel path.
        Rng rng(stream_seed(cfg.seed, 0));
        SampleScratch sc;
        while (total.n < cfg.max_samplers) {
            std::int64_t chunk =
                std::min(cfg.check_interval, cfg.max_samplers - total.n);
            for (std::int64_t i = 0; i < chunk; i++)
                total.add(sample_once(ctx, rng, sc));
            dec = converged(total, cfg.epsilon, cfg.delta, cfg.n_min);
            if (dec.converged || budget.time_up()) break;
        }
    } else {
        std::atomic<bool> stop{false};
        std::atomic<std::int64_t> issued{0};
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
#endif
        {
#ifdef _OPENMP
            const std::uint64_t stream = static_cast<std::uint64_t>(omp_get_thread_num());
#else
            const std::uint64_t stream = 0;
#endif
            Rng rng(stream_seed(cfg.seed, stream));
            SampleScratch sc;
            while (!stop.load(std::memory_order_relaxed)) {
                std::int64_t begin = issued.fetch_add(cfg.check_interval);
                std::int64_t chunk =
                    std::min(cfg.check_interval, cfg.max_samplers - begin);
                if (chunk <= 0) {
                    stop.store(true, std::memory_order_relaxed);
                    break;
                }
                ConvergenceStats local;
                for (std::int64_t i = 0; i < chunk; i++)
                    local.add(sample_once(ctx, rng, sc));
#ifdef _OPENMP
#pragma omp critical(agis_engine_merge)
#endif
                {
                    total.merge(local);
                    dec = converged(total, cfg.epsilon, cfg.delta, cfg.n_min);
                    if (dec.converged || total.n >= cfg.max_samplers ||
                        budget.time_up())
                        stop.store(true, std::memory_order_relaxed);
                }
            }
        }
        dec = converged(total, cfg.epsilon, cfg.delta, cfg.n_min);
    }

    res.sampling_seconds = seconds_since(samp_t0);
    res.samplers_used = total.n;
    res.converged = dec.converged;
    res.eps_hat = dec.eps_hat;
    res.sigma2 = total.sigma2();
    res.estimate = total.mu() * scale;
    res.instance_estimate = res.estimate / static_cast<double>(plan.automorphisms);
    if (!res.converged)
        res.warning = "stopped before reaching the requested error bound "
                      "(sampler budget or time limit hit)";
    return res;
}

} // namespace agis
