#include "agis/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace agis {

namespace {

struct Searcher {
    const Graph &g;
    const Pattern &p;
    const AuxiliaryArrays &aux;
    vid traj[kMaxPatternVertices];

    std::int64_t extend(int i) {
        const int k = p.num_vertices;
        if (i > k) return 1;
        const auto &step = aux.step[static_cast<std::size_t>(i - 1)];
        std::vector<std::span<const vid>> lists;
        for (int pos : step.backward_pos)
            lists.push_back(g.nbrs(traj[pos]));
        std::vector<vid> cand = intersect_sorted(lists);
        std::int64_t total = 0;
        for (vid v : cand) {
            bool used = false;
            for (int j = 0; j < i - 1; j++)
                if (traj[j] == v) { used = true; break; }
            if (used) continue;
            traj[i - 1] = v;
            total += extend(i + 1);
        }
        return total;
    }
};

} // namespace

ExactCount exact_count(const Graph &g, const Pattern &p, const MatchingOrder &mo,
                       bool allow_large) {
    if (!allow_large && g.num_vertices > kOracleVertexGuard)
        throw std::runtime_error(
            "exact_count: graph has " + std::to_string(g.num_vertices) +
            " vertices (guard " + std::to_string(kOracleVertexGuard) +
            "); cost grows with max_degree^" + std::to_string(p.num_vertices - 1) +
            " per vertex, pass allow_large to override");
    AuxiliaryArrays aux = build_auxiliary_arrays(p, mo);
    ExactCount out;
    out.per_first_vertex.assign(static_cast<std::size_t>(g.num_vertices), 0);
#pragma omp parallel
    {
        Searcher s{g, p, aux, {}};
#pragma omp for schedule(dynamic, 64)
        for (vid v = 0; v < g.num_vertices; v++) {
            s.traj[0] = v;
            out.per_first_vertex[static_cast<std::size_t>(v)] = s.extend(2);
        }
    }
    for (auto c : out.per_first_vertex) out.total += c;
    return out;
}

std::int64_t count_extensions(const Graph &g, const Pattern &p, const MatchingOrder &mo,
                              std::span<const vid> traj) {
    AuxiliaryArrays aux = build_auxiliary_arrays(p, mo);
    Searcher s{g, p, aux, {}};
    // verify the prefix itself respects the backward edges
    for (std::size_t i = 0; i < traj.size(); i++) {
        for (int pos : aux.step[i].backward_pos)
            if (!g.has_edge(traj[static_cast<std::size_t>(pos)], traj[i])) return 0;
        for (std::size_t j = 0; j < i; j++)
            if (traj[j] == traj[i]) return 0;
        s.traj[i] = traj[i];
    }
    return s.extend(static_cast<int>(traj.size()) + 1);
}

std::vector<double> ideal_first_vertex_distribution(const ExactCount &exact) {
    if (exact.total == 0)
        throw std::runtime_error("ideal distribution undefined: C(G,P) = 0");
    std::vector<double> f(exact.per_first_vertex.size());
    for (std::size_t v = 0; v < f.size(); v++)
        f[v] = static_cast<double>(exact.per_first_vertex[v]) /
               static_cast<double>(exact.total);
    return f;
}

double kl_divergence(std::span<const double> p_true, std::span<const double> q) {
    double kl = 0.0;
    for (std::size_t v = 0; v < p_true.size(); v++) {
        if (p_true[v] == 0.0) continue;
        if (q[v] <= 0.0) return std::numeric_limits<double>::infinity();
        kl += p_true[v] * std::log(p_true[v] / q[v]);
    }
    return kl;
}

EtaEstimate estimate_mean_eta(const SampleContext &ctx, const ExactCount &exact,
                              std::int64_t num_samples, std::uint64_t seed) {
    const double c = static_cast<double>(exact.total);
    double sum_sq = 0.0, sum_quad = 0.0;
#pragma omp parallel reduction(+ : sum_sq, sum_quad)
    {
        SampleScratch sc;
#ifdef _OPENMP
        Rng rng(stream_seed(seed, static_cast<std::uint64_t>(omp_get_thread_num())));
#else
        Rng rng(stream_seed(seed, 0));
#endif
#pragma omp for
        for (std::int64_t i = 0; i < num_samples; i++) {
            double x = sample_once(ctx, rng, sc) / c;
            double x2 = x * x;
            sum_sq += x2;
            sum_quad += x2 * x2;
        }
    }
    EtaEstimate e;
    double m2 = sum_sq / static_cast<double>(num_samples);
    double m4 = sum_quad / static_cast<double>(num_samples);
    e.eta = m2 - 1.0;
    double var = std::max(0.0, m4 - m2 * m2);
    e.std_error = std::sqrt(var / static_cast<double>(num_samples));
    return e;
}

} // namespace agis
