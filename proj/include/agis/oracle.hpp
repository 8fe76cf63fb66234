#pragma once
#include <cstdint>
#include <span>
#include <vector>

#include "agis/graph.hpp"
#include "agis/pattern.hpp"
#include "agis/sampler.hpp"

namespace agis {

// Exact brute-force results: total ordered embedding count C(G,P) and the
// per-first-vertex successful-extension counts n_(v).
struct ExactCount {
    std::int64_t total = 0;
    std::vector<std::int64_t> per_first_vertex;
};

constexpr vid kOracleVertexGuard = 5000;

// Backtracking enumeration over the matching order with backward-edge checks.
// Counts ordered injective embeddings. Refuses graphs beyond the guard unless
// allow_large is set.
ExactCount exact_count(const Graph &g, const Pattern &p, const MatchingOrder &mo,
                       bool allow_large = false);

// Number of successful trajectories extending a partial trajectory (test aid).
std::int64_t count_extensions(const Graph &g, const Pattern &p, const MatchingOrder &mo,
                              std::span<const vid> traj);

// f_ideal(v | ()) = n_(v) / C(G,P); throws when C(G,P) == 0.
std::vector<double> ideal_first_vertex_distribution(const ExactCount &exact);

// KL(p || q) with natural log; +infinity when q(v) == 0 somewhere p(v) > 0.
double kl_divergence(std::span<const double> p_true, std::span<const double> q);

struct EtaEstimate {
    double eta = 0.0;       // E[X^2]/C^2 - 1
    double std_error = 0.0; // standard error of the second-moment estimate
};

// Empirical mean multiplicative error from num_samples sampler outputs.
EtaEstimate estimate_mean_eta(const SampleContext &ctx, const ExactCount &exact,
                              std::int64_t num_samples, std::uint64_t seed);

} // namespace agis
