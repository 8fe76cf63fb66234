#pragma once
#include <cstdint>
#include <span>
#include <vector>

#include "agis/graph.hpp"
#include "agis/pattern.hpp"
#include "agis/preprocess.hpp"
#include "agis/rng.hpp"

namespace agis {

// Uniform read-only view over an undirected CSR or an oriented DAG CSR.
// In the oriented case neighbors mean out-neighbors and degree means
// out-degree.
struct CsrView {
    const std::int64_t *offsets = nullptr;
    const vid *nbr = nullptr;
    vid num_vertices = 0;

    static CsrView of(const Graph &g) {
        return {g.offsets.data(), g.neighbors.data(), g.num_vertices};
    }
    static CsrView of(const OrientedGraph &g) {
        return {g.offsets.data(), g.neighbors.data(), g.num_vertices};
    }

    std::int64_t degree(vid v) const { return offsets[v + 1] - offsets[v]; }
    std::span<const vid> nbrs(vid v) const {
        return {nbr + offsets[v], static_cast<std::size_t>(offsets[v + 1] - offsets[v])};
    }
};

// Everything derived from the pattern alone, shared immutably by all samplers.
struct PlanBundle {
    Pattern pattern;
    MatchingOrder order;
    AuxiliaryArrays aux;
    DecisionVector decision;
    std::uint64_t automorphisms = 1;
    bool oriented = false;

    struct StepSizes {
        int n_backward = 0, n_f1 = 0, n_ieff = 0, n_f2 = 0;
    };
    std::vector<StepSizes> sizes; // index i-1

    int num_steps() const { return pattern.num_vertices; }
};

// beta above 1 disables the approximate distribution at every step.
PlanBundle build_plan(const Pattern &p, double beta, bool oriented);

// Term-ablation switches for the approximate weight function.
struct WeightConfig {
    bool use_i1 = true;
    bool use_f2 = true;
};

// Cached full-graph distribution for the first vertex (tau-independent).
struct FirstVertexTable {
    std::vector<double> weight;
    std::vector<double> prefix; // inclusive cumulative sums
    double total = 0.0;
};

struct SampleContext {
    CsrView view;
    const PlanBundle *plan = nullptr;
    const double *clustering = nullptr;
    const double *avg_nbr_degree = nullptr;
    const FirstVertexTable *first = nullptr;
    WeightConfig terms;
};

FirstVertexTable build_first_vertex_table(const CsrView &view, const PlanBundle &plan,
                                          const PreprocessedStats &stats,
                                          WeightConfig terms = {});

// Candidate set for trajectory position i >= 2 (1-based): intersection of the
// backward-edge neighborhoods minus already sampled vertices, ascending.
void candidate_set(const SampleContext &ctx, std::span<const vid> traj, int i,
                   std::vector<vid> &out, std::vector<vid> &tmp);

// Unnormalized approximate weight of candidate v at position i (1-based).
double approx_weight(const SampleContext &ctx, vid v, int i);

struct SampleScratch {
    std::vector<vid> traj;
    std::vector<vid> cand;
    std::vector<vid> tmp;
    std::vector<double> weights;
};

// One full sampling trajectory; returns 1/p on success, 0 on a dead end.
double sample_once(const SampleContext &ctx, Rng &rng, SampleScratch &scratch);

} // namespace agis
