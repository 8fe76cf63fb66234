#include "agis/sampler.hpp"

#include <algorithm>
#include <cmath>

namespace agis {

PlanBundle build_plan(const Pattern &p, double beta, bool oriented) {
    PlanBundle plan;
    plan.pattern = p;
    plan.order = build_matching_order(p);
    plan.aux = build_auxiliary_arrays(p, plan.order);
    plan.decision = build_decision_vector(p, plan.order, beta);
    plan.automorphisms = count_automorphisms(p);
    plan.oriented = oriented;
    for (auto &st : plan.aux.step) {
        plan.sizes.push_back({static_cast<int>(st.backward.size()),
                              static_cast<int>(st.f1.size()),
                              static_cast<int>(st.ieff.size()),
                              static_cast<int>(st.f2.size())});
    }
    return plan;
}

namespace {

double ipow(double x, int e) {
    double acc = 1.0;
    for (int i = 0; i < e; i++) acc *= x;
    return acc;
}

} // namespace

double approx_weight(const SampleContext &ctx, vid v, int i) {
    const auto &sz = ctx.plan->sizes[static_cast<std::size_t>(i - 1)];
    // Oriented mode: backward edges are in-edges of v in the DAG and never
    // consume out-degree, so nothing to subtract.
    const std::int64_t spent = ctx.plan->oriented ? 0 : sz.n_backward;
    double w = choose(ctx.view.degree(v) - spent, sz.n_f1);
    if (w == 0.0) return 0.0; // provably no extension through v
    if (ctx.terms.use_i1 && sz.n_ieff > 0)
        w *= ipow(ctx.clustering[v], sz.n_ieff);
    if (ctx.terms.use_f2 && sz.n_f2 > 0)
        w *= ipow(ctx.avg_nbr_degree[v], sz.n_f2);
    return w;
}

FirstVertexTable build_first_vertex_table(const CsrView &view, const PlanBundle &plan,
                                          const PreprocessedStats &stats,
                                          WeightConfig terms) {
    FirstVertexTable t;
    const vid n = view.num_vertices;
    t.weight.resize(static_cast<std::size_t>(n));
    t.prefix.resize(static_cast<std::size_t>(n));
    SampleContext ctx{view, &plan, stats.clustering.data(),
                      stats.avg_nbr_degree.data(), nullptr, terms};
    const bool use_approx = plan.decision.use_approx[0] != 0;
    double acc = 0.0;
    for (vid v = 0; v < n; v++) {
        double w = use_approx ? approx_weight(ctx, v, 1)
                              : static_cast<double>(view.degree(v)); // edge-uniform
        t.weight[static_cast<std::size_t>(v)] = w;
        acc += w;
        t.prefix[static_cast<std::size_t>(v)] = acc;
    }
    t.total = acc;
    return t;
}

void candidate_set(const SampleContext &ctx, std::span<const vid> traj, int i,
                   std::vector<vid> &out, std::vector<vid> &tmp) {
    const auto &step = ctx.plan->aux.step[static_cast<std::size_t>(i - 1)];
    const auto &pos = step.backward_pos;
    out.clear();
    if (pos.empty()) return; // connected matching order guarantees at least one

    if (pos.size() == 1) {
        auto s = ctx.view.nbrs(traj[static_cast<std::size_t>(pos[0])]);
        out.assign(s.begin(), s.end());
    } else {
        // smallest list first
        std::size_t smallest = 0;
        for (std::size_t k = 1; k < pos.size(); k++)
            if (ctx.view.degree(traj[static_cast<std::size_t>(pos[k])]) <
                ctx.view.degree(traj[static_cast<std::size_t>(pos[smallest])]))
                smallest = k;
        auto s0 = ctx.view.nbrs(traj[static_cast<std::size_t>(pos[smallest])]);
        out.assign(s0.begin(), s0.end());
        for (std::size_t k = 0; k < pos.size(); k++) {
            if (k == smallest) continue;
            intersect_sorted(out, ctx.view.nbrs(traj[static_cast<std::size_t>(pos[k])]), tmp);
            out.swap(tmp);
            if (out.empty()) return;
        }
    }
    // exclude already sampled vertices (|traj| <= 10, linear scan)
    auto in_traj = [&](vid v) {
        for (vid t : traj)
            if (t == v) return true;
        return false;
    };
    out.erase(std::remove_if(out.begin(), out.end(), in_traj), out.end());
}

double sample_once(const SampleContext &ctx, Rng &rng, SampleScratch &sc) {
    const PlanBundle &plan = *ctx.plan;
    const int k = plan.num_steps();
    sc.traj.clear();
    // Keep the trajectory probability as one ratio: numerator accumulates the
    // per-step normalizers, denominator the chosen weights. A single division
    // at the end keeps integer-valued cases (k-star zero variance) exact.
    double num = 1.0, den = 1.0;

    // first vertex from the cached full-graph table
    {
        const FirstVertexTable &t = *ctx.first;
        double r = rng.next_double() * t.total;
        auto it = std::upper_bound(t.prefix.begin(), t.prefix.end(), r);
        std::size_t v = static_cast<std::size_t>(it - t.prefix.begin());
        if (v >= t.weight.size()) v = t.weight.size() - 1;
        while (v > 0 && t.weight[v] == 0.0) v--; // rounding landed on a zero span
        num *= t.total;
        den *= t.weight[v];
        sc.traj.push_back(static_cast<vid>(v));
    }

    for (int i = 2; i <= k; i++) {
        candidate_set(ctx, sc.traj, i, sc.cand, sc.tmp);
        if (sc.cand.empty()) return 0.0;

        vid chosen;
        if (plan.decision.use_approx[static_cast<std::size_t>(i - 1)]) {
            sc.weights.clear();
            double total = 0.0;
            for (vid v : sc.cand) {
                double w = approx_weight(ctx, v, i);
                sc.weights.push_back(w);
                total += w;
            }
            if (total == 0.0) return 0.0;
            double r = rng.next_double() * total;
            std::size_t idx = 0;
            double acc = 0.0;
            for (; idx + 1 < sc.weights.size(); idx++) {
                acc += sc.weights[idx];
                if (r < acc) break;
            }
            while (sc.weights[idx] == 0.0 && idx > 0) idx--;
            chosen = sc.cand[idx];
            num *= total;
            den *= sc.weights[idx];
        } else {
            std::size_t idx = static_cast<std::size_t>(
                rng.next_below(static_cast<std::uint64_t>(sc.cand.size())));
            chosen = sc.cand[idx];
            num *= static_cast<double>(sc.cand.size());
        }
        sc.traj.push_back(chosen);
    }
    return num / den;
}

} // namespace agis
