#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "agis/graph.hpp"
#include "agis/pattern.hpp"
#include "agis/preprocess.hpp"
#include "agis/sampler.hpp"

namespace agis {

enum class Mode { agis, uniform };
enum class Orientation { automatic, on, off };

struct RunConfig {
    double epsilon = 0.1;
    double delta = 0.01;
    double beta = 0.8;
    int threads = 0; // 0 = library default
    std::uint64_t seed = 1;
    std::int64_t check_interval = 512;
    std::int64_t max_samplers = 10'000'000'000LL;
    double max_seconds = 0.0; // 0 = no wall-clock cap
    std::int64_t n_min = 64;
    Mode mode = Mode::agis;
    Orientation orientation = Orientation::automatic;
    WeightConfig terms;
};

struct MiningResult {
    double estimate = 0.0;          // of C(G,P), embedding count
    double instance_estimate = 0.0; // estimate / |Aut(P)|
    std::int64_t samplers_used = 0;
    double eps_hat = 0.0;
    bool converged = false;
    double sigma2 = 0.0;
    double plan_seconds = 0.0;
    double sampling_seconds = 0.0;
    std::uint64_t automorphisms = 1;
    bool oriented = false;
    std::vector<int> matching_order;
    std::vector<double> certainty;
    std::vector<char> use_approx;
    std::string warning;
};

// End-to-end run: build plan, dispatch parallel samplers, periodically test
// convergence. threads == 1 takes the serial reference path.
MiningResult run(const Graph &g, const Pattern &p, const RunConfig &cfg,
                 const PreprocessedStats &stats);

} // namespace agis
