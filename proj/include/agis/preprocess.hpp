#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "agis/graph.hpp"

namespace agis {

enum class ClusteringMode : std::uint8_t { exact = 0, sampled = 1 };

// Per-vertex statistics consumed by the approximate weight function.
struct PreprocessedStats {
    std::vector<double> avg_nbr_degree;
    std::vector<double> clustering; // clamped to [c_min, 1]
    double c_min = 1e-4;
    ClusteringMode mode = ClusteringMode::exact;
    std::uint64_t seed = 0;
};

constexpr double kDefaultClusteringFloor = 1e-4;

std::vector<double> compute_avg_neighbor_degree(const Graph &g);
std::vector<double> compute_avg_neighbor_degree_serial(const Graph &g);

// Sampled mode draws d(v) unordered pairs of distinct neighbors per vertex;
// exact mode computes the true wedge-closure ratio. Both clamp to [c_min, 1].
std::vector<double> estimate_clustering(const Graph &g, ClusteringMode mode,
                                        std::uint64_t seed,
                                        double c_min = kDefaultClusteringFloor);
std::vector<double> estimate_clustering_serial(const Graph &g, ClusteringMode mode,
                                               std::uint64_t seed,
                                               double c_min = kDefaultClusteringFloor);

PreprocessedStats compute_stats(const Graph &g, ClusteringMode mode,
                                std::uint64_t seed,
                                double c_min = kDefaultClusteringFloor);

// C(n, k) as a 64-bit real via falling factorial; 0 when n < k.
// Table-memoized for n <= 1024, k <= 10.
double choose(std::int64_t n, int k);

// Sidecar binary: magic "AGISPP01", little-endian 64-bit n, mode byte,
// c_min as 64-bit float, then avg_nbr_degree[n] and clustering[n].
void write_sidecar(const std::string &path, const PreprocessedStats &stats);
PreprocessedStats read_sidecar(const std::string &path, vid expected_vertices);

} // namespace agis
