#include "agis/preprocess.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "agis/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace agis {

std::vector<double> compute_avg_neighbor_degree_serial(const Graph &g) {
    std::vector<double> out(static_cast<std::size_t>(g.num_vertices), 0.0);
    for (vid v = 0; v < g.num_vertices; v++) {
        std::int64_t d = g.degree(v);
        if (d == 0) continue;
        std::int64_t sum = 0;
        for (vid w : g.nbrs(v)) sum += g.degree(w);
        out[static_cast<std::size_t>(v)] =
            static_cast<double>(sum) / static_cast<double>(d);
    }
    return out;
}

std::vector<double> compute_avg_neighbor_degree(const Graph &g) {
    std::vector<double> out(static_cast<std::size_t>(g.num_vertices), 0.0);
#pragma omp parallel for schedule(dynamic, 1024)
    for (vid v = 0; v < g.num_vertices; v++) {
        std::int64_t d = g.degree(v);
        if (d == 0) continue;
        std::int64_t sum = 0;
        for (vid w : g.nbrs(v)) sum += g.degree(w);
        out[static_cast<std::size_t>(v)] =
            static_cast<double>(sum) / static_cast<double>(d);
    }
    return out;
}

namespace {

double clamp_cv(double c, double c_min) { return std::clamp(c, c_min, 1.0); }

// exact wedge-closure ratio of v: closed neighbor pairs / C(d, 2)
double exact_cv(const Graph &g, vid v, std::vector<vid> &scratch) {
    std::int64_t d = g.degree(v);
    auto nv = g.nbrs(v);
    std::int64_t closed_twice = 0;
    for (vid w : nv) {
        intersect_sorted(nv, g.nbrs(w), scratch);
        closed_twice += static_cast<std::int64_t>(scratch.size());
    }
    double pairs = 0.5 * static_cast<double>(d) * static_cast<double>(d - 1);
    return 0.5 * static_cast<double>(closed_twice) / pairs;
}

// d(v) samples of unordered distinct neighbor pairs, with replacement.
// One PRNG stream per vertex keeps the result independent of thread count.
double sampled_cv(const Graph &g, vid v, std::uint64_t seed) {
    std::int64_t d = g.degree(v);
    auto nv = g.nbrs(v);
    Rng rng(stream_seed(seed, static_cast<std::uint64_t>(v)));
    std::int64_t hits = 0;
    for (std::int64_t t = 0; t < d; t++) {
        std::uint64_t a = rng.next_below(static_cast<std::uint64_t>(d));
        std::uint64_t b = rng.next_below(static_cast<std::uint64_t>(d - 1));
        if (b >= a) b++;
        if (g.has_edge(nv[a], nv[b])) hits++;
    }
    return static_cast<double>(hits) / static_cast<double>(d);
}

template <bool Parallel>
std::vector<double> clustering_impl(const Graph &g, ClusteringMode mode,
                                    std::uint64_t seed, double c_min) {
    std::vector<double> out(static_cast<std::size_t>(g.num_vertices), c_min);
    if (mode == ClusteringMode::exact) {
#pragma omp parallel if (Parallel)
        {
            std::vector<vid> scratch;
#pragma omp for schedule(dynamic, 256)
            for (vid v = 0; v < g.num_vertices; v++) {
                if (g.degree(v) < 2) continue;
                out[static_cast<std::size_t>(v)] = clamp_cv(exact_cv(g, v, scratch), c_min);
            }
        }
    } else {
#pragma omp parallel for if (Parallel) schedule(dynamic, 1024)
        for (vid v = 0; v < g.num_vertices; v++) {
            if (g.degree(v) < 2) continue;
            out[static_cast<std::size_t>(v)] = clamp_cv(sampled_cv(g, v, seed), c_min);
        }
    }
    return out;
}

} // namespace

std::vector<double> estimate_clustering(const Graph &g, ClusteringMode mode,
                                        std::uint64_t seed, double c_min) {
    return clustering_impl<true>(g, mode, seed, c_min);
}

std::vector<double> estimate_clustering_serial(const Graph &g, ClusteringMode mode,
                                               std::uint64_t seed, double c_min) {
    return clustering_impl<false>(g, mode, seed, c_min);
}

PreprocessedStats compute_stats(const Graph &g, ClusteringMode mode,
                                std::uint64_t seed, double c_min) {
    PreprocessedStats s;
    s.mode = mode;
    s.seed = seed;
    s.c_min = c_min;
    s.avg_nbr_degree = compute_avg_neighbor_degree(g);
    s.clustering = estimate_clustering(g, mode, seed, c_min);
    return s;
}

double choose(std::int64_t n, int k) {
    if (k < 0) throw std::runtime_error("choose: k must be nonnegative");
    if (n < k) return 0.0;
    if (k == 0) return 1.0;
    constexpr std::int64_t kTableN = 1024;
    constexpr int kTableK = 10;
    if (n <= kTableN && k <= kTableK) {
        static const std::vector<double> table = [] {
            std::vector<double> t(static_cast<std::size_t>((kTableN + 1) * (kTableK + 1)), 0.0);
            for (std::int64_t nn = 0; nn <= kTableN; nn++) {
                for (int kk = 0; kk <= kTableK; kk++) {
                    if (nn < kk) continue;
                    double acc = 1.0;
                    for (int i = 0; i < kk; i++)
                        acc = acc * static_cast<double>(nn - i) / static_cast<double>(i + 1);
                    t[static_cast<std::size_t>(nn * (kTableK + 1) + kk)] = acc;
                }
            }
            return t;
        }();
        return table[static_cast<std::size_t>(n * (kTableK + 1) + k)];
    }
    double acc = 1.0;
    for (int i = 0; i < k; i++)
        acc = acc * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return acc;
}

namespace {

constexpr char kSidecarMagic[8] = {'A', 'G', 'I', 'S', 'P', 'P', '0', '1'};

void put_u64(std::ostream &out, std::uint64_t x) {
    unsigned char buf[8];
    for (int i = 0; i < 8; i++) buf[i] = static_cast<unsigned char>(x >> (8 * i));
    out.write(reinterpret_cast<const char *>(buf), 8);
}

std::uint64_t get_u64(std::istream &in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char *>(buf), 8);
    if (!in) throw std::runtime_error("truncated sidecar file");
    std::uint64_t x = 0;
    for (int i = 0; i < 8; i++) x |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return x;
}

void put_f64(std::ostream &out, double d) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, 8);
    put_u64(out, bits);
}

double get_f64(std::istream &in) {
    std::uint64_t bits = get_u64(in);
    double d;
    std::memcpy(&d, &bits, 8);
    return d;
}

} // namespace

void write_sidecar(const std::string &path, const PreprocessedStats &stats) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write sidecar: " + path);
    out.write(kSidecarMagic, 8);
    put_u64(out, stats.avg_nbr_degree.size());
    char mode = static_cast<char>(stats.mode);
    out.write(&mode, 1);
    put_f64(out, stats.c_min);
    for (double d : stats.avg_nbr_degree) put_f64(out, d);
    for (double d : stats.clustering) put_f64(out, d);
    if (!out) throw std::runtime_error("sidecar write failure: " + path);
}

PreprocessedStats read_sidecar(const std::string &path, vid expected_vertices) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open sidecar: " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kSidecarMagic, 8) != 0)
        throw std::runtime_error("bad sidecar magic: " + path);
    PreprocessedStats s;
    std::uint64_t n = get_u64(in);
    if (expected_vertices >= 0 && static_cast<vid>(n) != expected_vertices)
        throw std::runtime_error("sidecar vertex count " + std::to_string(n) +
                                 " does not match loaded graph (" +
                                 std::to_string(expected_vertices) + ")");
    char mode;
    in.read(&mode, 1);
    if (!in || (mode != 0 && mode != 1))
        throw std::runtime_error("bad sidecar mode byte: " + path);
    s.mode = static_cast<ClusteringMode>(mode);
    s.c_min = get_f64(in);
    s.avg_nbr_degree.resize(n);
    for (auto &d : s.avg_nbr_degree) d = get_f64(in);
    s.clustering.resize(n);
    for (auto &d : s.clustering) d = get_f64(in);
    return s;
}

} // namespace agis
