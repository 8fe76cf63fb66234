#pragma once
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace agis {

using vid = std::int64_t;

struct LoadSummary {
    std::int64_t self_loops_dropped = 0;
    std::int64_t duplicates_dropped = 0;
    bool remapped = false;
};

// Immutable undirected simple graph in CSR form. Neighbor slices are sorted
// strictly ascending; safe for unsynchronized concurrent reads.
struct Graph {
    vid num_vertices = 0;
    std::int64_t num_edges = 0; // undirected edge count
    std::vector<std::int64_t> offsets;
    std::vector<vid> neighbors;
    std::vector<vid> original_ids; // empty when input ids were already dense

    std::int64_t degree(vid v) const { return offsets[v + 1] - offsets[v]; }

    std::span<const vid> nbrs(vid v) const {
        return {neighbors.data() + offsets[v],
                static_cast<std::size_t>(offsets[v + 1] - offsets[v])};
    }

    bool has_edge(vid u, vid v) const;
};

// Each undirected edge kept once, directed from lower (degree, id) rank to
// higher. Acyclic by construction.
struct OrientedGraph {
    vid num_vertices = 0;
    std::int64_t num_edges = 0; // directed edges, equals source num_edges
    std::vector<std::int64_t> offsets;
    std::vector<vid> neighbors;

    std::int64_t out_degree(vid v) const { return offsets[v + 1] - offsets[v]; }

    std::span<const vid> out_nbrs(vid v) const {
        return {neighbors.data() + offsets[v],
                static_cast<std::size_t>(offsets[v + 1] - offsets[v])};
    }
};

Graph load_edge_list(std::istream &in, LoadSummary *summary = nullptr);
Graph load_edge_list_file(const std::string &path, LoadSummary *summary = nullptr);

// Build directly from endpoint pairs (self-loops/duplicates dropped).
Graph build_graph(std::vector<std::pair<vid, vid>> edges, LoadSummary *summary = nullptr);

void write_canonical_edge_list(const Graph &g, std::ostream &out);

// Binary CSR cache: magic "AGISCSR1", then little-endian 64-bit
// n, m, offsets[n+1], neighbors[2m].
void write_csr_cache(const Graph &g, const std::string &path);
Graph read_csr_cache(const std::string &path);

// Exact intersection of sorted ascending sequences.
void intersect_sorted(std::span<const vid> a, std::span<const vid> b,
                      std::vector<vid> &out);
std::vector<vid> intersect_sorted(const std::vector<std::span<const vid>> &lists);

OrientedGraph orient(const Graph &g);

} // namespace agis
