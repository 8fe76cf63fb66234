#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace agis {

constexpr int kMaxPatternVertices = 10;

// Small connected simple pattern graph, vertices 0..num_vertices-1.
struct Pattern {
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges; // canonical a<b
    std::string name;

    bool adjacent(int a, int b) const { return adj_[a] >> b & 1; }
    int degree(int u) const { return __builtin_popcount(adj_[u]); }
    bool is_clique() const;
    std::uint16_t adj_mask(int u) const { return adj_[u]; }

    static Pattern from_edges(int n, std::vector<std::pair<int, int>> edges,
                              std::string name = "");

private:
    std::array<std::uint16_t, kMaxPatternVertices> adj_{};
};

// Builtin name ("triangle", "4-clique", "3-star", "5-cycle", "4-chain",
// "5-house", "4-clique-2-dot", "3-star-2-star", "triangle-2-star",
// "triangle-triangle", "6-cycle-diagonals", "5-cycle-triangle") or a path to
// an edge-list file.
Pattern parse_pattern(const std::string &spec);

std::uint64_t count_automorphisms(const Pattern &p);

// order[i-1] = pattern vertex matched at step i; every prefix is connected.
struct MatchingOrder {
    std::vector<int> order;
};

MatchingOrder build_matching_order(const Pattern &p);

// Per-step edge sets over matching-order positions. backward_pos holds, for
// each backward edge, the 0-based trajectory index of its earlier endpoint.
struct AuxStep {
    std::vector<std::pair<int, int>> backward; // {u_j, u_i}, j < i
    std::vector<std::pair<int, int>> f1;       // hop0 -> hop1 in P_i
    std::vector<std::pair<int, int>> f2;       // hop1 -> hop2 in P_i
    std::vector<std::pair<int, int>> i1;       // internal hop1 edges
    std::vector<std::pair<int, int>> ieff;     // spanning forest of i1
    std::vector<int> backward_pos;
};

struct AuxiliaryArrays {
    std::vector<AuxStep> step; // index i-1
};

AuxiliaryArrays build_auxiliary_arrays(const Pattern &p, const MatchingOrder &mo);

struct DecisionVector {
    std::vector<double> certainty;
    std::vector<char> use_approx; // D^pi(i), index i-1
    double beta = 0.8;
};

// beta above 1 (e.g. +infinity) forces uniform sampling at every step.
DecisionVector build_decision_vector(const Pattern &p, const MatchingOrder &mo,
                                     double beta);

} // namespace agis
