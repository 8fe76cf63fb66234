#include "agis/pattern.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace agis {

bool Pattern::is_clique() const {
    return static_cast<int>(edges.size()) == num_vertices * (num_vertices - 1) / 2;
}

Pattern Pattern::from_edges(int n, std::vector<std::pair<int, int>> edges,
                            std::string name) {
    if (n < 2 || n > kMaxPatternVertices)
        throw std::runtime_error("pattern must have 2.." +
                                 std::to_string(kMaxPatternVertices) + " vertices");
    Pattern p;
    p.num_vertices = n;
    p.name = std::move(name);
    for (auto [a, b] : edges) {
        if (a == b) throw std::runtime_error("pattern has a self-loop");
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw std::runtime_error("pattern edge endpoint out of range");
        if (a > b) std::swap(a, b);
        if (p.adj_[a] >> b & 1) throw std::runtime_error("pattern has a duplicate edge");
        p.adj_[a] |= static_cast<std::uint16_t>(1u << b);
        p.adj_[b] |= static_cast<std::uint16_t>(1u << a);
        p.edges.emplace_back(a, b);
    }
    std::sort(p.edges.begin(), p.edges.end());

    // connectivity
    std::uint16_t seen = 1;
    std::uint16_t frontier = 1;
    while (frontier) {
        std::uint16_t next = 0;
        for (int u = 0; u < n; u++)
            if (frontier >> u & 1) next |= p.adj_[u];
        frontier = next & static_cast<std::uint16_t>(~seen);
        seen |= frontier;
    }
    if (seen != static_cast<std::uint16_t>((1u << n) - 1))
        throw std::runtime_error("pattern is disconnected");
    return p;
}

namespace {

std::vector<std::pair<int, int>> clique_edges(int k) {
    std::vector<std::pair<int, int>> e;
    for (int a = 0; a < k; a++)
        for (int b = a + 1; b < k; b++) e.emplace_back(a, b);
    return e;
}

std::vector<std::pair<int, int>> star_edges(int k) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= k; i++) e.emplace_back(0, i);
    return e;
}

std::vector<std::pair<int, int>> cycle_edges(int k) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < k; i++) e.emplace_back(i, (i + 1) % k);
    return e;
}

std::vector<std::pair<int, int>> chain_edges(int k) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < k; i++) e.emplace_back(i, i + 1);
    return e;
}

bool parse_k_prefix(const std::string &s, const std::string &suffix, int &k) {
    if (s.size() <= suffix.size() + 1) return false;
    if (s.compare(s.size() - suffix.size(), suffix.size(), suffix) != 0) return false;
    std::string head = s.substr(0, s.size() - suffix.size());
    if (head.empty() || head.back() != '-') return false;
    head.pop_back();
    if (head.empty() || head.find_first_not_of("0123456789") != std::string::npos)
        return false;
    k = std::stoi(head);
    return true;
}

} // namespace

Pattern parse_pattern(const std::string &spec) {
    if (spec == "triangle")
        return Pattern::from_edges(3, clique_edges(3), spec);
    if (spec == "5-house") {
        // 4-cycle 0-1-2-3 plus roof apex 4 over the edge {0,1}
        return Pattern::from_edges(
            5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {1, 4}}, spec);
    }
    if (spec == "4-clique-2-dot") {
        auto e = clique_edges(4);
        e.emplace_back(0, 4);
        e.emplace_back(0, 5);
        return Pattern::from_edges(6, e, spec);
    }
    if (spec == "3-star-2-star") {
        return Pattern::from_edges(
            7, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {4, 5}, {4, 6}}, spec);
    }
    if (spec == "triangle-2-star") {
        return Pattern::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}}, spec);
    }
    if (spec == "triangle-triangle") {
        return Pattern::from_edges(
            6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {0, 3}}, spec);
    }
    if (spec == "6-cycle-diagonals") {
        auto e = cycle_edges(6);
        e.emplace_back(0, 2);
        e.emplace_back(0, 4);
        return Pattern::from_edges(6, e, spec);
    }
    if (spec == "5-cycle-triangle") {
        // 5-cycle 0..4 and triangle 5..7 joined by the bridge {0,5}
        auto e = cycle_edges(5);
        e.emplace_back(5, 6);
        e.emplace_back(5, 7);
        e.emplace_back(6, 7);
        e.emplace_back(0, 5);
        return Pattern::from_edges(8, e, spec);
    }
    int k = 0;
    if (parse_k_prefix(spec, "clique", k)) return Pattern::from_edges(k, clique_edges(k), spec);
    if (parse_k_prefix(spec, "star", k)) return Pattern::from_edges(k + 1, star_edges(k), spec);
    if (parse_k_prefix(spec, "cycle", k)) {
        if (k < 3) throw std::runtime_error("cycle needs k >= 3");
        return Pattern::from_edges(k, cycle_edges(k), spec);
    }
    if (parse_k_prefix(spec, "chain", k)) return Pattern::from_edges(k, chain_edges(k), spec);

    // otherwise treat as an edge-list file
    std::ifstream in(spec);
    if (!in)
        throw std::runtime_error("unknown pattern name and not a readable file: " + spec);
    std::vector<std::pair<int, int>> edges;
    std::string line;
    std::int64_t lineno = 0;
    int max_id = -1;
    while (std::getline(in, line)) {
        lineno++;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#' || line[pos] == '%') continue;
        int a, b;
        if (std::sscanf(line.c_str(), "%d %d", &a, &b) != 2 || a < 0 || b < 0)
            throw std::runtime_error("pattern parse error at line " + std::to_string(lineno));
        edges.emplace_back(a, b);
        max_id = std::max({max_id, a, b});
    }
    if (edges.empty()) throw std::runtime_error("pattern file has no edges: " + spec);
    return Pattern::from_edges(max_id + 1, std::move(edges), spec);
}

std::uint64_t count_automorphisms(const Pattern &p) {
    const int n = p.num_vertices;
    std::array<int, kMaxPatternVertices> perm{};
    std::iota(perm.begin(), perm.begin() + n, 0);
    std::uint64_t count = 0;
    do {
        bool ok = true;
        for (auto [a, b] : p.edges) {
            if (!p.adjacent(perm[a], perm[b])) { ok = false; break; }
        }
        if (ok) count++;
    } while (std::next_permutation(perm.begin(), perm.begin() + n));
    return count;
}

namespace {

// BFS hop labels from src within the subgraph induced by `members` (bitmask);
// unreachable vertices get -1.
std::array<int, kMaxPatternVertices> hop_labels(const Pattern &p, int src,
                                                std::uint16_t members) {
    std::array<int, kMaxPatternVertices> dist;
    dist.fill(-1);
    dist[src] = 0;
    std::uint16_t frontier = static_cast<std::uint16_t>(1u << src);
    int hop = 0;
    while (frontier) {
        std::uint16_t next = 0;
        for (int u = 0; u < p.num_vertices; u++)
            if (frontier >> u & 1) next |= p.adj_mask(u);
        next &= members;
        hop++;
        std::uint16_t fresh = 0;
        for (int u = 0; u < p.num_vertices; u++)
            if ((next >> u & 1) && dist[u] < 0) {
                dist[u] = hop;
                fresh |= static_cast<std::uint16_t>(1u << u);
            }
        frontier = fresh;
    }
    return dist;
}

// |F1| and |I1| for candidate u placed next, given the set of still-unsampled
// vertices (including u). Used by the greedy order construction.
std::pair<int, int> order_score(const Pattern &p, int u, std::uint16_t unsampled) {
    std::uint16_t hop1 = p.adj_mask(u) & unsampled;
    int f1 = __builtin_popcount(hop1);
    int i1 = 0;
    for (int a = 0; a < p.num_vertices; a++)
        if (hop1 >> a & 1)
            i1 += __builtin_popcount(static_cast<std::uint16_t>(p.adj_mask(a) & hop1 &
                                                               (~0u << (a + 1))));
    return {f1, i1};
}

} // namespace

MatchingOrder build_matching_order(const Pattern &p) {
    const int n = p.num_vertices;
    MatchingOrder mo;
    std::uint16_t unsampled = static_cast<std::uint16_t>((1u << n) - 1);
    std::uint16_t adj_sampled = 0; // vertices adjacent to the chosen prefix
    for (int i = 1; i <= n; i++) {
        std::uint16_t candidates = (i == 1) ? unsampled
                                            : static_cast<std::uint16_t>(adj_sampled & unsampled);
        int best = -1, best_score = -1;
        for (int u = 0; u < n; u++) {
            if (!(candidates >> u & 1)) continue;
            auto [f1, i1] = order_score(p, u, unsampled);
            int s = f1 + i1;
            if (s > best_score) { best_score = s; best = u; } // ties: lowest id
        }
        mo.order.push_back(best);
        unsampled &= static_cast<std::uint16_t>(~(1u << best));
        adj_sampled |= p.adj_mask(best);
    }
    return mo;
}

AuxiliaryArrays build_auxiliary_arrays(const Pattern &p, const MatchingOrder &mo) {
    const int n = p.num_vertices;
    AuxiliaryArrays aux;
    aux.step.resize(static_cast<std::size_t>(n));
    std::array<int, kMaxPatternVertices> pos{}; // pattern vertex -> order index (0-based)
    for (int i = 0; i < n; i++) pos[mo.order[static_cast<std::size_t>(i)]] = i;

    for (int i = 1; i <= n; i++) {
        AuxStep &st = aux.step[static_cast<std::size_t>(i - 1)];
        int ui = mo.order[static_cast<std::size_t>(i - 1)];

        std::uint16_t remaining = 0;
        for (int j = i; j <= n; j++)
            remaining |= static_cast<std::uint16_t>(1u << mo.order[static_cast<std::size_t>(j - 1)]);

        for (int u = 0; u < n; u++) {
            if (p.adjacent(ui, u) && pos[u] < i - 1) {
                st.backward.emplace_back(u, ui);
                st.backward_pos.push_back(pos[u]);
            }
        }

        auto dist = hop_labels(p, ui, remaining);
        std::uint16_t hop1 = 0;
        for (int u = 0; u < n; u++)
            if ((remaining >> u & 1) && dist[u] == 1) hop1 |= static_cast<std::uint16_t>(1u << u);

        for (auto [a, b] : p.edges) {
            if (!(remaining >> a & 1) || !(remaining >> b & 1)) continue;
            int da = dist[a], db = dist[b];
            if (da > db) { std::swap(a, b); std::swap(da, db); }
            if (da == 0 && db == 1) st.f1.emplace_back(a, b);
            else if (da == 1 && db == 2) st.f2.emplace_back(a, b);
            else if (da == 1 && db == 1) st.i1.emplace_back(a, b);
        }

        // deterministic BFS spanning forest of the subgraph induced by I1,
        // components rooted at their lowest-id vertex
        std::array<std::uint16_t, kMaxPatternVertices> i1_adj{};
        for (auto [a, b] : st.i1) {
            i1_adj[a] |= static_cast<std::uint16_t>(1u << b);
            i1_adj[b] |= static_cast<std::uint16_t>(1u << a);
        }
        std::uint16_t visited = 0;
        for (int root = 0; root < n; root++) {
            if (!(hop1 >> root & 1) || (visited >> root & 1) || i1_adj[root] == 0) continue;
            std::queue<int> q;
            q.push(root);
            visited |= static_cast<std::uint16_t>(1u << root);
            while (!q.empty()) {
                int a = q.front();
                q.pop();
                for (int b = 0; b < n; b++) {
                    if ((i1_adj[a] >> b & 1) && !(visited >> b & 1)) {
                        visited |= static_cast<std::uint16_t>(1u << b);
                        st.ieff.emplace_back(std::min(a, b), std::max(a, b));
                        q.push(b);
                    }
                }
            }
        }
    }
    return aux;
}

DecisionVector build_decision_vector(const Pattern &p, const MatchingOrder &mo,
                                     double beta) {
    const int n = p.num_vertices;
    DecisionVector d;
    d.beta = beta;
    for (int i = 1; i <= n; i++) {
        int ui = mo.order[static_cast<std::size_t>(i - 1)];
        std::uint16_t remaining = 0;
        for (int j = i; j <= n; j++)
            remaining |= static_cast<std::uint16_t>(1u << mo.order[static_cast<std::size_t>(j - 1)]);
        auto dist = hop_labels(p, ui, remaining);
        std::uint16_t far = 0;
        for (int u = 0; u < n; u++)
            if ((remaining >> u & 1) && dist[u] >= 2) far |= static_cast<std::uint16_t>(1u << u);
        // edges taken from the full pattern edge set, as defined
        int far_edges = 0;
        for (auto [a, b] : p.edges)
            if ((far >> a & 1) || (far >> b & 1)) far_edges++;
        int far_vertices = __builtin_popcount(far);
        double certainty =
            1.0 - static_cast<double>(far_edges - far_vertices) / static_cast<double>(n - i + 1);
        d.certainty.push_back(certainty);
        d.use_approx.push_back(certainty >= beta ? 1 : 0);
    }
    return d;
}

} // namespace agis
