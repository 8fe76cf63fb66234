#include "agis/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace agis {

bool Graph::has_edge(vid u, vid v) const {
    auto s = nbrs(u);
    return std::binary_search(s.begin(), s.end(), v);
}

static Graph finalize(std::vector<std::pair<vid, vid>> &&edges, LoadSummary *summary) {
    LoadSummary local;
    LoadSummary &sum = summary ? *summary : local;

    // drop self-loops, canonicalize a<b
    std::size_t kept = 0;
    for (auto &e : edges) {
        if (e.first == e.second) {
            sum.self_loops_dropped++;
            continue;
        }
        if (e.first > e.second) std::swap(e.first, e.second);
        edges[kept++] = e;
    }
    edges.resize(kept);

    std::sort(edges.begin(), edges.end());
    auto last = std::unique(edges.begin(), edges.end());
    sum.duplicates_dropped += static_cast<std::int64_t>(edges.end() - last);
    edges.erase(last, edges.end());

    if (edges.empty()) throw std::runtime_error("empty graph: no edges after cleanup");

    // dense remap preserving first-seen order of the cleaned canonical list
    vid max_id = 0;
    for (auto &e : edges) max_id = std::max(max_id, e.second);

    std::vector<vid> id_of;
    std::unordered_map<vid, vid> remap;
    bool dense = true;
    {
        std::vector<char> seen(static_cast<std::size_t>(max_id) + 1, 0);
        vid distinct = 0;
        for (auto &e : edges) {
            for (vid x : {e.first, e.second}) {
                if (!seen[static_cast<std::size_t>(x)]) {
                    seen[static_cast<std::size_t>(x)] = 1;
                    distinct++;
                }
            }
        }
        dense = (distinct == max_id + 1);
        if (!dense) {
            sum.remapped = true;
            remap.reserve(static_cast<std::size_t>(distinct) * 2);
            id_of.reserve(static_cast<std::size_t>(distinct));
            for (auto &e : edges) {
                for (vid *x : {&e.first, &e.second}) {
                    auto it = remap.find(*x);
                    if (it == remap.end()) {
                        vid nid = static_cast<vid>(id_of.size());
                        remap.emplace(*x, nid);
                        id_of.push_back(*x);
                        *x = nid;
                    } else {
                        *x = it->second;
                    }
                }
                if (e.first > e.second) std::swap(e.first, e.second);
            }
        }
    }

    Graph g;
    g.num_vertices = dense ? max_id + 1 : static_cast<vid>(id_of.size());
    g.num_edges = static_cast<std::int64_t>(edges.size());
    g.original_ids = std::move(id_of);

    std::vector<std::int64_t> deg(static_cast<std::size_t>(g.num_vertices), 0);
    for (auto &e : edges) {
        deg[static_cast<std::size_t>(e.first)]++;
        deg[static_cast<std::size_t>(e.second)]++;
    }
    g.offsets.assign(static_cast<std::size_t>(g.num_vertices) + 1, 0);
    for (vid v = 0; v < g.num_vertices; v++)
        g.offsets[static_cast<std::size_t>(v) + 1] =
            g.offsets[static_cast<std::size_t>(v)] + deg[static_cast<std::size_t>(v)];
    g.neighbors.resize(static_cast<std::size_t>(2 * g.num_edges));

    std::vector<std::int64_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
    for (auto &e : edges) {
        g.neighbors[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.first)]++)] = e.second;
        g.neighbors[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.second)]++)] = e.first;
    }
    for (vid v = 0; v < g.num_vertices; v++) {
        auto begin = g.neighbors.begin() + g.offsets[static_cast<std::size_t>(v)];
        auto end = g.neighbors.begin() + g.offsets[static_cast<std::size_t>(v) + 1];
        std::sort(begin, end);
    }
    return g;
}

Graph build_graph(std::vector<std::pair<vid, vid>> edges, LoadSummary *summary) {
    return finalize(std::move(edges), summary);
}

Graph load_edge_list(std::istream &in, LoadSummary *summary) {
    std::vector<std::pair<vid, vid>> edges;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#' || line[pos] == '%') continue;
        vid a = 0, b = 0;
        char extra = 0;
        int n = std::sscanf(line.c_str(), "%ld %ld %c", &a, &b, &extra);
        if (n < 2 || a < 0 || b < 0) {
            throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                                     ": expected \"a b\", got \"" + line + "\"");
        }
        edges.emplace_back(a, b);
    }
    if (edges.empty()) throw std::runtime_error("empty graph: no edges in input");
    return finalize(std::move(edges), summary);
}

Graph load_edge_list_file(const std::string &path, LoadSummary *summary) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return load_edge_list(in, summary);
}

void write_canonical_edge_list(const Graph &g, std::ostream &out) {
    for (vid v = 0; v < g.num_vertices; v++)
        for (vid w : g.nbrs(v))
            if (v < w) out << v << ' ' << w << '\n';
}

static void write_u64(std::ostream &out, std::uint64_t x) {
    unsigned char buf[8];
    for (int i = 0; i < 8; i++) buf[i] = static_cast<unsigned char>(x >> (8 * i));
    out.write(reinterpret_cast<const char *>(buf), 8);
}

static std::uint64_t read_u64(std::istream &in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char *>(buf), 8);
    if (!in) throw std::runtime_error("truncated CSR cache");
    std::uint64_t x = 0;
    for (int i = 0; i < 8; i++) x |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return x;
}

static constexpr char kCsrMagic[8] = {'A', 'G', 'I', 'S', 'C', 'S', 'R', '1'};

void write_csr_cache(const Graph &g, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write CSR cache: " + path);
    out.write(kCsrMagic, 8);
    write_u64(out, static_cast<std::uint64_t>(g.num_vertices));
    write_u64(out, static_cast<std::uint64_t>(g.num_edges));
    for (auto o : g.offsets) write_u64(out, static_cast<std::uint64_t>(o));
    for (auto v : g.neighbors) write_u64(out, static_cast<std::uint64_t>(v));
    if (!out) throw std::runtime_error("write failure: " + path);
}

Graph read_csr_cache(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open CSR cache: " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kCsrMagic, 8) != 0)
        throw std::runtime_error("bad CSR cache magic: " + path);
    Graph g;
    g.num_vertices = static_cast<vid>(read_u64(in));
    g.num_edges = static_cast<std::int64_t>(read_u64(in));
    g.offsets.resize(static_cast<std::size_t>(g.num_vertices) + 1);
    for (auto &o : g.offsets) o = static_cast<std::int64_t>(read_u64(in));
    g.neighbors.resize(static_cast<std::size_t>(2 * g.num_edges));
    for (auto &v : g.neighbors) v = static_cast<vid>(read_u64(in));
    return g;
}

// galloping search: first index in [lo, a.size()) with a[idx] >= key
static std::size_t gallop(std::span<const vid> a, std::size_t lo, vid key) {
    std::size_t step = 1, hi = lo;
    while (hi < a.size() && a[hi] < key) {
        lo = hi + 1;
        hi += step;
        step *= 2;
    }
    hi = std::min(hi, a.size());
    return static_cast<std::size_t>(
        std::lower_bound(a.begin() + lo, a.begin() + hi, key) - a.begin());
}

void intersect_sorted(std::span<const vid> a, std::span<const vid> b,
                      std::vector<vid> &out) {
    out.clear();
    if (a.size() > b.size()) std::swap(a, b);
    if (a.empty()) return;
    if (b.size() / std::max<std::size_t>(a.size(), 1) > 32) {
        // highly skewed: gallop through the long list
        std::size_t j = 0;
        for (vid x : a) {
            j = gallop(b, j, x);
            if (j == b.size()) break;
            if (b[j] == x) out.push_back(x);
        }
        return;
    }
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) i++;
        else if (b[j] < a[i]) j++;
        else { out.push_back(a[i]); i++; j++; }
    }
}

std::vector<vid> intersect_sorted(const std::vector<std::span<const vid>> &lists) {
    if (lists.empty()) return {};
    std::vector<std::span<const vid>> sorted(lists);
    std::sort(sorted.begin(), sorted.end(),
              [](auto &x, auto &y) { return x.size() < y.size(); });
    std::vector<vid> acc(sorted[0].begin(), sorted[0].end());
    std::vector<vid> tmp;
    for (std::size_t k = 1; k < sorted.size(); k++) {
        intersect_sorted(acc, sorted[k], tmp);
        acc.swap(tmp);
        if (acc.empty()) break;
    }
    return acc;
}

OrientedGraph orient(const Graph &g) {
    auto lower_rank = [&](vid u, vid v) {
        std::int64_t du = g.degree(u), dv = g.degree(v);
        return du != dv ? du < dv : u < v;
    };
    OrientedGraph og;
    og.num_vertices = g.num_vertices;
    og.num_edges = g.num_edges;
    og.offsets.assign(static_cast<std::size_t>(g.num_vertices) + 1, 0);
    for (vid v = 0; v < g.num_vertices; v++) {
        std::int64_t out = 0;
        for (vid w : g.nbrs(v))
            if (lower_rank(v, w)) out++;
        og.offsets[static_cast<std::size_t>(v) + 1] = out;
    }
    for (vid v = 0; v < g.num_vertices; v++)
        og.offsets[static_cast<std::size_t>(v) + 1] += og.offsets[static_cast<std::size_t>(v)];
    og.neighbors.resize(static_cast<std::size_t>(og.num_edges));
    for (vid v = 0; v < g.num_vertices; v++) {
        std::int64_t cur = og.offsets[static_cast<std::size_t>(v)];
        for (vid w : g.nbrs(v))
            if (lower_rank(v, w)) og.neighbors[static_cast<std::size_t>(cur++)] = w;
        // source slices are sorted, so out-slices stay sorted
    }
    return og;
}

} // namespace agis
