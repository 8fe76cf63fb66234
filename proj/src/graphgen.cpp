#include "agis/graphgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "agis/rng.hpp"

namespace agis {

Graph erdos_renyi(vid n, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("erdos_renyi: p outside [0, 1]");
    Rng rng(stream_seed(seed, 0));
    std::vector<std::pair<vid, vid>> edges;
    for (vid u = 0; u < n; u++)
        for (vid v = u + 1; v < n; v++)
            if (rng.next_double() < p) edges.emplace_back(u, v);
    return build_graph(std::move(edges));
}

Graph powerlaw_chung_lu(vid n, double avg_deg, double exponent, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("powerlaw_chung_lu: need n >= 2");
    // target weights w_i proportional to (i+1)^(-1/(exponent-1)), rescaled so
    // the expected average degree matches avg_deg
    std::vector<double> w(static_cast<std::size_t>(n));
    const double alpha = 1.0 / (exponent - 1.0);
    double sum = 0.0;
    for (vid i = 0; i < n; i++) {
        w[static_cast<std::size_t>(i)] = std::pow(static_cast<double>(i + 1), -alpha);
        sum += w[static_cast<std::size_t>(i)];
    }
    const double scale = avg_deg * static_cast<double>(n) / sum;
    for (double &x : w) x *= scale;
    const double total = avg_deg * static_cast<double>(n); // sum of weights after scaling

    Rng rng(stream_seed(seed, 0));
    std::vector<std::pair<vid, vid>> edges;
    for (vid u = 0; u < n; u++) {
        for (vid v = u + 1; v < n; v++) {
            double p = std::min(1.0, w[static_cast<std::size_t>(u)] *
                                         w[static_cast<std::size_t>(v)] / total);
            if (rng.next_double() < p) edges.emplace_back(u, v);
        }
    }
    return build_graph(std::move(edges));
}

} // namespace agis
