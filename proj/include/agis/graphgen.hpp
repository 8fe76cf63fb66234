#pragma once
#include <cstdint>

#include "agis/graph.hpp"

namespace agis {

// G(n, p) with every unordered pair kept independently.
Graph erdos_renyi(vid n, double p, std::uint64_t seed);

// Chung-Lu graph whose expected degrees follow a power law with the given
// exponent, rescaled to hit avg_deg on average.
Graph powerlaw_chung_lu(vid n, double avg_deg, double exponent, std::uint64_t seed);

} // namespace agis
