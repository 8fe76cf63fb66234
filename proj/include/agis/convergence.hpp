#pragma once
#include <cstdint>

namespace agis {

// Streaming mean / population variance of sampler outputs, mergeable across
// worker threads (Chan's pairwise update). sigma2() is the divide-by-N form.
struct ConvergenceStats {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0; // sum of squared deviations from the running mean

    void add(double x) {
        n++;
        double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    void merge(const ConvergenceStats &other) {
        if (other.n == 0) return;
        if (n == 0) { *this = other; return; }
        double delta = other.mean - mean;
        std::int64_t total = n + other.n;
        m2 += other.m2 + delta * delta *
                             (static_cast<double>(n) * static_cast<double>(other.n) /
                              static_cast<double>(total));
        mean += delta * static_cast<double>(other.n) / static_cast<double>(total);
        n = total;
    }

    double mu() const { return mean; }
    double sigma2() const { return n > 0 ? (m2 > 0.0 ? m2 / static_cast<double>(n) : 0.0) : 0.0; }
    double sum() const { return mean * static_cast<double>(n); }
};

// Inverse standard normal CDF, |error| <= 1e-8 over (0, 1).
double inv_norm_cdf(double q);

struct ConvergenceDecision {
    bool converged = false;
    double eps_hat = 0.0; // +infinity when undefined (mu == 0)
    double estimate = 0.0;
};

constexpr std::int64_t kDefaultMinSamples = 64;

// eps_hat = Phi^{-1}(1 - delta/2) * sigma / (sqrt(N) * mu)
ConvergenceDecision converged(const ConvergenceStats &stats, double eps, double delta,
                              std::int64_t n_min = kDefaultMinSamples);

} // namespace agis
