#include "agis/convergence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace agis {

namespace {

double norm_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double norm_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

// Acklam's rational approximation, |error| < 1.15e-9 before refinement.
double acklam(double q) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425, p_high = 1.0 - p_low;
    if (q < p_low) {
        double u = std::sqrt(-2.0 * std::log(q));
        return (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
               ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    }
    if (q > p_high) {
        double u = std::sqrt(-2.0 * std::log(1.0 - q));
        return -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
               ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    }
    double u = q - 0.5, r = u * u;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

} // namespace

double inv_norm_cdf(double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::runtime_error("inv_norm_cdf: argument must lie in (0, 1)");
    double x = acklam(q);
    // one Halley refinement step
    double e = norm_cdf(x) - q;
    double u = e / norm_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

ConvergenceDecision converged(const ConvergenceStats &stats, double eps, double delta,
                              std::int64_t n_min) {
    ConvergenceDecision dec;
    dec.estimate = stats.mu();
    if (stats.n < n_min) {
        dec.eps_hat = std::numeric_limits<double>::infinity();
        return dec;
    }
    double mu = stats.mu();
    if (mu == 0.0) {
        dec.eps_hat = std::numeric_limits<double>::infinity();
        return dec;
    }
    double z = inv_norm_cdf(1.0 - delta / 2.0);
    double sigma = std::sqrt(stats.sigma2());
    dec.eps_hat = z * sigma / (std::sqrt(static_cast<double>(stats.n)) * mu);
    dec.converged = dec.eps_hat <= eps;
    return dec;
}

} // namespace agis
