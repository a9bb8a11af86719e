#pragma once
#include <cstddef>
#include <span>
#include <vector>

namespace srr::stats {

/// Pairwise sum with a fixed reduction tree. The result depends only on the
/// order of `v`, never on thread scheduling, so parallel producers that fill
/// slots by index stay bit-reproducible.
double pairwise_sum(std::span<const double> v);

struct MeanSE {
    double mean = 0.0;
    double se   = 0.0;   ///< standard error of the mean
    std::size_t n = 0;
};
MeanSE mean_se(std::span<const double> v);

/// z-score of `mean` against a target given its standard error (0 if se == 0 and equal).
double z_score(double mean, double target, double se);

struct WilsonInterval {
    double p_hat, lo, hi, se;
};
/// 95% Wilson score interval for a binomial fraction.
WilsonInterval wilson(std::size_t successes, std::size_t trials);

/// Kolmogorov-Smirnov statistic of samples against an analytic CDF.
double ks_statistic(std::vector<double> samples, double (*cdf)(double, const void*), const void* ctx);

/// Regularized incomplete gamma functions P(a,x), Q(a,x) = 1 - P(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

/// Survival function of the chi-square distribution with k dof.
double chi2_sf(double x, double k);

/// Standard normal CDF.
double normal_cdf(double x);

/// Mass of an isotropic 3D Gaussian (sigma^2 I) inside a ball of radius eps:
/// erf(u/sqrt2) - sqrt(2/pi) u exp(-u^2/2), u = eps/sigma.
double gaussian_ball_mass_3d(double eps, double sigma);

/// Least-squares slope of log|y| vs log|x| (order-of-convergence estimates).
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace srr::stats
