#include "srr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace srr::stats {

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t h = v.size() / 2;
    return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

MeanSE mean_se(std::span<const double> v) {
    MeanSE r;
    r.n = v.size();
    if (r.n == 0) return r;
    r.mean = pairwise_sum(v) / double(r.n);
    if (r.n < 2) return r;
    std::vector<double> sq(r.n);
    for (std::size_t i = 0; i < r.n; ++i) {
        const double d = v[i] - r.mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / double(r.n - 1);
    r.se = std::sqrt(var / double(r.n));
    return r;
}

double z_score(double mean, double target, double se) {
    const double d = mean - target;
    if (se == 0.0) return d == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return d / se;
}

WilsonInterval wilson(std::size_t successes, std::size_t trials) {
    if (trials == 0) throw std::domain_error("wilson: no trials");
    const double z = 1.959963984540054;  // 97.5% quantile
    const double n = double(trials);
    const double p = double(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {p, center - half, center + half, std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / n)};
}

double ks_statistic(std::vector<double> samples, double (*cdf)(double, const void*), const void* ctx) {
    if (samples.empty()) throw std::domain_error("ks_statistic: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = double(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double F = cdf(samples[i], ctx);
        d = std::max(d, std::abs(F - double(i) / n));
        d = std::max(d, std::abs(double(i + 1) / n - F));
    }
    return d;
}

namespace {

// Regularized incomplete gamma by series (x < a+1) or continued fraction.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::domain_error("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    return (x < a + 1.0) ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::domain_error("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    return (x < a + 1.0) ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi2_sf(double x, double k) { return gamma_q(k / 2.0, x / 2.0); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double gaussian_ball_mass_3d(double eps, double sigma) {
    if (eps <= 0.0 || sigma <= 0.0) throw std::domain_error("gaussian_ball_mass_3d: bad arguments");
    const double u = eps / sigma;
    return std::erf(u / std::numbers::sqrt2) -
           std::sqrt(2.0 / std::numbers::pi) * u * std::exp(-0.5 * u * u);
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::domain_error("log_log_slope: need >=2 points");
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(std::abs(x[i]));
        const double ly = std::log(std::abs(y[i]));
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    return (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
}

}  // namespace srr::stats
