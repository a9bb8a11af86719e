#include "srr/qfactor.hpp"

#include <cmath>
#include <numbers>

namespace srr {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (double(i) + 0.75) / (double(n) + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - double(j) * p3) / double(j + 1);
            }
            pp = double(n) * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

struct Panel {
    double a, b;
};

// int_s^inf K_{5/3}(t) dt. Dyadic panels toward small t keep the t^{-5/3}
// blow-up resolved at Gauss-Legendre rates; fixed stretch panels cover the
// exponential tail (truncation ~ e^{-78} relative).
double phi_tail(double s, int n_inner) {
    static thread_local std::vector<double> gx, gw;
    static thread_local int cached_n = -1;
    if (cached_n != n_inner) {
        gauss_legendre(n_inner, gx, gw);
        cached_n = n_inner;
    }
    const auto panel = [&](double a, double b) {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double acc = 0.0;
        for (int i = 0; i < n_inner; ++i)
            acc += half * gw[i] * bessel_k(5.0 / 3.0, mid + half * gx[i]);
        return acc;
    };
    double sum = 0.0;
    double a = s;
    while (a < 2.0) {
        const double b = std::min(2.0 * a, 2.0);
        sum += panel(a, b);
        a = b;
    }
    const double t0 = std::max(s, 2.0);
    sum += panel(t0, t0 + 2.0) + panel(t0 + 2.0, t0 + 8.0) + panel(t0 + 8.0, t0 + 28.0) +
           panel(t0 + 28.0, t0 + 78.0);
    return sum;
}

}  // namespace

double bessel_k(double nu, double x) {
    if (x <= 0.0) throw std::domain_error("bessel_k: x must be > 0");
    if (nu < 0.0) nu = -nu;  // K_{-nu} = K_nu
    if (x > 740.0) return 0.0;
    return std::cyl_bessel_k(nu, x);
}

double bessel_k_scaled(double nu, double x) {
    if (x <= 0.0) throw std::domain_error("bessel_k_scaled: x must be > 0");
    if (nu < 0.0) nu = -nu;
    if (x < 100.0) return std::exp(x) * std::cyl_bessel_k(nu, x);
    // asymptotic series, converges to machine precision for x >= 100
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 20; ++k) {
        term *= (mu - double(2 * k - 1) * double(2 * k - 1)) / (8.0 * x * double(k));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return std::sqrt(std::numbers::pi / (2.0 * x)) * sum;
}

QuantumnessEvaluator::QuantumnessEvaluator(QuadratureSpec spec) : spec_(spec) {
    if (spec.outer_points < 4 || spec.inner_points < 4 || spec.s_max < 40.0)
        throw std::domain_error("QuadratureSpec: node counts too small or s_max < 40");

    const auto build = [&](int n_outer, int n_inner) {
        Table t;
        std::vector<double> gx, gw;
        gauss_legendre(n_outer, gx, gw);
        // panel [0,1] under s = z^3 (absorbs the s^{1/3} endpoint of s*Phi)
        for (int i = 0; i < n_outer; ++i) {
            const double z = 0.5 * (gx[i] + 1.0);
            const double wz = 0.5 * gw[i];
            t.s.push_back(z * z * z);
            t.w.push_back(wz * 3.0 * z * z);
        }
        // dyadic panels [1,2], [2,4], ... up to s_max
        double a = 1.0;
        while (a < spec_.s_max) {
            const double b = std::min(2.0 * a, spec_.s_max);
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (int i = 0; i < n_outer; ++i) {
                t.s.push_back(mid + half * gx[i]);
                t.w.push_back(half * gw[i]);
            }
            a = b;
        }
        t.phi.resize(t.s.size());
        t.k23.resize(t.s.size());
        for (std::size_t i = 0; i < t.s.size(); ++i) {
            t.phi[i] = phi_tail(t.s[i], n_inner);
            t.k23[i] = bessel_k(2.0 / 3.0, t.s[i]);
        }
        return t;
    };
    base_ = build(spec_.outer_points, spec_.inner_points);
    fine_ = build(2 * spec_.outer_points, 2 * spec_.inner_points);
}

double QuantumnessEvaluator::Table::eval(double chi, bool with_recoil) const {
    const double C = 9.0 * std::sqrt(3.0) / (8.0 * std::numbers::pi);
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double den = 1.0 + chi * s[i];
        const double den3 = den * den * den;
        double f = s[i] * phi[i] / den3;
        if (with_recoil && chi > 0.0)
            f += chi * chi * s[i] * s[i] * s[i] * k23[i] / (den3 * den);
        sum += w[i] * f;
    }
    return C * sum;
}

double QuantumnessEvaluator::q_full(double chi) const {
    if (chi < 0.0) throw std::domain_error("q_full: chi must be >= 0");
    return fine_.eval(chi, true);
}

double QuantumnessEvaluator::q_sqed(double chi) const {
    if (chi < 0.0) throw std::domain_error("q_sqed: chi must be >= 0");
    return fine_.eval(chi, false);
}

double QuantumnessEvaluator::refinement_delta(double chi) const {
    return std::abs(fine_.eval(chi, true) - base_.eval(chi, true));
}

namespace {

double q_checked(double chi, const QuadratureSpec& spec, bool full) {
    const QuantumnessEvaluator ev(spec);
    const double delta = ev.refinement_delta(chi);
    if (delta > spec.convergence_tol)
        throw std::runtime_error("quantumness quadrature did not converge: delta = " +
                                 std::to_string(delta));
    return full ? ev.q_full(chi) : ev.q_sqed(chi);
}

}  // namespace

double q_full(double chi, const QuadratureSpec& spec) { return q_checked(chi, spec, true); }
double q_sqed(double chi, const QuadratureSpec& spec) { return q_checked(chi, spec, false); }

double compute_chi(const ChiParams& params, const PhysicalParams& phys) {
    if (minkowski_dot(params.velocity, params.velocity) <= 0.0)
        throw std::domain_error("compute_chi: velocity must be timelike");
    const FourVector fv = phys.charge_e * (params.field * lower(params.velocity));
    const double s2 = -minkowski_dot(fv, fv);
    const double c3 = phys.c * phys.c * phys.c;
    const double chi =
        1.5 * phys.hbar_eff / (phys.m0 * phys.m0 * c3) * std::sqrt(std::max(0.0, s2));
    return params.conventional ? (2.0 / 3.0) * chi : chi;
}

double compute_chi_si(double intensity_W_cm2, double energy_MeV, bool conventional) {
    if (intensity_W_cm2 <= 0.0 || energy_MeV <= 0.0)
        throw std::domain_error("compute_chi_si: inputs must be > 0");
    const double gamma = energy_MeV / si::mec2_MeV;
    if (gamma < 1.0) throw std::domain_error("compute_chi_si: energy below rest mass");
    const double beta = std::sqrt(std::max(0.0, 1.0 - 1.0 / (gamma * gamma)));
    const double e0 = peak_field_si(intensity_W_cm2);
    const double chi = gamma * (1.0 + beta) * e0 / si::schwinger_field;
    return conventional ? chi : 1.5 * chi;
}

std::vector<QTableRow> emit_q_table(const std::vector<double>& intensities_W_cm2,
                                    const std::vector<double>& energies_MeV,
                                    const QuadratureSpec& spec) {
    if (intensities_W_cm2.empty() || energies_MeV.empty())
        throw std::domain_error("emit_q_table: grids must be nonempty");
    const QuantumnessEvaluator ev(spec);
    std::vector<QTableRow> rows;
    rows.reserve(intensities_W_cm2.size() * energies_MeV.size());
    for (double I : intensities_W_cm2)
        for (double E : energies_MeV) {
            const double chi = compute_chi_si(I, E);
            rows.push_back({I, E, chi, ev.q_full(chi), ev.q_sqed(chi)});
        }
    return rows;
}

}  // namespace srr
