#include <doctest.h>

#include <cmath>
#include <numbers>

#include "srr/qfactor.hpp"

using namespace srr;

namespace {

// Independent oracle: K_nu(x) = e^{-x} int_0^inf e^{-x(cosh t - 1)} cosh(nu t) dt,
// trapezoid on the scaled integrand (entire, double-exponential decay).
// Kept free of the library implementation on purpose.
double bessel_k_oracle_scaled(double nu, double x) {
    // integrand negligible once x(cosh t - 1) > 60 + nu t
    double t_max = 2.0;
    while (x * (std::cosh(t_max) - 1.0) - nu * t_max < 60.0 && t_max < 60.0) t_max += 0.5;
    const int n = 40000;
    const double h = t_max / n;
    double sum = 0.5 * (1.0 + std::exp(-x * (std::cosh(t_max) - 1.0)) * std::cosh(nu * t_max));
    for (int i = 1; i < n; ++i) {
        const double t = h * i;
        sum += std::exp(-x * (std::cosh(t) - 1.0)) * std::cosh(nu * t);
    }
    return sum * h;
}

double bessel_k_oracle(double nu, double x) {
    return std::exp(-x) * bessel_k_oracle_scaled(nu, x);
}

}  // namespace

TEST_CASE("bessel_k against the integral-representation oracle on a log grid") {
    // relative accuracy <= 1e-10 over x in [1e-6, 700] for the three orders
    for (double nu : {1.0 / 3.0, 2.0 / 3.0, 5.0 / 3.0}) {
        for (int i = 0; i <= 100; ++i) {
            const double x = std::pow(10.0, -6.0 + 8.845 * i / 100.0);  // up to ~7e2
            if (x > 700.0) break;
            if (x < 500.0) {
                const double ref = bessel_k_oracle(nu, x);
                CHECK(std::abs(bessel_k(nu, x) - ref) <= 1e-10 * ref);
            } else {
                // compare in scaled form where e^{-x} underflows headroom
                const double ref = bessel_k_oracle_scaled(nu, x);
                CHECK(std::abs(bessel_k_scaled(nu, x) - ref) <= 1e-10 * ref);
            }
        }
    }
}

TEST_CASE("bessel_k frozen spot values") {
    CHECK(bessel_k(1.0 / 3.0, 1.0) == doctest::Approx(0.43843063344153177).epsilon(1e-12));
    CHECK(bessel_k(2.0 / 3.0, 1.0) == doctest::Approx(0.49447506210421127).epsilon(1e-12));
    CHECK(bessel_k(5.0 / 3.0, 1.0) == doctest::Approx(1.0977307162471455).epsilon(1e-12));
    CHECK(bessel_k(5.0 / 3.0, 1e-6) == doctest::Approx(14330188276.891178).epsilon(1e-12));
    CHECK(bessel_k(1.0 / 3.0, 700.0) == doctest::Approx(4.6701467992241679e-306).epsilon(1e-11));
    CHECK(bessel_k_scaled(1.0 / 3.0, 700.0) ==
          doctest::Approx(0.047366125840912324).epsilon(1e-11));
    CHECK(bessel_k_scaled(5.0 / 3.0, 100.0) == doctest::Approx(0.1269175416551925).epsilon(1e-11));
    CHECK(bessel_k(1.0 / 3.0, 800.0) == 0.0);  // underflow region
    CHECK_THROWS_AS(bessel_k(1.0 / 3.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k(1.0 / 3.0, -1.0), std::domain_error);
}

TEST_CASE("recurrence K_{5/3} = K_{1/3} + (4/3x) K_{2/3} to 1e-9") {
    for (double x : {0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 50.0, 200.0}) {
        const double lhs = bessel_k(5.0 / 3.0, x);
        const double rhs = bessel_k(1.0 / 3.0, x) + 4.0 / (3.0 * x) * bessel_k(2.0 / 3.0, x);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * lhs);
    }
}

TEST_CASE("leading asymptotic: e^x sqrt(2x/pi) K_nu(x) -> 1 at the 1/x rate") {
    for (double nu : {1.0 / 3.0, 2.0 / 3.0}) {
        const double mu = 4.0 * nu * nu;
        double prev_dev = 0.0;
        for (double x : {100.0, 200.0, 400.0}) {
            const double ratio =
                bessel_k_scaled(nu, x) * std::sqrt(2.0 * x / std::numbers::pi);
            const double dev = std::abs(ratio - 1.0);
            // first correction (mu-1)/(8x) bounds the deviation
            CHECK(dev <= 2.0 * std::abs(mu - 1.0) / (8.0 * x));
            if (prev_dev > 0.0) CHECK(dev <= 0.6 * prev_dev);  // ~ 1/x decay
            prev_dev = dev;
        }
    }
}

TEST_CASE("q(0) = 1: the normalization integral") {
    const QuantumnessEvaluator ev;
    CHECK(ev.q_full(0.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ev.q_sqed(0.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(q_full(1e-6) == doctest::Approx(0.9999960307143395).epsilon(1e-9));
}

TEST_CASE("q values frozen against the independent high-resolution oracle") {
    const QuantumnessEvaluator ev;
    CHECK(ev.q_full(0.01) == doctest::Approx(0.9623086609858423).epsilon(1e-9));
    CHECK(ev.q_full(0.1) == doctest::Approx(0.7345532983611879).epsilon(1e-9));
    CHECK(ev.q_full(0.5) == doctest::Approx(0.38566478693079065).epsilon(1e-9));
    CHECK(ev.q_full(1.0) == doctest::Approx(0.24735257400930954).epsilon(1e-9));
    CHECK(ev.q_full(10.0) == doctest::Approx(0.02940764776333514).epsilon(1e-9));
    CHECK(ev.q_sqed(0.1) == doctest::Approx(0.7250441995442307).epsilon(1e-9));
    CHECK(ev.q_sqed(1.0) == doctest::Approx(0.21305249792589107).epsilon(1e-9));
    CHECK(ev.q_full(1.0) - ev.q_sqed(1.0) ==
          doctest::Approx(0.03430007608341848).epsilon(1e-8));
}

TEST_CASE("q is monotone decreasing and within (0, 1]") {
    const QuantumnessEvaluator ev;
    double prev_f = 1.0 + 1e-12, prev_s = 1.0 + 1e-12;
    for (int i = 0; i < 50; ++i) {
        const double chi = std::pow(10.0, -2.0 + 4.0 * i / 49.0);  // 1e-2 .. 1e2
        const double qf = ev.q_full(chi);
        const double qs = ev.q_sqed(chi);
        CHECK(qf > 0.0);
        CHECK(qf <= 1.0);
        CHECK(qf < prev_f);
        CHECK(qs < prev_s);
        CHECK(qs <= qf);  // the recoil term is nonnegative
        prev_f = qf;
        prev_s = qs;
    }
}

TEST_CASE("quadrature convergence gate: refinement moves q by < 1e-6") {
    const QuantumnessEvaluator ev;
    for (double chi : {0.0, 1e-6, 0.01, 0.1, 1.0, 10.0})
        CHECK(ev.refinement_delta(chi) < 1e-6);
    QuadratureSpec coarse;
    coarse.outer_points = 4;
    coarse.inner_points = 4;
    coarse.convergence_tol = 1e-14;  // unreachable: must throw
    CHECK_THROWS_AS(q_full(0.5, coarse), std::runtime_error);
}

TEST_CASE("compute_chi: zero field, linearity in gamma, sqrt-intensity scaling") {
    PhysicalParams p;
    ChiParams c;
    c.velocity = FourVector(2.0, std::sqrt(3.0), 0.0, 0.0);
    CHECK(compute_chi(c, p) == 0.0);

    // constant crossed field, head-on: chi scales linearly in gamma
    const FieldProfile crossed = FieldProfile::constant_crossed(1e-3);
    c.field = crossed.field(FourVector::Zero(), p);
    const auto chi_of_gamma = [&](double g) {
        ChiParams cc = c;
        const double b = std::sqrt(1.0 - 1.0 / (g * g));
        cc.velocity = FourVector(g, 0.0, 0.0, -g * b);
        return compute_chi(cc, p);
    };
    const double r = chi_of_gamma(2000.0) / chi_of_gamma(1000.0);
    CHECK(r == doctest::Approx(2.0).epsilon(1e-6));

    // SI route: sqrt in intensity, linear in energy (ultrarelativistic)
    CHECK(compute_chi_si(4e20, 500.0) / compute_chi_si(1e20, 500.0) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(compute_chi_si(1e20, 1000.0) / compute_chi_si(1e20, 500.0) ==
          doctest::Approx(2.0).epsilon(1e-6));

    // conventional flag drops the paper's 3/2
    CHECK(compute_chi_si(1e22, 600.0, true) / compute_chi_si(1e22, 600.0) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    ChiParams bad;
    bad.velocity = FourVector(0.5, 1.0, 0.0, 0.0);
    CHECK_THROWS_AS(compute_chi(bad, p), std::domain_error);
}

TEST_CASE("sim-unit tensor route and SI shortcut give the same chi") {
    // encode 1e22 W/cm^2 at 0.8 um in simulation units (time unit 1/omega_L)
    const SimUnits u = si_to_sim(1e22, 600.0, 0.8);
    PhysicalParams p;
    p.hbar_eff = si::hbar * (2.0 * std::numbers::pi * si::c / 0.8e-6) /
                 (si::electron_mass * si::c * si::c);
    const FieldProfile crossed = FieldProfile::constant_crossed(u.field_amplitude);
    ChiParams c;
    const double g = u.gamma, b = std::sqrt(1.0 - 1.0 / (g * g));
    c.velocity = FourVector(g, 0.0, 0.0, -g * b);
    c.field = crossed.field(FourVector::Zero(), p);
    CHECK(compute_chi(c, p) == doctest::Approx(compute_chi_si(1e22, 600.0)).epsilon(1e-9));
    CHECK(compute_chi(c, p) == doctest::Approx(0.7306832546088373).epsilon(1e-9));
}

TEST_CASE("figure-2 anchor: q(chi*) ~ 0.3") {
    const double chi_star = compute_chi_si(1e22, 600.0);
    CHECK(chi_star == doctest::Approx(0.7306832546088373).epsilon(1e-12));
    const QuantumnessEvaluator ev;
    CHECK(ev.q_full(chi_star) == doctest::Approx(0.30629759743330864).epsilon(1e-9));
}

TEST_CASE("emit_q_table rows") {
    const auto rows = emit_q_table({1e22}, {600.0});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].chi == doctest::Approx(0.7306832546088373).epsilon(1e-12));
    CHECK(rows[0].q_full == doctest::Approx(0.306).epsilon(0.01));
    CHECK(rows[0].q_full == doctest::Approx(q_full(rows[0].chi)).epsilon(1e-12));

    // classical corner of the table
    const auto corner = emit_q_table({1e18}, {1.0});
    CHECK(corner[0].chi < 1e-4);
    CHECK(corner[0].q_full == doctest::Approx(1.0).epsilon(1e-3));

    CHECK_THROWS_AS(emit_q_table({}, {1.0}), std::domain_error);
}
