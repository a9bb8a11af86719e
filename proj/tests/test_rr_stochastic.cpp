#include <doctest.h>

#include <numbers>

#include "srr/rr_stochastic.hpp"

using namespace srr;

namespace {

struct ZeroDrift final : VelocityModel {
    ComplexFourVector velocity(const FourVector&) const override {
        return to_complex(FourVector(1.0, 0.0, 0.0, 0.0));
    }
};

PhysicalParams make_params(double hbar, double tau0) {
    PhysicalParams p;
    p.hbar_eff = hbar;
    p.tau0 = tau0;
    return p;
}

}  // namespace

TEST_CASE("larmor power: basic values and the circular orbit") {
    const PhysicalParams p = make_params(1.0, 0.01);
    CHECK(larmor_power(FourVector(1, 0, 0, 0), FourVector::Zero(), p) == 0.0);
    CHECK(larmor_power(FourVector(1, 0, 0, 0), FourVector(0, 1, 0, 0), p) ==
          doctest::Approx(p.m0 * p.tau0));
    // circular orbit in B_z: a = (0, -w omega cos, -w omega sin, 0), |a.a| = w^2 omega^2
    const double b = 1.3, gamma = 4.0;
    const double omega = p.charge_e * b / p.m0;
    const double w = std::sqrt(gamma * gamma - 1.0);
    const FourVector a(0.0, -w * omega, 0.0, 0.0);
    CHECK(larmor_power(FourVector(gamma, 0, w, 0), a, p) ==
          doctest::Approx(p.m0 * p.tau0 * w * w * omega * omega));
}

TEST_CASE("a_dot vanishes for a uniform velocity field") {
    const PhysicalParams p = make_params(0.01, 1e-3);
    const FieldProfile vac = FieldProfile::vacuum();
    const ComplexVelocityField field(
        WaveFunction::free_particle(FourVector(1.25, 0.75, 0, 0), p), vac, p);
    const MeanDerivativeOperator op(field, p.lambda(), 1e-3);
    const FourVector ad = a_dot(op, FourVector(0.3, -0.2, 0.9, 0.0), p);
    CHECK(ad.cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("a_dot on the rotor flow: classical third derivative, orthogonal second term") {
    // lambda = 0: D_tau^2 V on the rotor equals the orbit's d^3x/dtau^3,
    // and ReV.Re{D_tau V} = 0 kills the 27/8 term identically
    const PhysicalParams p = make_params(0.0, 1e-3);
    const double b = 1.0;
    const RotorVelocityField rotor(b, p);
    const MeanDerivativeOperator op(rotor, 0.0, 1e-4);
    const double omega = rotor.omega();
    for (const auto& x : {FourVector(0.0, 1.0, 0.0, 0.0), FourVector(0.2, 0.4, -0.8, 0.0)}) {
        const FourVector ad = a_dot(op, x, p);
        // orbit through x: d^3 x / dtau^3 = -omega^2 (V spatial part)
        const FourVector v = rotor.real_velocity(x);
        const FourVector expect(0.0, -omega * omega * v(1), -omega * omega * v(2), 0.0);
        CHECK((ad - expect).cwiseAbs().maxCoeff() <= 1e-5);
        // second term orthogonality: V.(V.d)V = 0 on the rotor
        const FourVector dv = op.velocity_derivative(x).real();
        CHECK(std::abs(minkowski_dot(v, dv)) <= 1e-8);
    }
}

TEST_CASE("a_dot matches the finite-differenced LL trajectory in the classical limit") {
    const PhysicalParams p = make_params(0.0, 0.0);
    const double b = 1.0, gamma = std::sqrt(2.0);
    const RotorVelocityField rotor(b, p);
    const MeanDerivativeOperator op(rotor, 0.0, 1e-4);

    ClassicalState init;
    init.x = FourVector(0.0, 1.0, 0.0, 0.0);
    init.v = rotor.real_velocity(init.x);
    CHECK(init.v(0) == doctest::Approx(gamma));
    const FieldProfile prof = FieldProfile::constant_magnetic(b);
    const double dt = 1e-3;
    const Trajectory t = integrate_ll(init, prof, p, 1.0, dt);
    // third derivative of x by differencing v twice at an interior node
    const std::size_t k = t.size() / 2;
    const FourVector d3x =
        (t.states[k + 1].v - 2.0 * t.states[k].v + t.states[k - 1].v) / (dt * dt);
    const FourVector ad = a_dot(op, t.states[k].x, p);
    CHECK((ad - d3x).cwiseAbs().maxCoeff() <= 1e-4 * (1.0 + d3x.cwiseAbs().maxCoeff()));
}

TEST_CASE("ll_adot: constant field reduces to the F.F contraction term") {
    const PhysicalParams p = make_params(0.0, 1e-3);
    const double b = 0.8;
    const RotorVelocityField rotor(b, p);
    const FieldProfile prof = FieldProfile::constant_magnetic(b);
    for (const auto& x : {FourVector(0.0, 1.0, 0.0, 0.0), FourVector(0.5, -0.3, 1.1, 0.0)}) {
        const FourVector la = ll_adot(rotor, prof, x, p);
        const FourVector re_v = rotor.real_velocity(x);
        const double e_m = p.charge_e / p.m0;
        const FieldTensor f = prof.field(x, p);
        const FourVector expect = e_m * e_m * (f * metric() * f * lower(re_v));
        CHECK((la - expect).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("ll_adot agrees with a_dot on the rotor flow (constant field, real V)") {
    const PhysicalParams p = make_params(0.0, 1e-3);
    const double b = 1.0;
    const RotorVelocityField rotor(b, p);
    const FieldProfile prof = FieldProfile::constant_magnetic(b);
    const MeanDerivativeOperator op(rotor, 0.0, 1e-4);
    for (const auto& x : {FourVector(0.0, 1.0, 0.0, 0.0), FourVector(0.1, 0.6, -0.5, 0.0)}) {
        const FourVector a1 = a_dot(op, x, p);
        const FourVector a2 = ll_adot(rotor, prof, x, p);
        CHECK((a1 - a2).cwiseAbs().maxCoeff() <= 1e-5);
    }
}

TEST_CASE("ll_adot agrees with a_dot on the Volkov flow to O(h^2)") {
    const PhysicalParams p = make_params(0.0, 1e-3);
    PlaneWaveSpec w;
    w.a0 = 0.7;
    const FieldProfile wave = FieldProfile::plane_wave(w);
    const double g = 1.5, bz = -std::sqrt(1.0 - 1.0 / (g * g));
    const ComplexVelocityField field(
        WaveFunction::scalar_volkov(FourVector(g, 0, 0, g * bz), p), wave, p);
    const MeanDerivativeOperator op(field, 0.0, 1e-4);
    for (const auto& x : {FourVector(0.4, 0.0, 0.0, 0.1), FourVector(1.7, 0.2, 0.0, -0.6)}) {
        const FourVector a1 = a_dot(op, x, p);
        const FourVector a2 = ll_adot(field, wave, x, p);
        CHECK((a1 - a2).cwiseAbs().maxCoeff() <= 1e-4 * (1.0 + a2.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("a_dot rejects degenerate velocities") {
    const PhysicalParams p = make_params(0.0, 1e-3);
    struct SpacelikeDrift final : VelocityModel {
        ComplexFourVector velocity(const FourVector&) const override {
            return to_complex(FourVector(0.1, 1.0, 0.0, 0.0));
        }
    } drift;
    const MeanDerivativeOperator op(drift, 0.0, 1e-3);
    CHECK_THROWS_AS(a_dot(op, FourVector::Zero(), p), DegenerateVelocity);
}

TEST_CASE("stochastic_rr_field: zero for uniform drift, antisymmetric always") {
    const double lam = 0.05;
    const PhysicalParams p = make_params(lam * lam, 1e-3);
    const FieldProfile vac = FieldProfile::vacuum();
    const ComplexVelocityField field(
        WaveFunction::free_particle(FourVector(1.25, 0.75, 0, 0), p), vac, p);
    EnsembleConfig cfg;
    cfg.tau_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    cfg.n_paths = 2000;
    cfg.master_seed = 11;
    cfg.dtau = 1e-3;
    const PathEnsemble ens = sample_ensemble(InitialDistribution{}, field, lam, cfg);
    const MeanDerivativeOperator op(field, lam, 1e-3);
    const RRFieldEstimate est =
        stochastic_rr_field(ens, op, p, 2, WindowAnchor::Average, 0, 1.0);
    CHECK((est.value + est.value.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(est.value.cwiseAbs().maxCoeff() <= 1e-7);
    CHECK(est.n_window > 1900);
    CHECK_THROWS_AS(stochastic_rr_field(ens, op, p, 2, WindowAnchor::Average, 0, 1e-6),
                    InsufficientStatistics);
}

TEST_CASE("p_omega_ave: deterministic ensembles give 1, diffusive match the ball mass") {
    const PhysicalParams p0 = make_params(0.0, 0.0);
    const RotorVelocityField rotor(1.0, p0);
    EnsembleConfig cfg;
    cfg.tau_grid = {0.0, 0.5, 1.0};
    cfg.n_paths = 500;
    cfg.master_seed = 21;
    cfg.dtau = 1e-3;
    InitialDistribution init;
    init.center = FourVector(0.0, 1.0, 0.0, 0.0);
    const PathEnsemble det = sample_ensemble(init, rotor, 0.0, cfg);
    for (double eps : {1e-6, 0.1, 10.0}) {
        const OmegaAveEstimate est = p_omega_ave(det, 2, eps);
        CHECK(est.p_hat == 1.0);
    }

    // zero spatial drift: P(|x - <x>| < eps) is the 3D gaussian ball mass
    const double lam = 0.3, tau = 1.0;
    const ZeroDrift drift;
    EnsembleConfig cfg2;
    cfg2.tau_grid = {0.0, 0.5, 1.0};
    cfg2.n_paths = 100000;
    cfg2.master_seed = 22;
    cfg2.dtau = 2e-3;
    const PathEnsemble dif = sample_ensemble(InitialDistribution{}, drift, lam, cfg2);
    const double sigma = lam * std::sqrt(tau);
    for (double eps : {0.5 * sigma, sigma, 2.0 * sigma}) {
        const OmegaAveEstimate est = p_omega_ave(dif, 2, eps);
        const double expect = stats::gaussian_ball_mass_3d(eps, sigma);
        CHECK(std::abs(est.p_hat - expect) < 3.0 * est.se + 2e-3);
    }
    // eps -> infinity captures everything
    CHECK(p_omega_ave(dif, 2, 1e9).p_hat == 1.0);
}

TEST_CASE("ehrenfest: free particle trivial, rotor matches the Lorentz force") {
    const double lam = 0.02;
    PhysicalParams p = make_params(lam * lam, 0.0);
    const FieldProfile vac = FieldProfile::vacuum();
    const ComplexVelocityField free_field(
        WaveFunction::free_particle(FourVector(1.25, 0.75, 0, 0), p), vac, p);
    EnsembleConfig cfg;
    cfg.tau_grid = {0.0, 0.2, 0.4, 0.6, 0.8};
    cfg.n_paths = 5000;
    cfg.master_seed = 31;
    cfg.dtau = 1e-3;
    const PathEnsemble ens = sample_ensemble(InitialDistribution{}, free_field, lam, cfg);
    const EhrenfestReport rep = ehrenfest_check(ens, free_field, vac, p, 2);
    CHECK(rep.max_abs_z < 3.5);
    CHECK(rep.rhs.cwiseAbs().maxCoeff() <= 1e-12);

    const double b = 1.0;
    const RotorVelocityField rotor(b, p);
    const FieldProfile prof = FieldProfile::constant_magnetic(b);
    EnsembleConfig cfg2;
    for (int i = 0; i < 9; ++i) cfg2.tau_grid.push_back(0.1 * i);
    cfg2.n_paths = 20000;
    cfg2.master_seed = 32;
    cfg2.dtau = 1e-3;
    InitialDistribution init;
    init.center = FourVector(0.0, 1.0, 0.0, 0.0);
    const PathEnsemble rens = sample_ensemble(init, rotor, lam, cfg2);
    const EhrenfestReport rrep = ehrenfest_check(rens, rotor, prof, p, 4);
    CHECK(rrep.max_abs_z < 3.5);
    // the force side carries the Lorentz value of the orbit
    const double omega = rotor.omega();
    CHECK(rrep.rhs(1) == doctest::Approx(-omega * omega * std::cos(omega * 0.4)).epsilon(0.05));
}

TEST_CASE("radiated power: inertial zero, P = 1 is Larmor, circular synchrotron value") {
    const PhysicalParams p = make_params(0.0, 2e-3);
    OmegaAveEstimate pom;
    pom.p_hat = 1.0;

    std::vector<FourVector> inertial;
    for (int i = 0; i < 5; ++i)
        inertial.push_back(FourVector(0.1 * i, 0.2 * i, 0.0, 0.0));
    CHECK(radiated_power_stochastic(inertial, 0.1, 2, pom, p) == doctest::Approx(0.0));

    // mean trajectory on a circle: acceleration magnitude omega^2 R = omega w
    const double omega = 1.0, r = 2.0;
    std::vector<FourVector> circle;
    const double dtau = 0.01;
    const double gamma = std::sqrt(1.0 + omega * omega * r * r);
    for (int i = 0; i < 9; ++i) {
        const double tau = dtau * i;
        circle.push_back(
            FourVector(gamma * tau, r * std::cos(omega * tau), r * std::sin(omega * tau), 0.0));
    }
    const double power = radiated_power_stochastic(circle, dtau, 4, pom, p);
    const double a2 = omega * omega * omega * omega * r * r;  // -a.a (spacelike)
    CHECK(power == doctest::Approx(p.m0 * p.tau0 * a2).epsilon(1e-3));
    // equals P(omega) x larmor of the mean by construction
    pom.p_hat = 0.37;
    CHECK(radiated_power_stochastic(circle, dtau, 4, pom, p) ==
          doctest::Approx(0.37 * power).epsilon(1e-12));
}

TEST_CASE("two code paths, one prediction: P-scaled LL friction vs radiated-power friction") {
    // route (a): LL equation with tau0 -> P tau0 (the mean-dynamics form);
    // route (b): m0 dv = -e F_ex v - (dW/dt) v with dW/dt = -m0 tau0 P (a.a),
    //            a evaluated as the Lorentz acceleration (reduced order)
    const double b = 1.0, gamma0 = 8.0, tau0 = 1e-3, P = 0.42;
    const double T = 6.0, dt = 1e-3;
    PhysicalParams pa = make_params(0.0, P * tau0);
    const FieldProfile prof = FieldProfile::constant_magnetic(b);
    const double omega = pa.charge_e * b / pa.m0;
    const double w0 = std::sqrt(gamma0 * gamma0 - 1.0);
    ClassicalState init;
    init.x = FourVector(0.0, w0 / omega, 0.0, 0.0);
    init.v = FourVector(gamma0, 0.0, w0, 0.0);
    const Trajectory ta = integrate_ll(init, prof, pa, T, dt);

    // route (b), small custom RK4
    PhysicalParams pb = make_params(0.0, tau0);
    const auto rhs = [&](const Eigen::Matrix<double, 8, 1>& y) {
        const FourVector x = y.head<4>(), v = y.tail<4>();
        const FieldTensor f = prof.field(x, pb);
        const FourVector a_lor = -(pb.charge_e / pb.m0) * (f * lower(v));
        const double dw_dt = -pb.m0 * pb.tau0 * P * minkowski_dot(a_lor, a_lor);
        Eigen::Matrix<double, 8, 1> d;
        d.head<4>() = v;
        d.tail<4>() = a_lor - dw_dt * v / pb.m0;
        return d;
    };
    Eigen::Matrix<double, 8, 1> y;
    y << init.x, init.v;
    double worst = 0.0;
    for (std::size_t i = 1; i < ta.size(); ++i) {
        const auto k1 = rhs(y);
        const auto k2 = rhs((y + 0.5 * dt * k1).eval());
        const auto k3 = rhs((y + 0.5 * dt * k2).eval());
        const auto k4 = rhs((y + dt * k3).eval());
        y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        worst = std::max(worst, std::abs(y(4) - ta.states[i].v(0)) / ta.states[i].v(0));
    }
    // both routes predict the same energy decay to O(tau0^2)
    CHECK(worst <= 20.0 * tau0 * tau0 * omega * omega * gamma0 * gamma0);
    CHECK(worst <= 5e-3);
    // and the decay is substantial enough for the check to mean something
    CHECK(ta.states.back().v(0) < 0.9 * gamma0);
}
