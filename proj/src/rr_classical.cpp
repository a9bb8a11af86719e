#include "srr/rr_classical.hpp"

#include <cmath>

namespace srr {

namespace {

FieldTensor antisym(const FourVector& a, const FourVector& b) {
    return a * b.transpose() - b * a.transpose();
}

// (F g F v)^mu = g_{alpha beta} F^{mu alpha} F^{beta gamma} v_gamma
FourVector ffv(const FieldTensor& f, const FourVector& v) {
    return f * metric() * f * lower(v);
}

FourVector lorentz_accel(const FieldTensor& f, const FourVector& v, const PhysicalParams& p) {
    return -(p.charge_e / p.m0) * (f * lower(v));
}

}  // namespace

FieldTensor lad_field(const FourVector& v, const FourVector& adot, const PhysicalParams& p) {
    const double c2 = p.c * p.c;
    return -(p.m0 * p.tau0 / (p.charge_e * c2)) * antisym(adot, v);
}

FieldTensor ll_field(const FourVector& x, const FourVector& v, const FieldProfile& profile,
                     const PhysicalParams& p) {
    const double c2 = p.c * p.c;
    FieldTensor grad_term = FieldTensor::Zero();
    if (profile.kind() == ProfileKind::PlaneWaves) {
        const auto grad = profile.field_gradient(x, p);
        for (int a = 0; a < 4; ++a) grad_term += v(a) * grad[a];  // v^alpha d_alpha F
    }
    const FieldTensor f = profile.field(x, p);
    const FourVector w = ffv(f, v);
    return p.tau0 * grad_term - (p.charge_e * p.tau0 / (p.m0 * c2)) * antisym(w, v);
}

Derivs3 lad_rhs(const ClassicalState& s, const FieldProfile& profile, const PhysicalParams& p) {
    if (minkowski_dot(s.v, s.v) <= 0.0)
        throw std::domain_error("lad_rhs: velocity must be timelike");
    const double c2 = p.c * p.c;
    const FieldTensor f = profile.field(s.x, p);
    // G = a - a_lorentz; the perpendicular part of adot is G/tau0,
    // the parallel part is fixed by adot.v = -a.a.
    const FourVector g = s.a - lorentz_accel(f, s.v, p);
    const FourVector g_perp = g - (minkowski_dot(g, s.v) / c2) * s.v;
    const double adot_v = -minkowski_dot(s.a, s.a);
    const FourVector adot = g_perp / p.tau0 + (adot_v / c2) * s.v;
    return {s.v, s.a, adot};
}

namespace {

template <class State, class Rhs>
State rk4_step(const State& y, double h, const Rhs& rhs) {
    const State k1 = rhs(y);
    const State k2 = rhs(y + 0.5 * h * k1);
    const State k3 = rhs(y + 0.5 * h * k2);
    const State k4 = rhs(y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Vec12 = Eigen::Matrix<double, 12, 1>;

Vec8 pack8(const ClassicalState& s) {
    Vec8 y;
    y << s.x, s.v;
    return y;
}
ClassicalState unpack8(const Vec8& y) {
    ClassicalState s;
    s.x = y.head<4>();
    s.v = y.tail<4>();
    return s;
}

Vec12 pack12(const ClassicalState& s) {
    Vec12 y;
    y << s.x, s.v, s.a;
    return y;
}
ClassicalState unpack12(const Vec12& y) {
    ClassicalState s;
    s.x = y.head<4>();
    s.v = y.segment<4>(4);
    s.a = y.tail<4>();
    return s;
}

}  // namespace

Trajectory integrate_ll(const ClassicalState& initial, const FieldProfile& profile,
                        const PhysicalParams& p, double tau_end, double dtau) {
    if (dtau <= 0.0 || tau_end <= 0.0) throw std::domain_error("integrate_ll: bad time span");
    const auto rhs = [&](const Vec8& y) -> Vec8 {
        const ClassicalState s = unpack8(y);
        const FieldTensor f = profile.field(s.x, p) + ll_field(s.x, s.v, profile, p);
        Vec8 d;
        d << s.v, lorentz_accel(f, s.v, p);
        return d;
    };
    Trajectory out;
    const std::size_t n = std::size_t(std::llround(tau_end / dtau));
    out.tau.reserve(n + 1);
    out.states.reserve(n + 1);
    Vec8 y = pack8(initial);
    out.tau.push_back(0.0);
    out.states.push_back(unpack8(y));
    for (std::size_t i = 0; i < n; ++i) {
        y = rk4_step(y, dtau, rhs);
        out.tau.push_back(double(i + 1) * dtau);
        out.states.push_back(unpack8(y));
    }
    return out;
}

LadResult integrate_lad(const ClassicalState& initial, const FieldProfile& profile,
                        const PhysicalParams& p, double tau_end, double dtau, LadMode mode) {
    if (dtau <= 0.0 || tau_end <= 0.0) throw std::domain_error("integrate_lad: bad time span");
    LadResult res;
    const std::size_t n = std::size_t(std::llround(tau_end / dtau));

    if (mode == LadMode::ReducedOrder) {
        // Two iterations of the substitution a -> a0 + tau0 P[adot].
        // The first iterate is the LL equation itself; differentiating it once
        // more along the flow leaves an O(tau0^2) gap to LL, which is the
        // convergence signal the order tests measure.
        const double c2 = p.c * p.c;
        const auto first_iterate = [&](const FourVector& x, const FourVector& v) {
            const FieldTensor f = profile.field(x, p);
            const FourVector a0 = lorentz_accel(f, v, p);
            FieldTensor df_along = FieldTensor::Zero();
            if (profile.kind() == ProfileKind::PlaneWaves) {
                const auto grad = profile.field_gradient(x, p);
                for (int a = 0; a < 4; ++a) df_along += v(a) * grad[a];
            }
            const FourVector adot0 = -(p.charge_e / p.m0) * (df_along * lower(v) + f * lower(a0));
            return FourVector(a0 + p.tau0 * (adot0 - (minkowski_dot(adot0, v) / c2) * v));
        };
        const auto rhs = [&](const Vec8& y) -> Vec8 {
            const ClassicalState s = unpack8(y);
            const FieldTensor f = profile.field(s.x, p);
            const FourVector a0 = lorentz_accel(f, s.v, p);
            const FourVector a1 = first_iterate(s.x, s.v);
            // adot of the first iterate along its own flow, by a centered
            // difference in proper time
            const double d = 1e-6;
            const FourVector ap = first_iterate(s.x + d * s.v, s.v + d * a1);
            const FourVector am = first_iterate(s.x - d * s.v, s.v - d * a1);
            const FourVector adot1 = (ap - am) / (2.0 * d);
            const FourVector a_eff =
                a0 + p.tau0 * (adot1 - (minkowski_dot(adot1, s.v) / c2) * s.v);
            Vec8 dy;
            dy << s.v, a_eff;
            return dy;
        };
        Vec8 y = pack8(initial);
        res.traj.tau.push_back(0.0);
        res.traj.states.push_back(unpack8(y));
        for (std::size_t i = 0; i < n; ++i) {
            y = rk4_step(y, dtau, rhs);
            res.traj.tau.push_back(double(i + 1) * dtau);
            res.traj.states.push_back(unpack8(y));
        }
        return res;
    }

    if (p.tau0 <= 0.0) throw std::domain_error("integrate_lad forward: tau0 must be > 0");
    const auto rhs = [&](const Vec12& y) -> Vec12 {
        const Derivs3 d = lad_rhs(unpack12(y), profile, p);
        Vec12 out;
        out << d.dx, d.dv, d.da;
        return out;
    };
    Vec12 y = pack12(initial);
    res.traj.tau.push_back(0.0);
    res.traj.states.push_back(unpack12(y));
    for (std::size_t i = 0; i < n; ++i) {
        // the self-accelerating branch blows v past the floating range; any
        // failure inside a step is the run-away firing, not a crash
        bool dead = false;
        try {
            y = rk4_step(y, dtau, rhs);
        } catch (const std::exception&) {
            dead = true;
        }
        const ClassicalState s = unpack12(y);
        if (dead || !y.allFinite() || s.a.cwiseAbs().maxCoeff() > 1e100 ||
            s.v.cwiseAbs().maxCoeff() > 1e100) {
            res.runaway_detected = true;
            res.runaway_tau = double(i + 1) * dtau;
            break;
        }
        res.traj.tau.push_back(double(i + 1) * dtau);
        res.traj.states.push_back(s);
    }
    return res;
}

double norm_drift(const Trajectory& t, const PhysicalParams& p) {
    const double c2 = p.c * p.c;
    double worst = 0.0;
    for (const auto& s : t.states)
        worst = std::max(worst, std::abs(minkowski_dot(s.v, s.v) - c2) / c2);
    return worst;
}

}  // namespace srr
