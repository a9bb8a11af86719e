#include "srr/rr_stochastic.hpp"

#include <cmath>

namespace srr {

FourVector a_dot(const MeanDerivativeOperator& op, const FourVector& x,
                 const PhysicalParams& p) {
    const FourVector re_v = op.field().velocity(x).real();
    const double vv = minkowski_dot(re_v, re_v);
    if (vv <= 0.0) throw DegenerateVelocity();
    const double c4 = std::pow(p.c, 4);
    const FourVector dv = op.velocity_derivative(x).real();
    const FourVector d2v = op.velocity_derivative2(x).real();
    const double v_dot_dv = minkowski_dot(re_v, dv);
    return c4 / (vv * vv) * d2v - (27.0 / 8.0) * c4 * v_dot_dv / (vv * vv * vv) * dv;
}

FourVector ll_adot(const VelocityModel& field, const FieldProfile& profile, const FourVector& x,
                   const PhysicalParams& p) {
    const ComplexFourVector v = field.velocity(x);
    const FourVector re_v = v.real();
    const FourVector im_v = v.imag();
    const double vv = minkowski_dot(re_v, re_v);
    if (vv <= 0.0) throw DegenerateVelocity();
    const double e_m = p.charge_e / p.m0;

    FieldTensor df_re = FieldTensor::Zero();  // ReV^beta d_beta F
    FieldTensor df_im = FieldTensor::Zero();  // ImV^beta d_beta F
    if (profile.kind() == ProfileKind::PlaneWaves) {
        const auto grad = profile.field_gradient(x, p);
        for (int b = 0; b < 4; ++b) {
            df_re += re_v(b) * grad[b];
            df_im += im_v(b) * grad[b];
        }
    }
    const FieldTensor f = profile.field(x, p);
    const FourVector vddot = -e_m * (df_re * lower(re_v)) + e_m * (df_im * lower(im_v)) +
                             e_m * e_m * (f * metric() * f * lower(re_v));
    const double c4 = std::pow(p.c, 4);
    return c4 / (vv * vv) * vddot;
}

namespace {

double spatial_distance(const FourVector& a, const FourVector& b) {
    const double d1 = a(1) - b(1), d2 = a(2) - b(2), d3 = a(3) - b(3);
    return std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
}

}  // namespace

RRFieldEstimate stochastic_rr_field(const PathEnsemble& ens, const MeanDerivativeOperator& op,
                                    const PhysicalParams& p, std::size_t k, WindowAnchor anchor,
                                    std::size_t anchor_path, double eps,
                                    std::size_t min_window) {
    if (eps <= 0.0) throw std::domain_error("stochastic_rr_field: eps must be > 0");
    FourVector x_anchor;
    if (anchor == WindowAnchor::Average) {
        x_anchor = ens.mean_position(k);
    } else {
        if (anchor_path >= ens.n_paths || !ens.alive_at(anchor_path, k))
            throw std::domain_error("stochastic_rr_field: bad anchor path");
        x_anchor = ens.at(anchor_path, k);
    }

    RRFieldEstimate est;
    est.eps = eps;
    const double scale = -p.m0 * p.tau0 / (p.charge_e * p.c * p.c);

    // per-path kernel values (0 outside the window); mean over all alive paths
    std::vector<std::array<double, 6>> vals;  // upper-triangle (01,02,03,12,13,23)
    vals.reserve(ens.n_paths);
    for (std::size_t q = 0; q < ens.n_paths; ++q) {
        if (!ens.alive_at(q, k)) continue;
        ++est.n_alive;
        const FourVector& x = ens.at(q, k);
        std::array<double, 6> v{0, 0, 0, 0, 0, 0};
        if (spatial_distance(x, x_anchor) <= eps) {
            ++est.n_window;
            const FourVector ad = a_dot(op, x, p);
            const FourVector re_v = op.field().velocity(x).real();
            int idx = 0;
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = mu + 1; nu < 4; ++nu)
                    v[idx++] = ad(mu) * re_v(nu) - ad(nu) * re_v(mu);
        }
        vals.push_back(v);
    }
    if (est.n_window < min_window)
        throw InsufficientStatistics("stochastic_rr_field: window holds " +
                                     std::to_string(est.n_window) + " paths, need " +
                                     std::to_string(min_window));

    int idx = 0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu) {
            std::vector<double> comp(vals.size());
            for (std::size_t i = 0; i < vals.size(); ++i) comp[i] = vals[i][idx];
            const auto ms = stats::mean_se(comp);
            est.value(mu, nu) = scale * ms.mean;
            est.value(nu, mu) = -scale * ms.mean;
            est.se(mu, nu) = std::abs(scale) * ms.se;
            est.se(nu, mu) = est.se(mu, nu);
            ++idx;
        }
    return est;
}

OmegaAveEstimate p_omega_ave(const PathEnsemble& ens, std::size_t k, double eps) {
    if (eps <= 0.0) throw std::domain_error("p_omega_ave: eps must be > 0");
    const FourVector xm = ens.mean_position(k);
    OmegaAveEstimate est;
    est.eps = eps;
    for (std::size_t q = 0; q < ens.n_paths; ++q) {
        if (!ens.alive_at(q, k)) continue;
        ++est.n_alive;
        if (spatial_distance(ens.at(q, k), xm) <= eps) ++est.n_window;
    }
    if (est.n_alive == 0) throw EnsembleCollapse();
    const auto w = stats::wilson(est.n_window, est.n_alive);
    est.p_hat = w.p_hat;
    est.se = w.se;
    est.lo = w.lo;
    est.hi = w.hi;
    return est;
}

double default_window_eps(const PathEnsemble& ens) {
    return ens.lambda * std::sqrt(10.0 * ens.dtau);
}

EhrenfestReport ehrenfest_check(const PathEnsemble& ens, const VelocityModel& field,
                                const FieldProfile& profile, const PhysicalParams& p,
                                std::size_t k) {
    if (k == 0 || k + 1 >= ens.n_snapshots())
        throw std::domain_error("ehrenfest_check: k must be interior");
    const double dplus = ens.tau[k + 1] - ens.tau[k];
    const double dminus = ens.tau[k] - ens.tau[k - 1];
    if (std::abs(dplus - dminus) > 1e-9 * dplus)
        throw std::domain_error("ehrenfest_check: snapshot grid must be uniform around k");
    const double d2 = dplus * dplus;

    EhrenfestReport rep;
    std::array<std::vector<double>, 4> diff, lhs_v, rhs_v;
    for (std::size_t q = 0; q < ens.n_paths; ++q) {
        if (!(ens.alive_at(q, k - 1) && ens.alive_at(q, k) && ens.alive_at(q, k + 1))) continue;
        const FourVector& x0 = ens.at(q, k);
        const FourVector acc = (ens.at(q, k + 1) - 2.0 * x0 + ens.at(q, k - 1)) / d2;
        const FourVector re_v = field.velocity(x0).real();
        const FourVector force = -p.charge_e * (profile.field(x0, p) * lower(re_v));
        for (int mu = 0; mu < 4; ++mu) {
            lhs_v[mu].push_back(p.m0 * acc(mu));
            rhs_v[mu].push_back(force(mu));
            diff[mu].push_back(p.m0 * acc(mu) - force(mu));
        }
    }
    if (diff[0].empty()) throw EnsembleCollapse();
    for (int mu = 0; mu < 4; ++mu) {
        rep.lhs(mu) = stats::mean_se(lhs_v[mu]).mean;
        rep.rhs(mu) = stats::mean_se(rhs_v[mu]).mean;
        const auto d = stats::mean_se(diff[mu]);
        rep.se(mu) = d.se;
        rep.z(mu) = stats::z_score(d.mean, 0.0, d.se);
        rep.max_abs_z = std::max(rep.max_abs_z, std::abs(rep.z(mu)));
    }
    return rep;
}

double larmor_power(const FourVector& /*v*/, const FourVector& a, const PhysicalParams& p) {
    return -p.m0 * p.tau0 * minkowski_dot(a, a);
}

double radiated_power_stochastic(const std::vector<FourVector>& mean_traj, double dtau,
                                 std::size_t k, const OmegaAveEstimate& p_ave,
                                 const PhysicalParams& p) {
    if (mean_traj.size() < 3 || k == 0 || k + 1 >= mean_traj.size())
        throw std::domain_error("radiated_power_stochastic: need 3 grid points around k");
    const FourVector acc =
        (mean_traj[k + 1] - 2.0 * mean_traj[k] + mean_traj[k - 1]) / (dtau * dtau);
    return p_ave.p_hat * larmor_power(FourVector::Zero(), acc, p);
}

FieldTensor lad_bracket_of_mean(const std::vector<FourVector>& mean_traj, double dtau,
                                std::size_t k, const PhysicalParams& p) {
    if (mean_traj.size() < 5 || k < 2 || k + 2 >= mean_traj.size())
        throw std::domain_error("lad_bracket_of_mean: need 5 grid points around k");
    const FourVector d1 = (mean_traj[k + 1] - mean_traj[k - 1]) / (2.0 * dtau);
    const FourVector d3 = (mean_traj[k + 2] - 2.0 * mean_traj[k + 1] + 2.0 * mean_traj[k - 1] -
                           mean_traj[k - 2]) /
                          (2.0 * dtau * dtau * dtau);
    const double scale = -p.m0 * p.tau0 / (p.charge_e * p.c * p.c);
    return scale * (d3 * d1.transpose() - d1 * d3.transpose());
}

}  // namespace srr
