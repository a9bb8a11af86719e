#include "srr/fokker_planck.hpp"

#include <cmath>

namespace srr {

Eigen::Index DensityGrid1D::cell_of(double xq) const {
    const double f = (xq - xmin) / dx;
    if (f < 0.0 || f >= double(p.size())) return -1;
    return Eigen::Index(f);
}

DensityGrid1D DensityGrid1D::zeros(double xmin, double xmax, Eigen::Index n) {
    if (n < 3 || xmax <= xmin) throw std::domain_error("DensityGrid1D: bad grid spec");
    DensityGrid1D g;
    g.xmin = xmin;
    g.dx = (xmax - xmin) / double(n);
    g.p = Eigen::ArrayXd::Zero(n);
    return g;
}

DensityGrid1D DensityGrid1D::from_function(double xmin, double xmax, Eigen::Index n,
                                           const std::function<double(double)>& f,
                                           double mass_target) {
    DensityGrid1D g = zeros(xmin, xmax, n);
    for (Eigen::Index i = 0; i < n; ++i) g.p(i) = std::max(0.0, f(g.x(i)));
    const double m = g.mass();
    if (m <= 0.0) throw std::domain_error("DensityGrid1D::from_function: zero mass");
    g.p *= mass_target / m;
    return g;
}

double fp1d_stable_dt(const DensityGrid1D& grid, const Drift1D& v, double lambda0) {
    double vmax = 0.0;
    for (Eigen::Index i = 0; i <= grid.size(); ++i)
        vmax = std::max(vmax, std::abs(v(grid.xmin + double(i) * grid.dx)));
    const double adv = vmax > 0.0 ? grid.dx / vmax : std::numeric_limits<double>::infinity();
    const double dif = lambda0 > 0.0 ? grid.dx * grid.dx / (lambda0 * lambda0)
                                     : std::numeric_limits<double>::infinity();
    return 0.9 * std::min(adv, dif);
}

DensityGrid1D fp1d_step(const DensityGrid1D& grid, const Drift1D& v, double lambda0, double dt,
                        Direction direction) {
    if (dt <= 0.0) throw std::domain_error("fp1d_step: dt must be > 0");
    const double bound = fp1d_stable_dt(grid, v, lambda0);
    if (dt > bound) throw StabilityError(dt, bound);

    const Eigen::Index n = grid.size();
    const double dif = (direction == Direction::Forward ? 1.0 : -1.0) * 0.5 * lambda0 * lambda0;
    DensityGrid1D out = grid;
    // interior fluxes at cell faces i+1/2, walls carry zero flux
    Eigen::ArrayXd flux = Eigen::ArrayXd::Zero(n + 1);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const double xf = grid.xmin + double(i + 1) * grid.dx;
        const double pb = 0.5 * (grid.p(i) + grid.p(i + 1));
        flux(i + 1) = v(xf) * pb - dif * (grid.p(i + 1) - grid.p(i)) / grid.dx;
    }
    for (Eigen::Index i = 0; i < n; ++i)
        out.p(i) = grid.p(i) - dt / grid.dx * (flux(i + 1) - flux(i));
    return out;
}

DensityGrid1D fp1d_evolve(const DensityGrid1D& grid, const Drift1D& v, double lambda0, double dt,
                          Direction direction, std::size_t steps) {
    DensityGrid1D g = grid;
    for (std::size_t s = 0; s < steps; ++s) g = fp1d_step(g, v, lambda0, dt, direction);
    return g;
}

DensityGrid1D fp1d_evolve_t(const DensityGrid1D& grid, const Drift1Dt& v, double lambda0,
                            double dt, Direction direction, std::size_t steps, double t0) {
    DensityGrid1D g = grid;
    for (std::size_t s = 0; s < steps; ++s) {
        const double t = t0 + double(s) * dt;
        g = fp1d_step(g, [&v, t](double x) { return v(x, t); }, lambda0, dt, direction);
    }
    return g;
}

DensityGrid1D density_estimate_1d(std::span<const double> samples, double xmin, double xmax,
                                  Eigen::Index n, std::size_t n_total) {
    DensityGrid1D g = DensityGrid1D::zeros(xmin, xmax, n);
    if (n_total == 0) throw std::domain_error("density_estimate_1d: empty ensemble");
    for (double s : samples) {
        const Eigen::Index i = g.cell_of(s);
        if (i >= 0) g.p(i) += 1.0;
    }
    g.p /= double(n_total) * g.dx;
    return g;
}

Eigen::Index scott_bins(std::size_t n, double sd, double range) {
    if (n < 2 || sd <= 0.0 || range <= 0.0) throw std::domain_error("scott_bins: bad inputs");
    const double width = 3.49 * sd / std::cbrt(double(n));
    return std::max<Eigen::Index>(3, Eigen::Index(std::ceil(range / width)));
}

double osmotic_residual_1d(const VelocityModel& field, const DensityGrid1D& grid, double x,
                           double lambda, double density_floor) {
    const Eigen::Index i = grid.cell_of(x);
    if (i < 1 || i + 1 >= grid.size())
        throw std::domain_error("osmotic_residual_1d: x outside the grid interior");
    const double pm = grid.p(i - 1), pc = grid.p(i), pp = grid.p(i + 1);
    const double floor = density_floor * grid.p.maxCoeff();
    if (pm < floor || pc < floor || pp < floor)
        throw InsufficientStatistics("osmotic_residual_1d: density below the noise floor");
    const double dlnp = (std::log(pp) - std::log(pm)) / (2.0 * grid.dx);
    const double im_v1 = field.velocity(FourVector(0.0, grid.x(i), 0.0, 0.0))(1).imag();
    // Im V^mu = (lambda^2/2) d^mu ln p with d^1 = -d_x  =>  residual below
    return im_v1 + 0.5 * lambda * lambda * dlnp;
}

// ---------------------------------------------------------------------------

Grid2D Grid2D::zeros(double x0min, double x0max, Eigen::Index n0, double x1min, double x1max,
                     Eigen::Index n1) {
    if (n0 < 3 || n1 < 3 || x0max <= x0min || x1max <= x1min)
        throw std::domain_error("Grid2D: bad grid spec");
    Grid2D g;
    g.x0min = x0min;
    g.x1min = x1min;
    g.d0 = (x0max - x0min) / double(n0);
    g.d1 = (x1max - x1min) / double(n1);
    g.n0 = n0;
    g.n1 = n1;
    g.v = Eigen::ArrayXXd::Zero(n0, n1);
    return g;
}

namespace {

bool locate(const Grid2D& g, const FourVector& x, Eigen::Index& i, Eigen::Index& j) {
    const double f0 = (x(0) - g.x0min) / g.d0;
    const double f1 = (x(1) - g.x1min) / g.d1;
    if (f0 < 0.0 || f0 >= double(g.n0) || f1 < 0.0 || f1 >= double(g.n1)) return false;
    i = Eigen::Index(f0);
    j = Eigen::Index(f1);
    return true;
}

}  // namespace

CurrentDensity2D current_density(const PathEnsemble& ens, const VelocityModel& field,
                                 const PhysicalParams& params, const Grid2D& spec) {
    if (ens.n_snapshots() < 2) throw std::domain_error("current_density: need >= 2 snapshots");
    CurrentDensity2D cur;
    cur.j0 = spec;
    cur.j1 = spec;
    cur.rho_start = spec;
    cur.rho_end = spec;
    cur.e_charge = params.charge_e;
    const double cell = spec.d0 * spec.d1;
    const double ec = params.charge_e * params.c;
    const std::size_t K = ens.n_snapshots();

    for (std::size_t p = 0; p < ens.n_paths; ++p) {
        for (std::size_t k = 0; k < K; ++k) {
            if (!ens.alive_at(p, k)) continue;
            const FourVector& x = ens.at(p, k);
            Eigen::Index i, j;
            if (!locate(spec, x, i, j)) continue;
            // trapezoidal tau weights over the snapshot window
            double w;
            if (k == 0)
                w = 0.5 * (ens.tau[1] - ens.tau[0]);
            else if (k + 1 == K)
                w = 0.5 * (ens.tau[K - 1] - ens.tau[K - 2]);
            else
                w = 0.5 * (ens.tau[k + 1] - ens.tau[k - 1]);
            const FourVector re_v = field.velocity(x).real();
            cur.j0.v(i, j) += -ec * re_v(0) * w;
            cur.j1.v(i, j) += -ec * re_v(1) * w;
            if (k == 0) cur.rho_start.v(i, j) += 1.0;
            if (k + 1 == K) cur.rho_end.v(i, j) += 1.0;
        }
    }
    const double norm = double(ens.n_paths) * cell;
    cur.j0.v /= norm;
    cur.j1.v /= norm;
    cur.rho_start.v /= norm;
    cur.rho_end.v /= norm;
    return cur;
}

FourVector kg_current(const WaveFunction& wf, const FieldProfile& profile, const FourVector& x,
                      const PhysicalParams& params) {
    // j^mu = -(i e c lambda^2 / 2)[phi* D^mu phi - phi (D^mu phi)*]
    //      = e c lambda^2 |phi|^2 [ Im(d^mu ln phi) - (e/hbar) A^mu ]
    const Complex phi = wf.value(x, profile, params);
    const double rho = std::norm(phi);
    const ComplexFourVector lg = wf.log_gradient(x, profile, params);
    const FourVector a = profile.potential(x, params);
    const double lam2 = params.hbar_eff / params.m0;
    FourVector j;
    for (int mu = 0; mu < 4; ++mu)
        j(mu) = params.charge_e * params.c * lam2 * rho *
                (lg(mu).imag() - params.charge_e / params.hbar_eff * a(mu));
    return j;
}

ContinuityReport continuity_residual(const CurrentDensity2D& cur, const PhysicalParams& params) {
    const Grid2D& g = cur.j0;
    ContinuityReport rep;
    rep.residual = Grid2D::zeros(g.x0min + g.d0, g.x0min + g.d0 * double(g.n0 - 1), g.n0 - 2,
                                 g.x1min + g.d1, g.x1min + g.d1 * double(g.n1 - 1), g.n1 - 2);
    const double ec = params.charge_e * params.c;
    double sum2 = 0.0, scale2 = 0.0;
    for (Eigen::Index i = 1; i + 1 < g.n0; ++i)
        for (Eigen::Index j = 1; j + 1 < g.n1; ++j) {
            const double dj0 = (cur.j0.v(i + 1, j) - cur.j0.v(i - 1, j)) / (2.0 * g.d0);
            const double dj1 = (cur.j1.v(i, j + 1) - cur.j1.v(i, j - 1)) / (2.0 * g.d1);
            const double boundary = ec * (cur.rho_end.v(i, j) - cur.rho_start.v(i, j));
            const double r = dj0 + dj1 - boundary;
            rep.residual.v(i - 1, j - 1) = r;
            rep.max_abs = std::max(rep.max_abs, std::abs(r));
            sum2 += r * r;
            const double s = std::abs(cur.j0.v(i, j)) / g.d0 + std::abs(cur.j1.v(i, j)) / g.d1;
            scale2 += s * s;
        }
    rep.rms = scale2 > 0.0 ? std::sqrt(sum2 / scale2) : std::sqrt(sum2);
    return rep;
}

}  // namespace srr
