#pragma once
#include <functional>

#include "srr/core.hpp"
#include "srr/kinematics.hpp"

namespace srr {

class StabilityError : public std::runtime_error {
public:
    StabilityError(double dt, double suggested)
        : std::runtime_error("explicit step dt=" + std::to_string(dt) +
                             " violates the stability bound; use dt <= " +
                             std::to_string(suggested)),
          suggested_dt(suggested) {}
    double suggested_dt;
};

/// Uniform 1D grid carrying cell-centered density values; the cell sum times
/// dx is the conserved mass.
struct DensityGrid1D {
    double xmin = 0.0;
    double dx = 0.0;
    Eigen::ArrayXd p;

    double x(Eigen::Index i) const { return xmin + (double(i) + 0.5) * dx; }
    Eigen::Index size() const { return p.size(); }
    double mass() const { return p.sum() * dx; }
    /// Index of the cell containing x, or -1.
    Eigen::Index cell_of(double x) const;
    static DensityGrid1D zeros(double xmin, double xmax, Eigen::Index n);
    /// Fill from an analytic density, then normalize mass to `mass_target`.
    static DensityGrid1D from_function(double xmin, double xmax, Eigen::Index n,
                                       const std::function<double(double)>& f,
                                       double mass_target = 1.0);
};

using Drift1D = std::function<double(double)>;

/// One explicit flux-form step of  d_t p + d_x [v p] = dir (lambda0^2/2) d_x^2 p,
/// dir = +1 forward, -1 backward. Zero-flux walls: mass conserved to round-off.
DensityGrid1D fp1d_step(const DensityGrid1D& grid, const Drift1D& v, double lambda0, double dt,
                        Direction direction);

/// `steps` repeated applications (drift frozen in time).
DensityGrid1D fp1d_evolve(const DensityGrid1D& grid, const Drift1D& v, double lambda0, double dt,
                          Direction direction, std::size_t steps);

using Drift1Dt = std::function<double(double x, double t)>;

/// Time-dependent drift variant; integrates from t0 over `steps` of dt.
DensityGrid1D fp1d_evolve_t(const DensityGrid1D& grid, const Drift1Dt& v, double lambda0,
                            double dt, Direction direction, std::size_t steps, double t0);

/// dt bound enforced by fp1d_step (advective and diffusive CFL, safety 0.9).
double fp1d_stable_dt(const DensityGrid1D& grid, const Drift1D& v, double lambda0);

/// Histogram density of samples on a fixed grid; integrates to
/// (n kept samples)/(n total) so rejected paths lower the mass.
DensityGrid1D density_estimate_1d(std::span<const double> samples, double xmin, double xmax,
                                  Eigen::Index n, std::size_t n_total);

/// Scott's-rule bin count for n samples of standard deviation sd over a range.
Eigen::Index scott_bins(std::size_t n, double sd, double range);

/// Im V^1(x) + (lambda^2/2) d_x ln p  evaluated on the grid (for the
/// 1D oscillator bed this is the covariant residual Im V^mu - (lambda^2/2) d^mu ln p
/// restricted to mu = 1). Throws InsufficientStatistics below the density floor.
double osmotic_residual_1d(const VelocityModel& field, const DensityGrid1D& grid, double x,
                           double lambda, double density_floor = 1e-8);

// ---------------------------------------------------------------------------
// (x^0, x^1) grids for the current-density and continuity checks

struct Grid2D {
    double x0min = 0.0, x1min = 0.0;
    double d0 = 0.0, d1 = 0.0;
    Eigen::Index n0 = 0, n1 = 0;
    Eigen::ArrayXXd v;  ///< (n0, n1)

    double x0(Eigen::Index i) const { return x0min + (double(i) + 0.5) * d0; }
    double x1(Eigen::Index j) const { return x1min + (double(j) + 0.5) * d1; }
    static Grid2D zeros(double x0min, double x0max, Eigen::Index n0, double x1min, double x1max,
                        Eigen::Index n1);
};

struct CurrentDensity2D {
    Grid2D j0, j1;       ///< tau-integrated current components
    Grid2D rho_start, rho_end;  ///< spacetime density at the window ends
    double e_charge = 1.0;
};

/// j^mu(x) = -e c <int dtau Re V^mu delta(x - xhat)>, marginalized to
/// (x^0, x^1); trapezoidal in tau over the snapshot window.
CurrentDensity2D current_density(const PathEnsemble& ens, const VelocityModel& field,
                                 const PhysicalParams& params, const Grid2D& spec);

/// Pointwise Klein-Gordon current of the wavefunction (the dual route):
/// identically -e c Re V^mu |phi|^2 for Eq.-(33) velocities.
FourVector kg_current(const WaveFunction& wf, const FieldProfile& profile, const FourVector& x,
                      const PhysicalParams& params);

struct ContinuityReport {
    Grid2D residual;        ///< d_mu j^mu - e c (rho_end - rho_start), interior cells
    double rms = 0.0;       ///< over interior cells weighted by local current scale
    double max_abs = 0.0;
};

/// Finite-window continuity: d_mu j^mu = e c [p(x, tau_end) - p(x, tau_start)].
ContinuityReport continuity_residual(const CurrentDensity2D& cur, const PhysicalParams& params);

}  // namespace srr
