#pragma once
#include "srr/kinematics.hpp"
#include "srr/mean_derivative.hpp"
#include "srr/rr_classical.hpp"

namespace srr {

class DegenerateVelocity : public std::runtime_error {
public:
    DegenerateVelocity() : std::runtime_error("Re V is not timelike here") {}
};

/// adot(x):   c^4 / (ReV.ReV)^2 * Re{D_tau^2 V}
///          - (27/8) c^4 (ReV . Re{D_tau V}) / (ReV.ReV)^3 * Re{D_tau V}
/// Nested mean derivatives are finite differences of the analytic field.
FourVector a_dot(const MeanDerivativeOperator& op, const FourVector& x,
                 const PhysicalParams& p);

/// First-order-in-tau0 form: c^4 Re{Vddot_approx}/(ReV.ReV)^2 with
/// Vddot_approx built from the external-field gradient and F.F contraction.
FourVector ll_adot(const VelocityModel& field, const FieldProfile& profile, const FourVector& x,
                   const PhysicalParams& p);

enum class WindowAnchor { Average, Path };

struct RRFieldEstimate {
    FieldTensor value = FieldTensor::Zero();
    FieldTensor se = FieldTensor::Zero();
    std::size_t n_window = 0, n_alive = 0;
    double eps = 0.0;
};

/// Monte Carlo estimate of the radiation-reaction field at snapshot k:
/// -(m0 tau0 / e c^2) int_window dP [ adot (x) ReV - transpose ], the window
/// being alive paths within spatial distance eps of the anchor.
RRFieldEstimate stochastic_rr_field(const PathEnsemble& ens, const MeanDerivativeOperator& op,
                                    const PhysicalParams& p, std::size_t k, WindowAnchor anchor,
                                    std::size_t anchor_path, double eps,
                                    std::size_t min_window = 100);

struct OmegaAveEstimate {
    double p_hat = 0.0, se = 0.0, lo = 0.0, hi = 0.0;
    double eps = 0.0;
    std::size_t n_window = 0, n_alive = 0;
};

/// Fraction of alive paths within spatial distance eps of the mean position.
OmegaAveEstimate p_omega_ave(const PathEnsemble& ens, std::size_t k, double eps);

/// Default window width lambda * sqrt(10 dtau) used when the scenario
/// does not override eps.
double default_window_eps(const PathEnsemble& ens);

struct EhrenfestReport {
    FourVector lhs = FourVector::Zero();   ///< m0 d^2<x>/dtau^2
    FourVector rhs = FourVector::Zero();   ///< E[-e F ReV]
    FourVector se = FourVector::Zero();
    FourVector z = FourVector::Zero();
    double max_abs_z = 0.0;
};

/// Second difference of the ensemble mean against the mean Lorentz force,
/// z-scored per component through per-path differencing.
EhrenfestReport ehrenfest_check(const PathEnsemble& ens, const VelocityModel& field,
                                const FieldProfile& profile, const PhysicalParams& p,
                                std::size_t k);

/// dW/dt = -m0 tau0 (a.a), Eq.-(82) form; positive for spacelike a.
double larmor_power(const FourVector& v, const FourVector& a, const PhysicalParams& p);

/// Radiated power of the mean trajectory scaled by the existence probability:
/// -m0 tau0 P(Omega_ave) * (d^2<x>/dtau^2 . d^2<x>/dtau^2).
double radiated_power_stochastic(const std::vector<FourVector>& mean_traj, double dtau,
                                 std::size_t k, const OmegaAveEstimate& p_ave,
                                 const PhysicalParams& p);

/// -(m0 tau0/e c^2)[x''' x' - transpose] of the mean trajectory (5-point stencils).
FieldTensor lad_bracket_of_mean(const std::vector<FourVector>& mean_traj, double dtau,
                                std::size_t k, const PhysicalParams& p);

}  // namespace srr
