#pragma once
#include <vector>

#include "srr/core.hpp"
#include "srr/fields.hpp"

namespace srr {

struct ClassicalState {
    FourVector x = FourVector::Zero();
    FourVector v = FourVector(1.0, 0.0, 0.0, 0.0);  ///< dx/dtau
    FourVector a = FourVector::Zero();              ///< dv/dtau (LAD only)
};

/// F_LAD^{mu nu} = -(m0 tau0 / e c^2) [ adot^mu v^nu - adot^nu v^mu ].
FieldTensor lad_field(const FourVector& v, const FourVector& adot, const PhysicalParams& p);

/// F_LL^{mu nu}: tau0 (v.d) F_ex^{mu nu}
///             - (e tau0 / m0 c^2) [ (F g F v)^mu v^nu - (F g F v)^nu v^mu ].
FieldTensor ll_field(const FourVector& x, const FourVector& v, const FieldProfile& profile,
                     const PhysicalParams& p);

struct Derivs3 {
    FourVector dx, dv, da;
};

/// LAD as a third-order system. The adot component solves
///   m0 a = -e F_ex v + m0 tau0 [ adot - (adot.v/c^2) v ]
/// for adot, using adot.v = -a.a (exact along solutions of v.v = c^2).
Derivs3 lad_rhs(const ClassicalState& s, const FieldProfile& profile, const PhysicalParams& p);

struct Trajectory {
    std::vector<double> tau;
    std::vector<ClassicalState> states;
    std::size_t size() const { return tau.size(); }
};

/// RK4 on (x, v) with dv/dtau = -(e/m0)(F_ex + F_LL) v.
Trajectory integrate_ll(const ClassicalState& initial, const FieldProfile& profile,
                        const PhysicalParams& p, double tau_end, double dtau);

enum class LadMode { Forward, ReducedOrder };

struct LadResult {
    Trajectory traj;
    bool runaway_detected = false;
    double runaway_tau = 0.0;
};

/// Forward mode integrates the third-order system as-is (run-away expected,
/// reported via runaway_detected, not a crash). ReducedOrder substitutes
/// adot by the derivative of the Lorentz acceleration; agrees with LL to
/// O(tau0^2).
LadResult integrate_lad(const ClassicalState& initial, const FieldProfile& profile,
                        const PhysicalParams& p, double tau_end, double dtau, LadMode mode);

/// Largest |v.v - c^2|/c^2 along a trajectory (integrator health metric).
double norm_drift(const Trajectory& t, const PhysicalParams& p);

}  // namespace srr
