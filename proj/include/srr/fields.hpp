#pragma once
#include <vector>

#include "srr/core.hpp"

namespace srr {

// Field conventions, used by every module (the one docs table):
//   F^{i0} = E^i      F^{ij} = -eps^{ijk} B_k    =>   F^{12} = -B_z
// so ConstantMagnetic(b) has F^{12} = -b, F^{21} = +b.

enum class EnvelopeKind { Infinite, Sin2 };

/// Linearly polarized plane wave A^mu = eps^mu * (a0 m0 c / e) * sin(xi) * env(xi),
/// xi = k.x; k null, eps spacelike unit with eps.k = 0 (Lorenz gauge for free).
struct PlaneWaveSpec {
    double a0 = 1.0;
    FourVector k   = FourVector(1.0, 0.0, 0.0, 1.0);
    FourVector eps = FourVector(0.0, 1.0, 0.0, 0.0);
    EnvelopeKind envelope = EnvelopeKind::Infinite;
    double cycles = 0.0;  ///< sin^2 pulse length in wave cycles (Sin2 only)
};

enum class ProfileKind { Vacuum, PlaneWaves, ConstantMagnetic, ConstantCrossed };

class FieldProfile {
public:
    static FieldProfile vacuum();
    static FieldProfile plane_wave(PlaneWaveSpec wave);
    /// Superposition of plane waves (the minimal non-plane-wave configuration).
    static FieldProfile plane_waves(std::vector<PlaneWaveSpec> waves);
    static FieldProfile constant_magnetic(double b_z);
    /// E = E0 x^, B = E0 y^ (|E| = c|B|, E x B along +z), the local
    /// constant-crossed approximation used to define chi from intensity.
    static FieldProfile constant_crossed(double e0);

    ProfileKind kind() const { return kind_; }
    const std::vector<PlaneWaveSpec>& waves() const { return waves_; }
    double b_z() const { return b_z_; }
    double e0() const { return e0_; }

    /// A^mu(x); Vacuum returns the zero vector.
    FourVector potential(const FourVector& x, const PhysicalParams& p) const;
    /// F^{mu nu}(x), analytic; antisymmetric by construction.
    FieldTensor field(const FourVector& x, const PhysicalParams& p) const;
    /// d_alpha F^{mu nu}(x): gradient[alpha] is the tensor differentiated along x^alpha.
    std::array<FieldTensor, 4> field_gradient(const FourVector& x, const PhysicalParams& p) const;

private:
    ProfileKind kind_ = ProfileKind::Vacuum;
    std::vector<PlaneWaveSpec> waves_;
    double b_z_ = 0.0;
    double e0_  = 0.0;
};

/// Central-difference estimate of the Lorenz-gauge residual d_mu A^mu at x.
double gauge_residual(const FieldProfile& profile, const FourVector& x,
                      const PhysicalParams& p, double h);

/// Central-difference residual of the source-free condition d_mu F^{mu nu}; returns the 4-vector.
FourVector source_residual(const FieldProfile& profile, const FourVector& x,
                           const PhysicalParams& p, double h);

/// Finite-difference curl of the potential, for cross-checking eval_field to O(h^2).
FieldTensor field_from_potential_fd(const FieldProfile& profile, const FourVector& x,
                                    const PhysicalParams& p, double h);

}  // namespace srr
