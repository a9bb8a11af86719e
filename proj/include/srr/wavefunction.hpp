#pragma once
#include <memory>
#include <variant>

#include "srr/core.hpp"
#include "srr/fields.hpp"

namespace srr {

/// Raised where the complex velocity hits a node of the wavefunction:
/// Eq.-of-motion drifts diverge there, so samplers must reject, not explode.
class NodeSingularity : public std::runtime_error {
public:
    explicit NodeSingularity(const FourVector& x)
        : std::runtime_error("wavefunction node encountered"), where(x) {}
    FourVector where;
};

struct FreeParticleSpec {
    FourVector p;  ///< on-shell 4-momentum, p.p = m0^2 c^2
};

/// Scalar Volkov state in the (single, infinite-envelope) plane wave of the
/// attached profile. Phase: Theta = -p.x + W(xi),
/// W'(xi) = [2 e p.A(xi) + e^2 A.A(xi)] / (2 k.p).
struct ScalarVolkovSpec {
    FourVector p;
};

enum class OscillatorState { Ground, Coherent, Excited1 };

/// Nonrelativistic harmonic-oscillator states for the 1D test bed; x^1 is the
/// space coordinate, x^0 the lab time. sigma^2 = hbar_eff/(m0 omega0).
struct Custom1DSpec {
    OscillatorState state = OscillatorState::Ground;
    double sigma = 1.0;
    double displacement = 0.0;  ///< coherent-state amplitude x_c(0)
};

class WaveFunction {
public:
    /// enforce_on_shell = false admits off-shell momenta, used only to verify
    /// that kg_residual flags wrong wavefunctions.
    static WaveFunction free_particle(FourVector p, const PhysicalParams& params,
                                      bool enforce_on_shell = true);
    static WaveFunction scalar_volkov(FourVector p, const PhysicalParams& params);
    static WaveFunction oscillator(Custom1DSpec spec);

    bool is_free() const { return std::holds_alternative<FreeParticleSpec>(spec_); }
    bool is_volkov() const { return std::holds_alternative<ScalarVolkovSpec>(spec_); }
    bool is_oscillator() const { return std::holds_alternative<Custom1DSpec>(spec_); }
    const Custom1DSpec& oscillator_spec() const { return std::get<Custom1DSpec>(spec_); }
    const FourVector& momentum() const;

    /// phi(x), up to the overall normalization constant (relative densities only).
    Complex value(const FourVector& x, const FieldProfile& profile,
                  const PhysicalParams& params) const;

    /// i hbar d^mu ln phi(x), analytic. Finite for hbar_eff -> 0 (the pure
    /// phase carries the classical momentum), which is what the classical
    /// limit sweeps rely on.
    ComplexFourVector momentum_gradient(const FourVector& x, const FieldProfile& profile,
                                        const PhysicalParams& params) const;

    /// d^mu ln phi(x) (index raised); needs hbar_eff > 0.
    ComplexFourVector log_gradient(const FourVector& x, const FieldProfile& profile,
                                   const PhysicalParams& params) const;

    /// Amplitude scale used by the node floor |phi| < 1e-12 * scale.
    double amplitude_scale() const;

private:
    std::variant<FreeParticleSpec, ScalarVolkovSpec, Custom1DSpec> spec_;
};

/// Complex velocity Eq.: V^mu(x) = (1/m0) [ i hbar d^mu ln phi(x) + e A^mu(x) ].
ComplexFourVector complex_velocity(const WaveFunction& wf, const FieldProfile& profile,
                                   const FourVector& x, const PhysicalParams& params);

/// (V+, V-) = (Re V - Im V, Re V + Im V); recomposition is exact.
std::pair<FourVector, FourVector> drift_pair_of(const ComplexFourVector& v);

/// Finite-difference Klein-Gordon residual, normalized by m0^2 c^2 |phi|:
/// [(i hbar d + e A)_alpha (i hbar d + e A)^alpha phi - m0^2 c^2 phi] / (m0^2 c^2 |phi|).
Complex kg_residual(const WaveFunction& wf, const FieldProfile& profile, const FourVector& x,
                    const PhysicalParams& params, double h);

/// Finite-difference Schroedinger residual for the oscillator test bed,
/// normalized by |E phi|: [i hbar d_t + (hbar^2/2m) d_x^2 - m w0^2 x^2/2] psi.
Complex schrodinger_residual(const WaveFunction& wf, double x, double t,
                             const PhysicalParams& params, double h);

/// Velocity field seen by the path samplers.
class VelocityModel {
public:
    virtual ~VelocityModel() = default;
    virtual ComplexFourVector velocity(const FourVector& x) const = 0;
    FourVector v_plus(const FourVector& x) const {
        const ComplexFourVector v = velocity(x);
        return v.real() - v.imag();
    }
    FourVector v_minus(const FourVector& x) const {
        const ComplexFourVector v = velocity(x);
        return v.real() + v.imag();
    }
};

/// Eq.-(33) velocity field of a wavefunction in an external profile.
class ComplexVelocityField : public VelocityModel {
public:
    ComplexVelocityField(WaveFunction wf, FieldProfile profile, PhysicalParams params)
        : wf_(std::move(wf)), profile_(std::move(profile)), params_(params) {}
    ComplexFourVector velocity(const FourVector& x) const override {
        return complex_velocity(wf_, profile_, x, params_);
    }
    const WaveFunction& wavefunction() const { return wf_; }
    const FieldProfile& profile() const { return profile_; }
    const PhysicalParams& params() const { return params_; }

private:
    WaveFunction wf_;
    FieldProfile profile_;
    PhysicalParams params_;
};

/// Stationary classical flow in a constant B_z: rigid rotation about the z
/// axis with proper angular rate w = e B/m0. Integral curves are the
/// classical orbits (V.V = c^2 pointwise); the drift the constant-B
/// scenarios use for classical-limit and radiation-reaction studies.
class RotorVelocityField : public VelocityModel {
public:
    RotorVelocityField(double b_z, const PhysicalParams& params)
        : omega_(params.charge_e * b_z / params.m0), c2_(params.c * params.c) {}
    ComplexFourVector velocity(const FourVector& x) const override {
        return to_complex(real_velocity(x));
    }
    FourVector real_velocity(const FourVector& x) const {
        const double r2 = x(1) * x(1) + x(2) * x(2);
        return FourVector(std::sqrt(c2_ + omega_ * omega_ * r2), -omega_ * x(2), omega_ * x(1),
                          0.0);
    }
    double omega() const { return omega_; }

private:
    double omega_;
    double c2_;
};

}  // namespace srr
