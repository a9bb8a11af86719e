#pragma once
#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <cmath>

namespace srr {

using Complex = std::complex<double>;

/// Dense 4-component column vector templated on scalar, index order (x0,x1,x2,x3).
template <typename Scalar>
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;

using FourVector        = Vec4<double>;
using ComplexFourVector = Vec4<Complex>;

/// Contravariant rank-2 tensor F^{mu nu} on Minkowski space.
using FieldTensor = Eigen::Matrix4d;

/// Metric g = diag(+1,-1,-1,-1). Index raising and lowering use it exactly.
inline const Eigen::Matrix4d& metric() {
    static const Eigen::Matrix4d g = Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal();
    return g;
}

/// v_mu = g_{mu nu} v^nu
template <typename Derived>
auto lower(const Eigen::MatrixBase<Derived>& v) {
    Vec4<typename Derived::Scalar> out;
    out << v(0), -v(1), -v(2), -v(3);
    return out;
}

/// Same components either way for g = diag(+,-,-,-).
template <typename Derived>
auto raise(const Eigen::MatrixBase<Derived>& v) { return lower(v); }

/// Minkowski inner product a^mu g_{mu nu} b^nu (no conjugation).
template <typename DA, typename DB>
auto minkowski_dot(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    return a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3);
}

/// ||A||^2 = A*_mu A^mu with conjugation on the left. Always real.
inline double complex_norm(const ComplexFourVector& a) {
    return std::norm(a(0)) - std::norm(a(1)) - std::norm(a(2)) - std::norm(a(3));
}

inline ComplexFourVector to_complex(const FourVector& v) {
    return v.cast<Complex>();
}
inline FourVector real_part(const ComplexFourVector& v) { return v.real(); }
inline FourVector imag_part(const ComplexFourVector& v) { return v.imag(); }

/// Simulation unit system: m0 = c = 1.  lambda^2 = hbar_eff/m0 is a free
/// dimensionless knob, independent from tau0, so classical-limit sweeps can
/// send hbar_eff -> 0 while the radiation-reaction timescale stays fixed.
struct PhysicalParams {
    double m0       = 1.0;
    double c        = 1.0;
    double hbar_eff = 1.0;   ///< sets lambda^2 = hbar_eff/m0
    double tau0     = 0.0;   ///< radiation-reaction timescale (sim units)
    double charge_e = 1.0;   ///< magnitude e > 0; the electron carries -e

    double lambda() const { return std::sqrt(hbar_eff / m0); }
    void validate() const {
        if (m0 <= 0.0 || c <= 0.0) throw std::domain_error("PhysicalParams: m0, c must be positive");
        if (hbar_eff < 0.0) throw std::domain_error("PhysicalParams: hbar_eff must be >= 0");
        if (tau0 < 0.0) throw std::domain_error("PhysicalParams: tau0 must be >= 0");
    }
};

/// SI constants used only by the unit-conversion boundary layer (CODATA 2018).
namespace si {
inline constexpr double c            = 299792458.0;          // m/s
inline constexpr double epsilon0     = 8.8541878128e-12;     // F/m
inline constexpr double electron_mass= 9.1093837015e-31;     // kg
inline constexpr double elementary_q = 1.602176634e-19;      // C
inline constexpr double hbar         = 1.054571817e-34;      // J s
inline constexpr double mec2_MeV     = 0.51099895000;        // MeV
/// Schwinger field m^2 c^3 / (e hbar), V/m
inline constexpr double schwinger_field =
    electron_mass * electron_mass * c * c * c / (elementary_q * hbar);
/// e^2/(6 pi eps0 m c^3), seconds
double tau0_seconds();
}  // namespace si

struct SimUnits {
    double field_amplitude;  ///< peak field as the dimensionless a0 = e E0/(m c omega_L)
    double gamma;            ///< Lorentz factor of the electron
};

/// Boundary conversion for (laser intensity, electron energy) axes.
/// The simulation time unit is 1/omega_L with omega_L = 2 pi c / wavelength.
SimUnits si_to_sim(double intensity_W_cm2, double energy_MeV, double wavelength_um);

/// Peak electric field sqrt(2 I / eps0 c) in V/m for intensity in W/cm^2.
double peak_field_si(double intensity_W_cm2);

}  // namespace srr
