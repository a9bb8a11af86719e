#include "srr/core.hpp"

#include <numbers>

namespace srr {

namespace si {
double tau0_seconds() {
    return elementary_q * elementary_q /
           (6.0 * std::numbers::pi * epsilon0 * electron_mass * c * c * c);
}
}  // namespace si

double peak_field_si(double intensity_W_cm2) {
    if (intensity_W_cm2 <= 0.0) throw std::domain_error("peak_field_si: intensity must be > 0");
    const double I = intensity_W_cm2 * 1e4;  // W/m^2
    return std::sqrt(2.0 * I / (si::epsilon0 * si::c));
}

SimUnits si_to_sim(double intensity_W_cm2, double energy_MeV, double wavelength_um) {
    if (intensity_W_cm2 <= 0.0 || energy_MeV <= 0.0 || wavelength_um <= 0.0)
        throw std::domain_error("si_to_sim: all inputs must be > 0");
    const double E0      = peak_field_si(intensity_W_cm2);
    const double omega_L = 2.0 * std::numbers::pi * si::c / (wavelength_um * 1e-6);
    const double a0 = si::elementary_q * E0 / (si::electron_mass * si::c * omega_L);
    return SimUnits{a0, energy_MeV / si::mec2_MeV};
}

}  // namespace srr
