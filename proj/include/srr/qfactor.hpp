#pragma once
#include <vector>

#include "srr/core.hpp"
#include "srr/fields.hpp"

namespace srr {

/// Modified Bessel function of the second kind, nu >= 0, x > 0.
/// Relative accuracy ~1e-13 over x in [1e-6, 700]; underflows to 0 beyond.
double bessel_k(double nu, double x);

/// e^x K_nu(x), usable far past the K underflow point.
double bessel_k_scaled(double nu, double x);

/// Node counts for the quantumness integrals. The outer integral runs over
/// s = r/(1 - chi r) in (0, inf): panel [0,1] under a cube substitution
/// (integrable s^{1/3} endpoint), then dyadic panels to s_max. Halving the
/// spacing (doubling the counts) must move q by < convergence_tol.
struct QuadratureSpec {
    int outer_points = 32;   ///< Gauss-Legendre nodes per outer panel
    int inner_points = 32;   ///< nodes per panel of int_s^inf K_{5/3}
    double s_max = 90.0;
    double convergence_tol = 1e-6;
};

/// Precomputes the chi-independent tables once; q(chi) evaluations are then
/// a few hundred flops each.
class QuantumnessEvaluator {
public:
    explicit QuantumnessEvaluator(QuadratureSpec spec = {});
    double q_full(double chi) const;
    double q_sqed(double chi) const;
    /// Difference between the base and refined quadratures at this chi.
    double refinement_delta(double chi) const;
    const QuadratureSpec& spec() const { return spec_; }

private:
    struct Table {
        std::vector<double> s, w, phi, k23;  // nodes, weights, int_s^inf K53, K_{2/3}(s)
        double eval(double chi, bool with_recoil) const;
    };
    Table base_, fine_;
    QuadratureSpec spec_;
};

/// One-shot evaluations (build an evaluator for tables and sweeps).
/// Throw on quadrature non-convergence, reporting the achieved delta.
double q_full(double chi, const QuadratureSpec& spec = {});
double q_sqed(double chi, const QuadratureSpec& spec = {});

struct ChiParams {
    double gamma = 0.0;          ///< used by the SI shortcut
    FieldTensor field = FieldTensor::Zero();
    FourVector velocity = FourVector(1, 0, 0, 0);
    bool conventional = false;   ///< true: drop the 3/2 prefactor (chi_QED = 2/3 chi)
};

/// chi = (3/2) (hbar/m0^2 c^3) sqrt( -g_{mu nu} (e F v)^mu (e F v)^nu ),
/// kept verbatim including the 3/2 prefactor (differs from the common QED
/// convention by that factor; set `conventional` for the 2/3-scaled value).
double compute_chi(const ChiParams& params, const PhysicalParams& phys);

/// SI shortcut: head-on electron against a plane wave treated as locally
/// constant-crossed at the peak field.
double compute_chi_si(double intensity_W_cm2, double energy_MeV, bool conventional = false);

struct QTableRow {
    double intensity_W_cm2, energy_MeV, chi, q_full, q_sqed;
};

/// Rows over the (intensity, energy) grid, chi per compute_chi_si.
std::vector<QTableRow> emit_q_table(const std::vector<double>& intensities_W_cm2,
                                    const std::vector<double>& energies_MeV,
                                    const QuadratureSpec& spec = {});

}  // namespace srr
