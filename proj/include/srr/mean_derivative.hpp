#pragma once
#include <functional>
#include <string>
#include <vector>

#include "srr/kinematics.hpp"

namespace srr {

class StencilOutOfDomain : public std::runtime_error {
public:
    StencilOutOfDomain() : std::runtime_error("finite-difference stencil left the domain") {}
};

enum class DerivVariant { Plus, Minus, Complex, ComplexConj };

using ScalarField  = std::function<Complex(const FourVector&)>;
using Vector4Field = std::function<ComplexFourVector(const FourVector&)>;

/// Transport operators along the stochastic flow, built from nested central
/// differences of the analytic velocity field:
///   D_tau   f = [V^mu  + i (lambda^2/2) d^mu] d_mu f
///   D_tau^+-f = [V+-^mu -+ (lambda^2/2) d^mu] d_mu f
/// d^mu d_mu is the Minkowski box, d_t^2 - laplacian.
class MeanDerivativeOperator {
public:
    MeanDerivativeOperator(const VelocityModel& field, double lambda, double h = 1e-3)
        : field_(&field), lambda_(lambda), h_(h) {
        if (h <= 0.0) throw std::domain_error("MeanDerivativeOperator: h must be > 0");
    }

    Complex apply(const ScalarField& f, const FourVector& x, DerivVariant variant) const;
    ComplexFourVector apply_vec(const Vector4Field& f, const FourVector& x,
                                DerivVariant variant) const;

    /// D_tau V^mu and D_tau^2 V^mu of the attached velocity field.
    ComplexFourVector velocity_derivative(const FourVector& x) const;
    ComplexFourVector velocity_derivative2(const FourVector& x) const;

    double lambda() const { return lambda_; }
    double step() const { return h_; }
    const VelocityModel& field() const { return *field_; }

private:
    const VelocityModel* field_;
    double lambda_;
    double h_;
};

Complex apply_mean_derivative(const MeanDerivativeOperator& op, const ScalarField& f,
                              const FourVector& x, DerivVariant variant);

struct CheckLine {
    std::string name;
    double lhs = 0.0, rhs = 0.0, se = 0.0, z = 0.0;
};

struct CheckReport {
    std::vector<CheckLine> lines;
    double max_abs_z() const;
};

/// Compares d/dtau E[f(x)] (central difference of ensemble means at snapshot k)
/// against E[D_tau^+- f] via per-path differencing; z-scores per variant.
CheckReport verify_ito(const ScalarField& f, const std::string& name, const PathEnsemble& ens,
                       const MeanDerivativeOperator& op, std::size_t k);

/// Appendix-style partial integration:
///   d/dtau E[alpha_mu beta^mu] = E[D^+- alpha . beta + alpha . D^-+ beta]
/// and the complex form with (D, D*). alpha, beta contravariant.
CheckReport verify_partial_integration(const Vector4Field& alpha, const Vector4Field& beta,
                                       const std::string& name, const PathEnsemble& ens,
                                       const MeanDerivativeOperator& op, std::size_t k);

}  // namespace srr
