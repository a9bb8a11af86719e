#include "srr/fields.hpp"

#include <numbers>

namespace srr {

namespace {

// Envelope and its derivative in the phase variable xi.
// Sin2 spans xi in [0, 2 pi cycles]; C^1 at both ends.
double envelope(const PlaneWaveSpec& w, double xi) {
    if (w.envelope == EnvelopeKind::Infinite) return 1.0;
    const double L = 2.0 * std::numbers::pi * w.cycles;
    if (xi <= 0.0 || xi >= L) return 0.0;
    const double s = std::sin(xi / (2.0 * w.cycles));
    return s * s;
}

double envelope_d(const PlaneWaveSpec& w, double xi) {
    if (w.envelope == EnvelopeKind::Infinite) return 0.0;
    const double L = 2.0 * std::numbers::pi * w.cycles;
    if (xi <= 0.0 || xi >= L) return 0.0;
    return std::sin(xi / w.cycles) / (2.0 * w.cycles);
}

double envelope_dd(const PlaneWaveSpec& w, double xi) {
    if (w.envelope == EnvelopeKind::Infinite) return 0.0;
    const double L = 2.0 * std::numbers::pi * w.cycles;
    if (xi <= 0.0 || xi >= L) return 0.0;
    return std::cos(xi / w.cycles) / (2.0 * w.cycles * w.cycles);
}

// scalar amplitude along eps: curly_A(xi) = (a0 m0 c / e) sin(xi) env(xi)
double amp(const PlaneWaveSpec& w, const PhysicalParams& p, double xi) {
    return w.a0 * p.m0 * p.c / p.charge_e * std::sin(xi) * envelope(w, xi);
}
double amp_d(const PlaneWaveSpec& w, const PhysicalParams& p, double xi) {
    const double s = w.a0 * p.m0 * p.c / p.charge_e;
    return s * (std::cos(xi) * envelope(w, xi) + std::sin(xi) * envelope_d(w, xi));
}
double amp_dd(const PlaneWaveSpec& w, const PhysicalParams& p, double xi) {
    const double s = w.a0 * p.m0 * p.c / p.charge_e;
    return s * (-std::sin(xi) * envelope(w, xi) + 2.0 * std::cos(xi) * envelope_d(w, xi) +
                std::sin(xi) * envelope_dd(w, xi));
}

FieldTensor antisym_outer(const FourVector& a, const FourVector& b) {
    FieldTensor t = a * b.transpose() - b * a.transpose();
    return t;
}

}  // namespace

FieldProfile FieldProfile::vacuum() { return FieldProfile{}; }

FieldProfile FieldProfile::plane_wave(PlaneWaveSpec wave) {
    return plane_waves({std::move(wave)});
}

FieldProfile FieldProfile::plane_waves(std::vector<PlaneWaveSpec> waves) {
    FieldProfile f;
    f.kind_ = ProfileKind::PlaneWaves;
    f.waves_ = std::move(waves);
    for (const auto& w : f.waves_) {
        if (std::abs(minkowski_dot(w.k, w.k)) > 1e-12)
            throw std::domain_error("PlaneWaveSpec: wave vector must be null");
        if (std::abs(minkowski_dot(w.eps, w.k)) > 1e-12)
            throw std::domain_error("PlaneWaveSpec: polarization must satisfy eps.k = 0");
    }
    return f;
}

FieldProfile FieldProfile::constant_magnetic(double b_z) {
    FieldProfile f;
    f.kind_ = ProfileKind::ConstantMagnetic;
    f.b_z_ = b_z;
    return f;
}

FieldProfile FieldProfile::constant_crossed(double e0) {
    FieldProfile f;
    f.kind_ = ProfileKind::ConstantCrossed;
    f.e0_ = e0;
    return f;
}

FourVector FieldProfile::potential(const FourVector& x, const PhysicalParams& p) const {
    switch (kind_) {
        case ProfileKind::Vacuum:
            return FourVector::Zero();
        case ProfileKind::PlaneWaves: {
            FourVector a = FourVector::Zero();
            for (const auto& w : waves_) {
                const double xi = minkowski_dot(w.k, x);
                a += w.eps * amp(w, p, xi);
            }
            return a;
        }
        case ProfileKind::ConstantMagnetic:
            // symmetric gauge
            return FourVector(0.0, -0.5 * b_z_ * x(2), 0.5 * b_z_ * x(1), 0.0);
        case ProfileKind::ConstantCrossed:
            return FourVector(0.0, -e0_ * (x(0) - x(3)), 0.0, 0.0);
    }
    return FourVector::Zero();
}

FieldTensor FieldProfile::field(const FourVector& x, const PhysicalParams& p) const {
    switch (kind_) {
        case ProfileKind::Vacuum:
            return FieldTensor::Zero();
        case ProfileKind::PlaneWaves: {
            FieldTensor f = FieldTensor::Zero();
            for (const auto& w : waves_) {
                const double xi = minkowski_dot(w.k, x);
                f += amp_d(w, p, xi) * antisym_outer(w.k, w.eps);
            }
            return f;
        }
        case ProfileKind::ConstantMagnetic: {
            FieldTensor f = FieldTensor::Zero();
            f(1, 2) = -b_z_;
            f(2, 1) = b_z_;
            return f;
        }
        case ProfileKind::ConstantCrossed: {
            // A^1 = -E0 (x^0 - x^3): F = -E0 (n^mu eps^nu - n^nu eps^mu), n = (1,0,0,1);
            // gives F^{10} = E0 (E along x) and F^{13} = E0 (B along y).
            FieldTensor f = -e0_ * antisym_outer(FourVector(1, 0, 0, 1), FourVector(0, 1, 0, 0));
            return f;
        }
    }
    return FieldTensor::Zero();
}

std::array<FieldTensor, 4> FieldProfile::field_gradient(const FourVector& x,
                                                        const PhysicalParams& p) const {
    std::array<FieldTensor, 4> g{FieldTensor::Zero(), FieldTensor::Zero(), FieldTensor::Zero(),
                                 FieldTensor::Zero()};
    if (kind_ != ProfileKind::PlaneWaves) return g;  // constant profiles have zero gradient
    for (const auto& w : waves_) {
        const double xi = minkowski_dot(w.k, x);
        const FieldTensor base = amp_dd(w, p, xi) * antisym_outer(w.k, w.eps);
        const FourVector k_low = lower(w.k);  // d_alpha xi = k_alpha
        for (int a = 0; a < 4; ++a) g[a] += k_low(a) * base;
    }
    return g;
}

double gauge_residual(const FieldProfile& profile, const FourVector& x,
                      const PhysicalParams& p, double h) {
    if (h <= 0.0) throw std::domain_error("gauge_residual: h must be > 0");
    double div = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        FourVector xp = x, xm = x;
        xp(mu) += h;
        xm(mu) -= h;
        div += (profile.potential(xp, p)(mu) - profile.potential(xm, p)(mu)) / (2.0 * h);
    }
    return div;
}

FourVector source_residual(const FieldProfile& profile, const FourVector& x,
                           const PhysicalParams& p, double h) {
    if (h <= 0.0) throw std::domain_error("source_residual: h must be > 0");
    FourVector r = FourVector::Zero();
    for (int mu = 0; mu < 4; ++mu) {
        FourVector xp = x, xm = x;
        xp(mu) += h;
        xm(mu) -= h;
        const FieldTensor df = (profile.field(xp, p) - profile.field(xm, p)) / (2.0 * h);
        r += df.row(mu).transpose();  // d/dx^mu contracts the upper mu of F^{mu nu}
    }
    return r;
}

FieldTensor field_from_potential_fd(const FieldProfile& profile, const FourVector& x,
                                    const PhysicalParams& p, double h) {
    // F^{mu nu} = d^mu A^nu - d^nu A^mu with d^mu = g^{mu mu} d_mu
    Eigen::Matrix4d dA;  // dA(mu, nu) = d_mu A^nu
    for (int mu = 0; mu < 4; ++mu) {
        FourVector xp = x, xm = x;
        xp(mu) += h;
        xm(mu) -= h;
        dA.row(mu) = ((profile.potential(xp, p) - profile.potential(xm, p)) / (2.0 * h)).transpose();
    }
    FieldTensor f;
    const double gs[4] = {1.0, -1.0, -1.0, -1.0};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            f(mu, nu) = gs[mu] * dA(mu, nu) - gs[nu] * dA(nu, mu);
    return f;
}

}  // namespace srr
