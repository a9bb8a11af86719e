#include "srr/wavefunction.hpp"

namespace srr {

namespace {

constexpr Complex I{0.0, 1.0};

void require_on_shell(const FourVector& p, const PhysicalParams& params) {
    const double m2c2 = params.m0 * params.m0 * params.c * params.c;
    if (std::abs(minkowski_dot(p, p) - m2c2) > 1e-9 * m2c2)
        throw std::domain_error("wavefunction momentum must be on-shell: p.p = m0^2 c^2");
}

const PlaneWaveSpec& volkov_wave(const FieldProfile& profile) {
    if (profile.kind() != ProfileKind::PlaneWaves || profile.waves().size() != 1)
        throw std::domain_error("ScalarVolkov requires exactly one plane wave");
    const PlaneWaveSpec& w = profile.waves().front();
    if (w.envelope != EnvelopeKind::Infinite)
        throw std::domain_error("ScalarVolkov phase is implemented for the infinite envelope");
    return w;
}

// For A = eps * C sin(xi), C = a0 m0 c/e:
//   W'(xi) = [2 e (p.eps) C sin(xi) - e^2 C^2 sin^2(xi)] / (2 k.p)
//   W(xi)  = [2 e (p.eps) C (1 - cos xi) - e^2 C^2 (xi/2 - sin(2 xi)/4)] / (2 k.p)
struct VolkovPhase {
    double pe, C, kp, e;
    double W(double xi) const {
        return (2.0 * e * pe * C * (1.0 - std::cos(xi)) -
                e * e * C * C * (0.5 * xi - 0.25 * std::sin(2.0 * xi))) /
               (2.0 * kp);
    }
    double Wp(double xi) const {
        const double s = std::sin(xi);
        return (2.0 * e * pe * C * s - e * e * C * C * s * s) / (2.0 * kp);
    }
};

VolkovPhase volkov_phase(const FourVector& p, const PlaneWaveSpec& w, const PhysicalParams& pr) {
    const double kp = minkowski_dot(w.k, p);
    if (std::abs(kp) < 1e-30) throw std::domain_error("ScalarVolkov: k.p must be nonzero");
    return VolkovPhase{minkowski_dot(p, w.eps), w.a0 * pr.m0 * pr.c / pr.charge_e, kp,
                       pr.charge_e};
}

// Oscillator test bed. sigma^2 = hbar/(m0 w0)  =>  w0 = hbar/(m0 sigma^2).
struct Oscillator {
    double sigma, w0, lam2;  // lam2 = hbar/m0
    double x_c(double t, double x0) const { return x0 * std::cos(w0 * t); }
    double p_c(double t, double x0, double m0) const { return -m0 * w0 * x0 * std::sin(w0 * t); }
};

Oscillator oscillator_of(const Custom1DSpec& s, const PhysicalParams& p) {
    const double lam2 = p.hbar_eff / p.m0;
    return Oscillator{s.sigma, lam2 / (s.sigma * s.sigma), lam2};
}

// psi(x,t) for the three states, up to normalization.
Complex psi_value(const Custom1DSpec& s, const PhysicalParams& pr, double x, double t) {
    const Oscillator os = oscillator_of(s, pr);
    const double s2 = os.sigma * os.sigma;
    switch (s.state) {
        case OscillatorState::Ground:
            return std::exp(Complex(-x * x / (2.0 * s2), -0.5 * os.w0 * t));
        case OscillatorState::Excited1:
            return x * std::exp(Complex(-x * x / (2.0 * s2), -1.5 * os.w0 * t));
        case OscillatorState::Coherent: {
            const double xc = os.x_c(t, s.displacement);
            const double pc = os.p_c(t, s.displacement, pr.m0);
            // phase theta(t) = -w0 t/2 - xc pc/(2 hbar); Schroedinger solution
            const double theta = -0.5 * os.w0 * t - xc * pc / (2.0 * pr.hbar_eff);
            const double dx = x - xc;
            return std::exp(Complex(-dx * dx / (2.0 * s2), pc * x / pr.hbar_eff + theta));
        }
    }
    return {};
}

// d_x ln psi, analytic
Complex psi_dlog_dx(const Custom1DSpec& s, const PhysicalParams& pr, double x, double t) {
    const Oscillator os = oscillator_of(s, pr);
    const double s2 = os.sigma * os.sigma;
    switch (s.state) {
        case OscillatorState::Ground:
            return Complex(-x / s2, 0.0);
        case OscillatorState::Excited1:
            return Complex(1.0 / x - x / s2, 0.0);
        case OscillatorState::Coherent: {
            const double xc = os.x_c(t, s.displacement);
            const double pc = os.p_c(t, s.displacement, pr.m0);
            return Complex(-(x - xc) / s2, pc / pr.hbar_eff);
        }
    }
    return {};
}

// d_t ln psi, analytic
Complex psi_dlog_dt(const Custom1DSpec& s, const PhysicalParams& pr, double x, double t) {
    const Oscillator os = oscillator_of(s, pr);
    const double s2 = os.sigma * os.sigma;
    switch (s.state) {
        case OscillatorState::Ground:
            return Complex(0.0, -0.5 * os.w0);
        case OscillatorState::Excited1:
            return Complex(0.0, -1.5 * os.w0);
        case OscillatorState::Coherent: {
            const double xc = os.x_c(t, s.displacement);
            const double pc = os.p_c(t, s.displacement, pr.m0);
            const double xcd = pc / pr.m0;                       // dx_c/dt
            const double pcd = -pr.m0 * os.w0 * os.w0 * xc;      // dp_c/dt
            const double thetad = -0.5 * os.w0 - (xcd * pc + xc * pcd) / (2.0 * pr.hbar_eff);
            return Complex((x - xc) * xcd / s2, (pcd * x) / pr.hbar_eff + thetad);
        }
    }
    return {};
}

}  // namespace

WaveFunction WaveFunction::free_particle(FourVector p, const PhysicalParams& params,
                                         bool enforce_on_shell) {
    if (enforce_on_shell) require_on_shell(p, params);
    WaveFunction wf;
    wf.spec_ = FreeParticleSpec{std::move(p)};
    return wf;
}

WaveFunction WaveFunction::scalar_volkov(FourVector p, const PhysicalParams& params) {
    require_on_shell(p, params);
    WaveFunction wf;
    wf.spec_ = ScalarVolkovSpec{std::move(p)};
    return wf;
}

WaveFunction WaveFunction::oscillator(Custom1DSpec spec) {
    if (spec.sigma <= 0.0) throw std::domain_error("oscillator sigma must be > 0");
    WaveFunction wf;
    wf.spec_ = spec;
    return wf;
}

const FourVector& WaveFunction::momentum() const {
    if (is_free()) return std::get<FreeParticleSpec>(spec_).p;
    return std::get<ScalarVolkovSpec>(spec_).p;
}

Complex WaveFunction::value(const FourVector& x, const FieldProfile& profile,
                            const PhysicalParams& params) const {
    if (const auto* fp = std::get_if<FreeParticleSpec>(&spec_)) {
        return std::exp(-I * minkowski_dot(fp->p, x) / params.hbar_eff);
    }
    if (const auto* sv = std::get_if<ScalarVolkovSpec>(&spec_)) {
        const PlaneWaveSpec& w = volkov_wave(profile);
        const VolkovPhase ph = volkov_phase(sv->p, w, params);
        const double xi = minkowski_dot(w.k, x);
        const double theta = -minkowski_dot(sv->p, x) + ph.W(xi);
        return std::exp(I * theta / params.hbar_eff);
    }
    const auto& os = std::get<Custom1DSpec>(spec_);
    // embedded with the rest-mass phase so the time component of V is ~ c
    const double mc2 = params.m0 * params.c * params.c;
    return psi_value(os, params, x(1), x(0)) * std::exp(-I * mc2 * x(0) / params.hbar_eff);
}

ComplexFourVector WaveFunction::momentum_gradient(const FourVector& x,
                                                  const FieldProfile& profile,
                                                  const PhysicalParams& params) const {
    ComplexFourVector g = ComplexFourVector::Zero();
    if (const auto* fp = std::get_if<FreeParticleSpec>(&spec_)) {
        // i hbar d^mu (-i p.x/hbar) = p^mu
        for (int mu = 0; mu < 4; ++mu) g(mu) = fp->p(mu);
        return g;
    }
    if (const auto* sv = std::get_if<ScalarVolkovSpec>(&spec_)) {
        const PlaneWaveSpec& w = volkov_wave(profile);
        const VolkovPhase ph = volkov_phase(sv->p, w, params);
        const double xi = minkowski_dot(w.k, x);
        // i hbar d^mu (i Theta/hbar) = -d^mu Theta = p^mu - W'(xi) k^mu
        const FourVector dm = sv->p - ph.Wp(xi) * w.k;
        for (int mu = 0; mu < 4; ++mu) g(mu) = dm(mu);
        return g;
    }
    const auto& os = std::get<Custom1DSpec>(spec_);
    const double hbar = params.hbar_eff;
    const Complex dlx = psi_dlog_dx(os, params, x(1), x(0));
    const Complex dlt = psi_dlog_dt(os, params, x(1), x(0));
    g(0) = I * hbar * dlt + params.m0 * params.c * params.c;  // rest-mass phase
    g(1) = -I * hbar * dlx;                                   // d^1 = -d_x
    return g;
}

ComplexFourVector WaveFunction::log_gradient(const FourVector& x, const FieldProfile& profile,
                                             const PhysicalParams& params) const {
    if (params.hbar_eff <= 0.0)
        throw std::domain_error("log_gradient needs hbar_eff > 0; use momentum_gradient");
    return momentum_gradient(x, profile, params) / Complex(0.0, params.hbar_eff);
}

double WaveFunction::amplitude_scale() const {
    if (const auto* os = std::get_if<Custom1DSpec>(&spec_)) {
        if (os->state == OscillatorState::Excited1) return os->sigma * std::exp(-0.5);
    }
    return 1.0;
}

ComplexFourVector complex_velocity(const WaveFunction& wf, const FieldProfile& profile,
                                   const FourVector& x, const PhysicalParams& params) {
    if (params.hbar_eff > 0.0) {
        const Complex phi = wf.value(x, profile, params);
        if (std::abs(phi) < 1e-12 * wf.amplitude_scale()) throw NodeSingularity(x);
    }
    const ComplexFourVector mg = wf.momentum_gradient(x, profile, params);
    const FourVector a = profile.potential(x, params);
    ComplexFourVector v;
    for (int mu = 0; mu < 4; ++mu)
        v(mu) = (mg(mu) + params.charge_e * a(mu)) / params.m0;
    return v;
}

std::pair<FourVector, FourVector> drift_pair_of(const ComplexFourVector& v) {
    return {v.real() - v.imag(), v.real() + v.imag()};
}

Complex kg_residual(const WaveFunction& wf, const FieldProfile& profile, const FourVector& x,
                    const PhysicalParams& params, double h) {
    if (h <= 0.0) throw std::domain_error("kg_residual: h must be > 0");
    const double hbar = params.hbar_eff;
    const double e = params.charge_e;
    const double m2c2 = params.m0 * params.m0 * params.c * params.c;

    const Complex phi0 = wf.value(x, profile, params);
    Complex box = 0.0;     // d_mu d^mu phi
    ComplexFourVector dphi;  // d_mu phi (lower index)
    const double gs[4] = {1.0, -1.0, -1.0, -1.0};
    for (int mu = 0; mu < 4; ++mu) {
        FourVector xp = x, xm = x;
        xp(mu) += h;
        xm(mu) -= h;
        const Complex fp = wf.value(xp, profile, params);
        const Complex fm = wf.value(xm, profile, params);
        dphi(mu) = (fp - fm) / (2.0 * h);
        box += gs[mu] * (fp - 2.0 * phi0 + fm) / (h * h);
    }
    const FourVector a = profile.potential(x, params);
    // d_mu A^mu by central differences (zero for all built-in profiles)
    double divA = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        FourVector xp = x, xm = x;
        xp(mu) += h;
        xm(mu) -= h;
        divA += (profile.potential(xp, params)(mu) - profile.potential(xm, params)(mu)) / (2.0 * h);
    }
    Complex a_dot_dphi = 0.0;  // A^mu d_mu phi
    for (int mu = 0; mu < 4; ++mu) a_dot_dphi += a(mu) * dphi(mu);

    const Complex op = -hbar * hbar * box + I * hbar * e * divA * phi0 +
                       2.0 * I * hbar * e * a_dot_dphi +
                       e * e * minkowski_dot(a, a) * phi0 - m2c2 * phi0;
    return op / (m2c2 * std::abs(phi0));
}

Complex schrodinger_residual(const WaveFunction& wf, double x, double t,
                             const PhysicalParams& params, double h) {
    if (!wf.is_oscillator()) throw std::domain_error("schrodinger_residual: oscillator states only");
    if (h <= 0.0) throw std::domain_error("schrodinger_residual: h must be > 0");
    const auto& spec = wf.oscillator_spec();
    const double hbar = params.hbar_eff;
    const double m0 = params.m0;
    const double w0 = hbar / (m0 * spec.sigma * spec.sigma);

    const auto psi = [&](double xx, double tt) { return psi_value(spec, params, xx, tt); };
    const Complex p0 = psi(x, t);
    const Complex dt = (psi(x, t + h) - psi(x, t - h)) / (2.0 * h);
    const Complex dxx = (psi(x + h, t) - 2.0 * p0 + psi(x - h, t)) / (h * h);
    const Complex res =
        I * hbar * dt + hbar * hbar / (2.0 * m0) * dxx - 0.5 * m0 * w0 * w0 * x * x * p0;
    const double scale = hbar * w0 * std::max(std::abs(p0), 1e-300);
    return res / scale;
}

}  // namespace srr
