#include "srr/mean_derivative.hpp"

#include <cmath>

namespace srr {

namespace {

constexpr Complex I{0.0, 1.0};
constexpr double kMetricSign[4] = {1.0, -1.0, -1.0, -1.0};

struct Stencil {
    // f at x, x +- h e_mu
    Complex f0;
    Complex fp[4], fm[4];
    double h;

    Complex d_lower(int mu) const { return (fp[mu] - fm[mu]) / (2.0 * h); }
    Complex box() const {
        Complex b = 0.0;
        for (int mu = 0; mu < 4; ++mu)
            b += kMetricSign[mu] * (fp[mu] - 2.0 * f0 + fm[mu]) / (h * h);
        return b;
    }
};

Stencil sample(const ScalarField& f, const FourVector& x, double h) {
    Stencil s;
    s.h = h;
    s.f0 = f(x);
    for (int mu = 0; mu < 4; ++mu) {
        FourVector xp = x, xm = x;
        xp(mu) += h;
        xm(mu) -= h;
        s.fp[mu] = f(xp);
        s.fm[mu] = f(xm);
    }
    return s;
}

Complex directional(const ComplexFourVector& v, const Stencil& s) {
    Complex out = 0.0;
    for (int mu = 0; mu < 4; ++mu) out += v(mu) * s.d_lower(mu);
    return out;
}

}  // namespace

namespace {

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

Complex MeanDerivativeOperator::apply(const ScalarField& f, const FourVector& x,
                                      DerivVariant variant) const {
    const Stencil s = sample(f, x, h_);
    bool ok = finite(s.f0);
    for (int mu = 0; mu < 4; ++mu) ok = ok && finite(s.fp[mu]) && finite(s.fm[mu]);
    if (!ok) throw StencilOutOfDomain();
    const ComplexFourVector v = field_->velocity(x);
    const double l2h = 0.5 * lambda_ * lambda_;
    switch (variant) {
        case DerivVariant::Plus:
            return directional(to_complex(v.real() - v.imag()), s) - l2h * s.box();
        case DerivVariant::Minus:
            return directional(to_complex(v.real() + v.imag()), s) + l2h * s.box();
        case DerivVariant::Complex:
            return directional(v, s) + I * l2h * s.box();
        case DerivVariant::ComplexConj:
            return directional(v.conjugate(), s) - I * l2h * s.box();
    }
    return {};
}

ComplexFourVector MeanDerivativeOperator::apply_vec(const Vector4Field& f, const FourVector& x,
                                                    DerivVariant variant) const {
    ComplexFourVector out;
    for (int mu = 0; mu < 4; ++mu) {
        const int m = mu;
        out(mu) = apply([&f, m](const FourVector& y) { return f(y)(m); }, x, variant);
    }
    return out;
}

ComplexFourVector MeanDerivativeOperator::velocity_derivative(const FourVector& x) const {
    return apply_vec([this](const FourVector& y) { return field_->velocity(y); }, x,
                     DerivVariant::Complex);
}

ComplexFourVector MeanDerivativeOperator::velocity_derivative2(const FourVector& x) const {
    return apply_vec([this](const FourVector& y) { return velocity_derivative(y); }, x,
                     DerivVariant::Complex);
}

Complex apply_mean_derivative(const MeanDerivativeOperator& op, const ScalarField& f,
                              const FourVector& x, DerivVariant variant) {
    return op.apply(f, x, variant);
}

double CheckReport::max_abs_z() const {
    double m = 0.0;
    for (const auto& l : lines) m = std::max(m, std::abs(l.z));
    return m;
}

namespace {

// 4th-order central difference in tau of per-path values; needs k in [2, K-3].
void require_interior(const PathEnsemble& ens, std::size_t k) {
    if (ens.n_snapshots() < 5 || k < 2 || k + 2 >= ens.n_snapshots())
        throw std::domain_error("verify: snapshot index must have two neighbors on each side");
    const double d1 = ens.tau[k + 1] - ens.tau[k];
    for (std::size_t j = k - 2; j < k + 2; ++j)
        if (std::abs((ens.tau[j + 1] - ens.tau[j]) - d1) > 1e-9 * d1)
            throw std::domain_error("verify: snapshot grid must be uniform around k");
}

struct SlopeStat {
    std::vector<double> diff_re, diff_im;  // per-path (slope - rhs)
    std::vector<double> lhs_re, rhs_re;
};

template <class ScalarOf, class RhsOf>
CheckLine run_check(const std::string& name, const PathEnsemble& ens, std::size_t k,
                    const ScalarOf& s_of, const RhsOf& rhs_of, bool imag_part) {
    const double dt = ens.tau[k + 1] - ens.tau[k];
    SlopeStat st;
    double scale = 0.0;  // float-resolution scale of the two sides
    for (std::size_t p = 0; p < ens.n_paths; ++p) {
        bool ok = true;
        for (std::size_t j = k - 2; j <= k + 2; ++j) ok = ok && ens.alive_at(p, j);
        if (!ok) continue;
        const Complex sm2 = s_of(ens.at(p, k - 2));
        const Complex sm1 = s_of(ens.at(p, k - 1));
        const Complex sp1 = s_of(ens.at(p, k + 1));
        const Complex sp2 = s_of(ens.at(p, k + 2));
        const Complex slope = (-sp2 + 8.0 * sp1 - 8.0 * sm1 + sm2) / (12.0 * dt);
        const Complex rhs = rhs_of(ens.at(p, k));
        const Complex d = slope - rhs;
        st.diff_re.push_back(d.real());
        st.diff_im.push_back(d.imag());
        st.lhs_re.push_back(imag_part ? slope.imag() : slope.real());
        st.rhs_re.push_back(imag_part ? rhs.imag() : rhs.real());
        scale += std::abs(sp1) / dt + std::abs(rhs);
    }
    if (st.diff_re.empty()) throw EnsembleCollapse();
    scale /= double(st.diff_re.size());
    const auto d = stats::mean_se(imag_part ? st.diff_im : st.diff_re);
    CheckLine line;
    line.name = name;
    line.lhs = stats::mean_se(st.lhs_re).mean;
    line.rhs = stats::mean_se(st.rhs_re).mean;
    // a side that vanishes in exact arithmetic leaves only rounding residue;
    // the floor keeps z defined at float resolution
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
    line.se = std::sqrt(d.se * d.se + floor * floor);
    line.z = stats::z_score(d.mean, 0.0, line.se);
    return line;
}

}  // namespace

CheckReport verify_ito(const ScalarField& f, const std::string& name, const PathEnsemble& ens,
                       const MeanDerivativeOperator& op, std::size_t k) {
    require_interior(ens, k);
    CheckReport rep;
    const auto s_of = [&f](const FourVector& x) { return f(x); };
    rep.lines.push_back(run_check(
        name + " [D+]", ens, k, s_of,
        [&](const FourVector& x) { return op.apply(f, x, DerivVariant::Plus); }, false));
    rep.lines.push_back(run_check(
        name + " [D-]", ens, k, s_of,
        [&](const FourVector& x) { return op.apply(f, x, DerivVariant::Minus); }, false));
    return rep;
}

CheckReport verify_partial_integration(const Vector4Field& alpha, const Vector4Field& beta,
                                       const std::string& name, const PathEnsemble& ens,
                                       const MeanDerivativeOperator& op, std::size_t k) {
    require_interior(ens, k);
    CheckReport rep;
    const auto s_of = [&](const FourVector& x) { return minkowski_dot(alpha(x), beta(x)); };
    const auto rhs_pm = [&](DerivVariant va, DerivVariant vb) {
        return [&, va, vb](const FourVector& x) {
            const ComplexFourVector da = op.apply_vec(alpha, x, va);
            const ComplexFourVector db = op.apply_vec(beta, x, vb);
            return minkowski_dot(da, beta(x)) + minkowski_dot(alpha(x), db);
        };
    };
    rep.lines.push_back(run_check(name + " [D+,D-]", ens, k, s_of,
                                  rhs_pm(DerivVariant::Plus, DerivVariant::Minus), false));
    rep.lines.push_back(run_check(name + " [D-,D+]", ens, k, s_of,
                                  rhs_pm(DerivVariant::Minus, DerivVariant::Plus), false));
    rep.lines.push_back(run_check(name + " [D,D*]", ens, k, s_of,
                                  rhs_pm(DerivVariant::Complex, DerivVariant::ComplexConj), false));
    rep.lines.push_back(run_check(name + " [D,D*] im", ens, k, s_of,
                                  rhs_pm(DerivVariant::Complex, DerivVariant::ComplexConj), true));
    return rep;
}

}  // namespace srr
