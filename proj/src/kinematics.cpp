#include "srr/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace srr {

FourVector wiener_increment4(CounterRng& rng, std::uint64_t step, double dtau) {
    const double s = std::sqrt(dtau);
    return FourVector(s * rng.normal(4 * step), s * rng.normal(4 * step + 1),
                      s * rng.normal(4 * step + 2), s * rng.normal(4 * step + 3));
}

namespace {

void check_finite(const FourVector& v, const char* what) {
    if (!v.allFinite()) throw std::runtime_error(std::string("non-finite ") + what);
}

}  // namespace

PathState step_forward(const PathState& s, const VelocityModel& field, double lambda,
                       double dtau, CounterRng& rng) {
    if (dtau <= 0.0) throw std::domain_error("step_forward: dtau must be > 0");
    PathState out = s;
    if (!s.alive) return out;
    try {
        const ComplexFourVector v = field.velocity(s.x);
        const FourVector drift = v.real() - v.imag();  // V+
        check_finite(drift, "drift");
        out.x = s.x + drift * dtau + lambda * wiener_increment4(rng, s.step, dtau);
        out.tau = s.tau + dtau;
        out.step = s.step + 1;
    } catch (const NodeSingularity&) {
        out.alive = false;
    }
    return out;
}

PathState step_backward(const PathState& s, const VelocityModel& field, double lambda,
                        double dtau, CounterRng& rng) {
    if (dtau <= 0.0) throw std::domain_error("step_backward: dtau must be > 0");
    PathState out = s;
    if (!s.alive) return out;
    try {
        const ComplexFourVector v = field.velocity(s.x);
        const FourVector drift = v.real() + v.imag();  // V-
        check_finite(drift, "drift");
        out.x = s.x - drift * dtau - lambda * wiener_increment4(rng, s.step, dtau);
        out.tau = s.tau - dtau;
        out.step = s.step + 1;
    } catch (const NodeSingularity&) {
        out.alive = false;
    }
    return out;
}

FourVector InitialDistribution::sample(CounterRng& rng) const {
    switch (kind) {
        case Kind::Point:
            return center;
        case Kind::GaussianIso: {
            FourVector x = center;
            for (int i = 1; i < 4; ++i) x(i) += sigma * rng.normal(i - 1);
            if (sigma_t > 0.0) x(0) += sigma_t * rng.normal(3);
            return x;
        }
        case Kind::Box: {
            FourVector x;
            for (int i = 0; i < 4; ++i)
                x(i) = box_lo(i) + (box_hi(i) - box_lo(i)) * rng.uniform(i);
            return x;
        }
    }
    return center;
}

std::size_t PathEnsemble::alive_count(std::size_t k) const {
    std::size_t n = 0;
    for (std::size_t p = 0; p < n_paths; ++p) n += alive_at(p, k) ? 1 : 0;
    return n;
}

FourVector PathEnsemble::mean_position(std::size_t k) const {
    FourVector m = FourVector::Zero();
    for (int mu = 0; mu < 4; ++mu) {
        std::vector<double> v;
        v.reserve(n_paths);
        for (std::size_t p = 0; p < n_paths; ++p)
            if (alive_at(p, k)) v.push_back(at(p, k)(mu));
        if (v.empty()) throw EnsembleCollapse();
        m(mu) = stats::pairwise_sum(v) / double(v.size());
    }
    return m;
}

FourVector PathEnsemble::mean_position_se(std::size_t k) const {
    FourVector se = FourVector::Zero();
    for (int mu = 0; mu < 4; ++mu) {
        std::vector<double> v;
        v.reserve(n_paths);
        for (std::size_t p = 0; p < n_paths; ++p)
            if (alive_at(p, k)) v.push_back(at(p, k)(mu));
        se(mu) = stats::mean_se(v).se;
    }
    return se;
}

stats::MeanSE PathEnsemble::expectation(std::size_t k,
                                        const std::function<double(const FourVector&)>& f) const {
    std::vector<double> v;
    v.reserve(n_paths);
    for (std::size_t p = 0; p < n_paths; ++p)
        if (alive_at(p, k)) v.push_back(f(at(p, k)));
    if (v.empty()) throw EnsembleCollapse();
    return stats::mean_se(v);
}

namespace {

void validate_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw std::domain_error("tau grid must be nonempty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) throw std::domain_error("tau grid must be strictly monotone");
}

// Substeps per snapshot gap: the closest count to gap/dtau, at least one;
// each segment then uses the exact step gap/count.
struct Segment {
    std::size_t count;
    double h;
};
std::vector<Segment> substep_plan(const std::vector<double>& grid, double dtau) {
    std::vector<Segment> plan(grid.size() - 1);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double gap = grid[i + 1] - grid[i];
        const std::size_t n = std::max<std::size_t>(1, std::size_t(std::llround(gap / dtau)));
        plan[i] = {n, gap / double(n)};
    }
    return plan;
}

template <class Work>
void run_workers(std::size_t n_items, unsigned n_workers, const Work& work) {
    n_workers = std::max(1u, n_workers);
    if (n_workers == 1) {
        work(0, n_items);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n_items + n_workers - 1) / n_workers;
    for (unsigned w = 0; w < n_workers; ++w) {
        const std::size_t lo = std::min(n_items, std::size_t(w) * chunk);
        const std::size_t hi = std::min(n_items, lo + chunk);
        if (lo < hi) pool.emplace_back([&, lo, hi] { work(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

PathEnsemble sample_ensemble(const InitialDistribution& initial, const VelocityModel& field,
                             double lambda, const EnsembleConfig& cfg) {
    validate_grid(cfg.tau_grid);
    if (cfg.n_paths == 0) throw std::domain_error("sample_ensemble: need n_paths >= 1");
    if (cfg.dtau <= 0.0) throw std::domain_error("sample_ensemble: dtau must be > 0");
    const auto plan = substep_plan(cfg.tau_grid, cfg.dtau);
    const std::size_t K = cfg.tau_grid.size();

    PathEnsemble ens;
    ens.tau = cfg.tau_grid;
    ens.n_paths = cfg.n_paths;
    ens.pos.assign(cfg.n_paths * K, FourVector::Zero());
    ens.alive.assign(cfg.n_paths * K, 1);
    ens.master_seed = cfg.master_seed;
    ens.lambda = lambda;
    ens.dtau = cfg.dtau;

    const bool fwd = cfg.direction == Direction::Forward;
    run_workers(cfg.n_paths, cfg.n_workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t p = lo; p < hi; ++p) {
            CounterRng init_rng(cfg.master_seed, std::uint32_t(p), StreamRole::InitialState);
            CounterRng w_rng(cfg.master_seed, std::uint32_t(p),
                             fwd ? StreamRole::WienerForward : StreamRole::WienerBackward);
            PathState s;
            s.master_seed = cfg.master_seed;
            s.path_index = std::uint32_t(p);
            s.x = initial.sample(init_rng);
            if (fwd) {
                s.tau = cfg.tau_grid.front();
                ens.pos[p * K] = s.x;
                ens.alive[p * K] = 1;
                for (std::size_t k = 0; k + 1 < K; ++k) {
                    for (std::size_t i = 0; i < plan[k].count && s.alive; ++i)
                        s = step_forward(s, field, lambda, plan[k].h, w_rng);
                    ens.pos[p * K + k + 1] = s.x;
                    ens.alive[p * K + k + 1] = s.alive ? 1 : 0;
                }
            } else {
                // terminal-value convention: start at the last grid point
                s.tau = cfg.tau_grid.back();
                ens.pos[p * K + (K - 1)] = s.x;
                ens.alive[p * K + (K - 1)] = 1;
                for (std::size_t k = K - 1; k > 0; --k) {
                    for (std::size_t i = 0; i < plan[k - 1].count && s.alive; ++i)
                        s = step_backward(s, field, lambda, plan[k - 1].h, w_rng);
                    ens.pos[p * K + (k - 1)] = s.x;
                    ens.alive[p * K + (k - 1)] = s.alive ? 1 : 0;
                }
            }
        }
    });

    bool any_alive = false;
    const std::size_t k_last = fwd ? K - 1 : 0;
    for (std::size_t p = 0; p < cfg.n_paths && !any_alive; ++p)
        any_alive = ens.alive_at(p, k_last);
    if (!any_alive) throw EnsembleCollapse();
    return ens;
}

// ---------------------------------------------------------------------------

namespace {

// v and u of the oscillator bed from the complex velocity: v = Re V1, u = -Im V1.
struct Drift1D {
    const WaveFunction* wf;
    const FieldProfile* profile;
    const PhysicalParams* params;
    std::pair<double, double> vu(double x, double t) const {
        const ComplexFourVector V =
            complex_velocity(*wf, *profile, FourVector(t, x, 0.0, 0.0), *params);
        return {V(1).real(), -V(1).imag()};
    }
};

}  // namespace

std::pair<double, double> nelson1d_step(double x, double t, const WaveFunction& wf,
                                        const PhysicalParams& params, double dt,
                                        CounterRng& rng, std::uint64_t step, Direction dir) {
    if (dt <= 0.0) throw std::domain_error("nelson1d_step: dt must be > 0");
    static const FieldProfile vac = FieldProfile::vacuum();
    const Drift1D d{&wf, &vac, &params};
    const auto [v, u] = d.vu(x, t);
    const double lam0 = params.lambda();
    const double dw = std::sqrt(dt) * rng.normal(step);
    if (dir == Direction::Forward) return {x + (v + u) * dt + lam0 * dw, t + dt};
    return {x - (v - u) * dt - lam0 * dw, t - dt};
}

std::vector<double> Nelson1DEnsemble::alive_samples(std::size_t k) const {
    std::vector<double> out;
    out.reserve(n_paths);
    for (std::size_t p = 0; p < n_paths; ++p)
        if (alive_at(p, k)) out.push_back(sample(p, k));
    return out;
}

Nelson1DEnsemble sample_nelson1d(const WaveFunction& wf, const PhysicalParams& params,
                                 const Nelson1DConfig& cfg) {
    validate_grid(cfg.t_grid);
    if (cfg.n_paths == 0) throw std::domain_error("sample_nelson1d: need n_paths >= 1");
    if (cfg.dt <= 0.0) throw std::domain_error("sample_nelson1d: dt must be > 0");
    if (!wf.is_oscillator()) throw std::domain_error("sample_nelson1d: oscillator states only");
    const auto plan = substep_plan(cfg.t_grid, cfg.dt);
    const std::size_t K = cfg.t_grid.size();

    Nelson1DEnsemble ens;
    ens.t = cfg.t_grid;
    ens.n_paths = cfg.n_paths;
    ens.x.assign(cfg.n_paths * K, 0.0);
    ens.alive.assign(cfg.n_paths * K, 1);

    // inline drift for the hot loop
    const auto& spec = wf.oscillator_spec();
    const double lam2 = params.hbar_eff / params.m0;
    const double s2 = spec.sigma * spec.sigma;
    const double w0 = lam2 / s2;
    const double lam0 = params.lambda();
    const double node_floor = 1e-12 * wf.amplitude_scale();
    const bool fwd = cfg.direction == Direction::Forward;

    run_workers(cfg.n_paths, cfg.n_workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t p = lo; p < hi; ++p) {
            CounterRng init_rng(cfg.master_seed, std::uint32_t(p), StreamRole::InitialState);
            CounterRng w_rng(cfg.master_seed, std::uint32_t(p),
                             fwd ? StreamRole::WienerForward : StreamRole::WienerBackward);
            double x = cfg.x0_center + (cfg.x0_sigma > 0.0 ? cfg.x0_sigma * init_rng.normal(0) : 0.0);
            double t = fwd ? cfg.t_grid.front() : cfg.t_grid.back();
            bool alive = true;
            std::uint64_t step = 0;

            const auto store = [&](std::size_t k) {
                ens.x[p * K + k] = x;
                ens.alive[p * K + k] = alive ? 1 : 0;
            };
            const auto advance = [&](std::size_t nsteps, double dt) {
                for (std::size_t i = 0; i < nsteps && alive; ++i) {
                    double v, u;
                    switch (spec.state) {
                        case OscillatorState::Ground:
                            v = 0.0;
                            u = -lam2 * x / s2;
                            break;
                        case OscillatorState::Excited1: {
                            if (std::abs(x) < node_floor) { alive = false; continue; }
                            v = 0.0;
                            u = lam2 * (1.0 / x - x / s2);
                            break;
                        }
                        case OscillatorState::Coherent: {
                            const double xc = spec.displacement * std::cos(w0 * t);
                            const double pc = -params.m0 * w0 * spec.displacement * std::sin(w0 * t);
                            v = pc / params.m0;
                            u = -lam2 * (x - xc) / s2;
                            break;
                        }
                        default: v = 0.0; u = 0.0;
                    }
                    const double dw = std::sqrt(dt) * w_rng.normal(step++);
                    if (fwd) {
                        x += (v + u) * dt + lam0 * dw;
                        t += dt;
                    } else {
                        x -= (v - u) * dt + lam0 * dw;
                        t -= dt;
                    }
                }
            };

            if (fwd) {
                store(0);
                for (std::size_t k = 0; k + 1 < K; ++k) {
                    advance(plan[k].count, plan[k].h);
                    store(k + 1);
                }
            } else {
                store(K - 1);
                for (std::size_t k = K - 1; k > 0; --k) {
                    advance(plan[k - 1].count, plan[k - 1].h);
                    store(k - 1);
                }
            }
        }
    });

    bool any_alive = false;
    const std::size_t k_last = fwd ? K - 1 : 0;
    for (std::size_t p = 0; p < cfg.n_paths && !any_alive; ++p)
        any_alive = ens.alive_at(p, k_last);
    if (!any_alive) throw EnsembleCollapse();
    return ens;
}

}  // namespace srr
