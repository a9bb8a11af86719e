#include "srr/runner.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "srr/fokker_planck.hpp"
#include "srr/mean_derivative.hpp"
#include "srr/qfactor.hpp"
#include "srr/report.hpp"
#include "srr/rr_classical.hpp"
#include "srr/rr_stochastic.hpp"

namespace srr {

namespace fs = std::filesystem;

unsigned default_workers() {
    if (const char* env = std::getenv("SRR_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1 && n <= 1024) return unsigned(n);
    }
    return 1;
}

std::string code_version() { return "0.1.0"; }

namespace {

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

FieldProfile make_profile(const Scenario& s) {
    const auto& f = s.field;
    if (f.kind == "vacuum") return FieldProfile::vacuum();
    if (f.kind == "constant_magnetic") return FieldProfile::constant_magnetic(f.b_z);
    if (f.kind == "constant_crossed") return FieldProfile::constant_crossed(f.e0);
    PlaneWaveSpec w;
    w.a0 = f.a0;
    w.k = FourVector(f.omega, 0.0, 0.0, f.omega);
    w.eps = FourVector(0.0, 1.0, 0.0, 0.0);
    w.envelope = f.envelope == "sin2" ? EnvelopeKind::Sin2 : EnvelopeKind::Infinite;
    w.cycles = f.cycles;
    return FieldProfile::plane_wave(w);
}

std::unique_ptr<VelocityModel> make_velocity_model(const Scenario& s,
                                                   const FieldProfile& profile) {
    const auto& w = s.wavefunction;
    if (w.kind == "rotor") return std::make_unique<RotorVelocityField>(s.field.b_z, s.physics);
    WaveFunction wf = [&] {
        if (w.kind == "free_particle") return WaveFunction::free_particle(w.p, s.physics);
        if (w.kind == "scalar_volkov") return WaveFunction::scalar_volkov(w.p, s.physics);
        Custom1DSpec spec;
        spec.sigma = w.sigma;
        spec.displacement = w.displacement;
        spec.state = w.kind == "oscillator_coherent"
                         ? OscillatorState::Coherent
                         : (w.kind == "oscillator_excited1" ? OscillatorState::Excited1
                                                            : OscillatorState::Ground);
        return WaveFunction::oscillator(spec);
    }();
    return std::make_unique<ComplexVelocityField>(std::move(wf), profile, s.physics);
}

InitialDistribution make_initial(const Scenario& s) {
    InitialDistribution d;
    if (s.initial.kind == "point") {
        d.kind = InitialDistribution::Kind::Point;
        d.center = s.initial.center;
    } else if (s.initial.kind == "gaussian") {
        d.kind = InitialDistribution::Kind::GaussianIso;
        d.center = s.initial.center;
        d.sigma = s.initial.sigma;
    } else {
        d.kind = InitialDistribution::Kind::Box;
        d.box_lo = s.initial.box_lo;
        d.box_hi = s.initial.box_hi;
    }
    return d;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * double(i) / double(n - 1);
    return v;
}

struct OutputSink {
    fs::path dir;
    RunManifest* manifest;
    bool svg;

    void write_csv(const std::string& name, const CsvWriter& csv) const {
        const fs::path p = dir / name;
        csv.write(p.string());
        manifest->output_checksums[name] = hex64(fnv1a_file(p.string()));
    }
    void write_svg(const std::string& name, const std::string& title,
                   const std::vector<SvgSeries>& series, bool log_y = false) const {
        if (!svg) return;
        const fs::path p = dir / name;
        write_svg_plot(p.string(), title, series, log_y);
        manifest->output_checksums[name] = hex64(fnv1a_file(p.string()));
    }
};

// --------------------------------------------------------------------------
// qtable

void run_qtable(const Scenario& s, std::uint64_t /*seed*/, unsigned /*workers*/,
                const OutputSink& sink) {
    QuadratureSpec spec;
    spec.outer_points = s.qtable.outer_points;
    spec.inner_points = s.qtable.inner_points;
    const auto rows = emit_q_table(s.qtable.intensities_W_cm2, s.qtable.energies_MeV, spec);
    CsvWriter csv({"intensity_W_cm2", "energy_MeV", "chi", "q_full", "q_sqed"});
    for (const auto& r : rows) csv.add_row({r.intensity_W_cm2, r.energy_MeV, r.chi, r.q_full, r.q_sqed});
    sink.write_csv("qtable.csv", csv);

    std::vector<std::pair<double, double>> curve;
    for (const auto& r : rows) curve.emplace_back(r.chi, r.q_full);
    std::sort(curve.begin(), curve.end());
    SvgSeries se{"q_full(chi)", {}, {}};
    for (const auto& [chi, q] : curve) {
        se.x.push_back(chi);
        se.y.push_back(q);
    }
    sink.write_svg("qcurve.svg", "quantumness factor vs chi", {se});
}

// --------------------------------------------------------------------------
// nelson1d

double ground_cdf(double x, const void* ctx) {
    const double sx = *static_cast<const double*>(ctx);  // position sd = sigma/sqrt(2)
    return 0.5 * std::erfc(-x / (sx * std::numbers::sqrt2));
}

void run_nelson(const Scenario& s, std::uint64_t seed, unsigned workers, const OutputSink& sink) {
    WaveFunction wf = WaveFunction::oscillator(
        {s.wavefunction.kind == "oscillator_coherent"
             ? OscillatorState::Coherent
             : (s.wavefunction.kind == "oscillator_excited1" ? OscillatorState::Excited1
                                                             : OscillatorState::Ground),
         s.wavefunction.sigma, s.wavefunction.displacement});
    Nelson1DConfig cfg;
    cfg.t_grid = linspace(0.0, s.nelson.t_stop, s.nelson.snapshots);
    cfg.n_paths = s.nelson.n_paths;
    cfg.master_seed = seed;
    cfg.dt = s.nelson.dt;
    cfg.n_workers = workers;
    cfg.x0_center = s.nelson.x0_center;
    cfg.x0_sigma = s.nelson.x0_sigma;
    const Nelson1DEnsemble ens = sample_nelson1d(wf, s.physics, cfg);

    const std::size_t kf = ens.t.size() - 1;
    const auto samples = ens.alive_samples(kf);
    // bins = 0 selects Scott's rule on the sampled ensemble
    Eigen::Index bins = s.nelson.bins;
    if (bins == 0) {
        const auto ms = stats::mean_se(samples);
        const double sd = ms.se * std::sqrt(double(ms.n));
        bins = scott_bins(samples.size(), sd, s.nelson.xmax - s.nelson.xmin);
    }
    const DensityGrid1D hist =
        density_estimate_1d(samples, s.nelson.xmin, s.nelson.xmax, bins, ens.n_paths);
    const double sx = s.wavefunction.sigma / std::numbers::sqrt2;  // sd of |psi|^2

    CsvWriter dcsv({"x", "p_empirical", "p_analytic"});
    for (Eigen::Index i = 0; i < hist.size(); ++i) {
        const double x = hist.x(i);
        const double pa = std::exp(-x * x / (2.0 * sx * sx)) / (sx * std::sqrt(2.0 * std::numbers::pi));
        dcsv.add_row({x, hist.p(i), pa});
    }
    sink.write_csv("density.csv", dcsv);

    const double ks = stats::ks_statistic(samples, &ground_cdf, &sx);
    CsvWriter scsv({"quantity", "value"});
    scsv.add_row_mixed({"ks_final", CsvWriter::format_number(ks)});
    scsv.add_row_mixed({"alive_fraction",
                        CsvWriter::format_number(double(samples.size()) / double(ens.n_paths))});
    scsv.add_row_mixed({"t_final", CsvWriter::format_number(ens.t.back())});
    sink.write_csv("summary.csv", scsv);

    SvgSeries emp{"empirical", {}, {}}, ana{"|psi|^2", {}, {}};
    for (Eigen::Index i = 0; i < hist.size(); ++i) {
        const double x = hist.x(i);
        emp.x.push_back(x);
        emp.y.push_back(hist.p(i));
        ana.x.push_back(x);
        ana.y.push_back(std::exp(-x * x / (2.0 * sx * sx)) / (sx * std::sqrt(2.0 * std::numbers::pi)));
    }
    sink.write_svg("density.svg", "stationary density vs |psi|^2", {emp, ana});
}

// --------------------------------------------------------------------------
// classical

void run_classical(const Scenario& s, std::uint64_t /*seed*/, unsigned /*workers*/,
                   const OutputSink& sink) {
    const FieldProfile profile = make_profile(s);
    const auto& c = s.classical;
    ClassicalState init;
    const double gamma0 = c.gamma0;
    const double beta0 = std::sqrt(std::max(0.0, 1.0 - 1.0 / (gamma0 * gamma0)));
    if (s.field.kind == "constant_magnetic" && gamma0 > 1.0) {
        // circular orbit in the x-y plane, radius gamma beta / omega
        const double omega = s.physics.charge_e * s.field.b_z / s.physics.m0;
        const double r = c.radius > 0.0 ? c.radius : gamma0 * beta0 / omega;
        init.x = FourVector(0.0, r, 0.0, 0.0);
        init.v = FourVector(gamma0, 0.0, gamma0 * beta0, 0.0);
    } else {
        init.v = FourVector(gamma0, gamma0 * beta0, 0.0, 0.0);
    }

    Trajectory traj;
    bool runaway = false;
    double runaway_tau = 0.0;
    if (c.mode == "ll") {
        traj = integrate_ll(init, profile, s.physics, c.t_stop, c.dt);
    } else {
        if (c.mode == "lad_forward") init.a = FourVector(0.0, 0.0, 0.0, c.a0_magnitude);
        const LadResult r = integrate_lad(init, profile, s.physics, c.t_stop, c.dt,
                                          c.mode == "lad_forward" ? LadMode::Forward
                                                                  : LadMode::ReducedOrder);
        traj = r.traj;
        runaway = r.runaway_detected;
        runaway_tau = r.runaway_tau;
    }

    // analytic gamma reference: synchrotron decay in constant B, run-away
    // growth for the field-free LAD demo
    const double K = std::pow(s.physics.charge_e * s.field.b_z / s.physics.m0, 2) * s.physics.tau0;
    const double beta0sq = beta0 * beta0;
    CsvWriter csv({"tau", "x0", "x1", "x2", "x3", "v0", "v1", "v2", "v3", "a_norm",
                   "gamma_analytic", "power"});
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto& st = traj.states[i];
        const double tau = traj.tau[i];
        double ga = 0.0;
        if (s.field.kind == "constant_magnetic")
            ga = 1.0 / std::sqrt(1.0 - beta0sq * std::exp(-2.0 * K * tau));
        else if (c.mode == "lad_forward" && s.physics.tau0 > 0.0)
            ga = c.a0_magnitude * std::exp(tau / s.physics.tau0);  // |a| growth reference
        const double anorm = std::sqrt(std::max(0.0, -minkowski_dot(st.a, st.a)));
        const FourVector acc =
            c.mode == "ll" ? FourVector(FourVector::Zero()) : st.a;  // LL power from finite diff below
        double power = larmor_power(st.v, acc, s.physics);
        if (c.mode == "ll" && i > 0 && i + 1 < traj.size()) {
            const FourVector a_fd =
                (traj.states[i + 1].v - traj.states[i - 1].v) / (traj.tau[i + 1] - traj.tau[i - 1]);
            power = larmor_power(st.v, a_fd, s.physics);
        }
        csv.add_row({tau, st.x(0), st.x(1), st.x(2), st.x(3), st.v(0), st.v(1), st.v(2), st.v(3),
                     anorm, ga, power});
    }
    sink.write_csv("trajectory.csv", csv);

    CsvWriter scsv({"quantity", "value"});
    scsv.add_row_mixed({"mode", c.mode});
    scsv.add_row_mixed({"norm_drift", CsvWriter::format_number(norm_drift(traj, s.physics))});
    scsv.add_row_mixed({"runaway_detected", runaway ? "1" : "0"});
    scsv.add_row_mixed({"runaway_tau", CsvWriter::format_number(runaway_tau)});
    sink.write_csv("summary.csv", scsv);

    SvgSeries g{"gamma(tau)", {}, {}};
    for (std::size_t i = 0; i < traj.size(); ++i) {
        g.x.push_back(traj.tau[i]);
        g.y.push_back(traj.states[i].v(0));
    }
    sink.write_svg("gamma.svg", "energy along the trajectory", {g});
}

// --------------------------------------------------------------------------
// classical limit sweep

void run_sweep(const Scenario& s, std::uint64_t seed, unsigned workers, const OutputSink& sink) {
    const double omega = s.physics.charge_e * s.field.b_z / s.physics.m0;
    const double r0 = s.sweep.radius;
    const double gamma = std::sqrt(1.0 + omega * omega * r0 * r0);

    // LL reference with tau0 = 0 reduces to the Lorentz orbit of the rotor flow
    PhysicalParams pll = s.physics;
    const FieldProfile profile = make_profile(s);
    ClassicalState init;
    init.x = FourVector(0.0, r0, 0.0, 0.0);
    init.v = FourVector(gamma, 0.0, omega * r0, 0.0);

    const std::vector<double> grid = linspace(0.0, s.sweep.t_stop, s.sweep.snapshots);
    const double gap = grid[1] - grid[0];
    const std::size_t stride = std::max<std::size_t>(1, std::size_t(std::llround(gap / s.sweep.dt)));
    const double dt_actual = gap / double(stride);

    const Trajectory ref = integrate_ll(init, profile, pll, s.sweep.t_stop, dt_actual);

    CsvWriter csv({"lambda", "max_deviation", "max_se", "dt_floor"});
    SvgSeries dev_series{"max |<x> - x_LL|", {}, {}};
    for (double lam : s.sweep.lambdas) {
        PhysicalParams ph = s.physics;
        ph.hbar_eff = lam * lam * ph.m0;
        const RotorVelocityField rotor(s.field.b_z, ph);
        EnsembleConfig cfg;
        cfg.tau_grid = grid;
        cfg.n_paths = s.sweep.n_paths;
        cfg.master_seed = seed;
        cfg.dtau = dt_actual;
        cfg.n_workers = workers;
        InitialDistribution initial;
        initial.kind = InitialDistribution::Kind::Point;
        initial.center = init.x;
        const PathEnsemble ens = sample_ensemble(initial, rotor, lam, cfg);

        double max_dev = 0.0, max_se = 0.0;
        for (std::size_t k = 0; k < ens.n_snapshots(); ++k) {
            const FourVector m = ens.mean_position(k);
            const FourVector se = ens.mean_position_se(k);
            const FourVector& xr = ref.states[k * stride].x;
            max_dev = std::max(max_dev, (m - xr).cwiseAbs().maxCoeff());
            max_se = std::max(max_se, se.maxCoeff());
        }
        const double dt_floor = 0.5 * omega * omega * s.sweep.t_stop * r0 * dt_actual;
        csv.add_row({lam, max_dev, max_se, dt_floor});
        dev_series.x.push_back(lam);
        dev_series.y.push_back(max_dev);
    }
    sink.write_csv("sweep.csv", csv);
    sink.write_svg("sweep.svg", "classical-limit collapse", {dev_series}, true);
}

// --------------------------------------------------------------------------
// ensemble4d

void run_ensemble4d(const Scenario& s, std::uint64_t seed, unsigned workers,
                    const OutputSink& sink) {
    const FieldProfile profile = make_profile(s);
    const auto model = make_velocity_model(s, profile);
    const double lam = s.physics.lambda();

    EnsembleConfig cfg;
    cfg.tau_grid = linspace(s.tau_grid.start, s.tau_grid.stop, s.tau_grid.snapshots);
    cfg.n_paths = s.ensemble.n_paths;
    cfg.master_seed = seed;
    cfg.direction =
        s.ensemble.direction == "backward" ? Direction::Backward : Direction::Forward;
    cfg.dtau = s.ensemble.dt;
    cfg.n_workers = workers;
    const PathEnsemble ens = sample_ensemble(make_initial(s), *model, lam, cfg);
    const std::size_t K = ens.n_snapshots();
    const double dsnap = cfg.tau_grid[1] - cfg.tau_grid[0];
    const double eps =
        s.estimators.epsilon > 0.0 ? s.estimators.epsilon : default_window_eps(ens);

    std::vector<FourVector> mean_traj(K);
    for (std::size_t k = 0; k < K; ++k) mean_traj[k] = ens.mean_position(k);

    if (s.estimators.mean_trajectory) {
        CsvWriter csv({"tau", "x0", "x1", "x2", "x3", "se0", "se1", "se2", "se3", "alive"});
        for (std::size_t k = 0; k < K; ++k) {
            const FourVector se = ens.mean_position_se(k);
            csv.add_row({ens.tau[k], mean_traj[k](0), mean_traj[k](1), mean_traj[k](2),
                         mean_traj[k](3), se(0), se(1), se(2), se(3),
                         double(ens.alive_count(k)) / double(ens.n_paths)});
        }
        sink.write_csv("mean_trajectory.csv", csv);
    }

    if (s.estimators.lorentz_invariant) {
        const double c2 = s.physics.c * s.physics.c;
        CsvWriter csv({"tau", "mean_vv", "se", "z"});
        for (std::size_t k = 0; k < K; ++k) {
            const auto ms = ens.expectation(k, [&](const FourVector& x) {
                return complex_norm(model->velocity(x));
            });
            csv.add_row({ens.tau[k], ms.mean, ms.se, stats::z_score(ms.mean, c2, ms.se)});
        }
        sink.write_csv("invariant.csv", csv);
    }

    if (s.estimators.ehrenfest) {
        CsvWriter csv({"tau", "z0", "z1", "z2", "z3", "max_abs_z"});
        for (std::size_t k = 1; k + 1 < K; ++k) {
            const EhrenfestReport rep = ehrenfest_check(ens, *model, profile, s.physics, k);
            csv.add_row({ens.tau[k], rep.z(0), rep.z(1), rep.z(2), rep.z(3), rep.max_abs_z});
        }
        sink.write_csv("ehrenfest.csv", csv);
    }

    if (s.estimators.pomega) {
        CsvWriter csv({"tau", "p", "se", "lo", "hi", "eps", "n_window", "n_alive"});
        for (std::size_t k = 0; k < K; ++k) {
            const OmegaAveEstimate est = p_omega_ave(ens, k, eps);
            csv.add_row({ens.tau[k], est.p_hat, est.se, est.lo, est.hi, est.eps,
                         double(est.n_window), double(est.n_alive)});
        }
        sink.write_csv("pomega.csv", csv);
    }

    if (s.estimators.rr_field) {
        const MeanDerivativeOperator op(*model, lam, 1e-3);
        CsvWriter csv({"tau", "mu", "nu", "f_est", "f_se", "p_times_flad", "z"});
        for (std::size_t k = 2; k + 2 < K; k += std::max<std::size_t>(1, (K - 4) / 4)) {
            const RRFieldEstimate est = stochastic_rr_field(ens, op, s.physics, k,
                                                            WindowAnchor::Average, 0, eps);
            const OmegaAveEstimate pom = p_omega_ave(ens, k, eps);
            const FieldTensor ref = pom.p_hat * lad_bracket_of_mean(mean_traj, dsnap, k, s.physics);
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = mu + 1; nu < 4; ++nu) {
                    const double se = std::max(est.se(mu, nu), 1e-300);
                    csv.add_row({ens.tau[k], double(mu), double(nu), est.value(mu, nu),
                                 est.se(mu, nu), ref(mu, nu),
                                 (est.value(mu, nu) - ref(mu, nu)) / se});
                }
        }
        sink.write_csv("rrfield.csv", csv);
    }

    if (s.estimators.power) {
        CsvWriter csv({"tau", "p_ave", "power_stochastic", "larmor_mean_traj"});
        for (std::size_t k = 1; k + 1 < K; ++k) {
            const OmegaAveEstimate pom = p_omega_ave(ens, k, eps);
            const double pw = radiated_power_stochastic(mean_traj, dsnap, k, pom, s.physics);
            const FourVector acc =
                (mean_traj[k + 1] - 2.0 * mean_traj[k] + mean_traj[k - 1]) / (dsnap * dsnap);
            csv.add_row({ens.tau[k], pom.p_hat, pw,
                         larmor_power(FourVector::Zero(), acc, s.physics)});
        }
        sink.write_csv("power.csv", csv);
    }

    if (s.estimators.partial_integration) {
        const MeanDerivativeOperator op(*model, lam, 1e-3);
        const std::size_t k = K / 2;
        CheckReport all;
        const Vector4Field xfield = [](const FourVector& x) { return to_complex(x); };
        const Vector4Field e1 = [](const FourVector&) {
            return to_complex(FourVector(0.0, 1.0, 0.0, 0.0));
        };
        const Vector4Field vstar = [&](const FourVector& x) {
            return ComplexFourVector(model->velocity(x).conjugate());
        };
        const Vector4Field v = [&](const FourVector& x) { return model->velocity(x); };
        for (auto& line :
             verify_partial_integration(e1, e1, "const.const", ens, op, k).lines)
            all.lines.push_back(line);
        for (auto& line : verify_partial_integration(xfield, e1, "x.const", ens, op, k).lines)
            all.lines.push_back(line);
        for (auto& line : verify_partial_integration(vstar, v, "V*.V", ens, op, k).lines)
            all.lines.push_back(line);
        CsvWriter csv({"check", "lhs", "rhs", "se", "z"});
        for (const auto& line : all.lines)
            csv.add_row_mixed({line.name, CsvWriter::format_number(line.lhs),
                               CsvWriter::format_number(line.rhs),
                               CsvWriter::format_number(line.se),
                               CsvWriter::format_number(line.z)});
        sink.write_csv("partint.csv", csv);
    }
}

}  // namespace

RunManifest run_scenario(const Scenario& s, const RunOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    validate_scenario(s);

    RunManifest man;
    man.name = s.name;
    man.config_hash_hex = hex64(config_hash(s));
    man.seed = opt.seed.value_or(s.seed);
    man.code_version = code_version();
    man.n_workers = std::max(1u, opt.n_workers);
    man.out_dir = opt.out_dir.value_or(s.output_dir);

    const fs::path dir(man.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("output_dir", "cannot create '" + man.out_dir + "'");
    if (fs::exists(dir / "manifest.json") && !opt.overwrite)
        throw ConfigError("output_dir",
                          "'" + man.out_dir + "' already holds a run; pass --overwrite");

    const OutputSink sink{dir, &man, opt.svg};
    try {
        switch (s.kind) {
            case ScenarioKind::QTable:
                run_qtable(s, man.seed, man.n_workers, sink);
                break;
            case ScenarioKind::Nelson1D:
                run_nelson(s, man.seed, man.n_workers, sink);
                break;
            case ScenarioKind::Classical:
                run_classical(s, man.seed, man.n_workers, sink);
                break;
            case ScenarioKind::ClassicalLimitSweep:
                run_sweep(s, man.seed, man.n_workers, sink);
                break;
            case ScenarioKind::Ensemble4D:
                run_ensemble4d(s, man.seed, man.n_workers, sink);
                break;
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        man.failed_outputs.push_back(std::string("run: ") + e.what());
    }

    man.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    nlohmann::json j;
    j["name"] = man.name;
    j["config_hash"] = man.config_hash_hex;
    j["seed"] = man.seed;
    j["code_version"] = man.code_version;
    j["n_workers"] = man.n_workers;
    j["outputs"] = man.output_checksums;
    j["failed_outputs"] = man.failed_outputs;
    j["wall_time_s"] = man.wall_time_s;
    j["status"] = man.complete() ? "complete" : "partial";
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest.json");
    out << j.dump(2) << "\n";
    return man;
}

}  // namespace srr
