#pragma once
#include <optional>
#include <string>
#include <vector>

#include "srr/core.hpp"

namespace srr {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what) {}
};

enum class ScenarioKind { QTable, Nelson1D, Ensemble4D, Classical, ClassicalLimitSweep };

struct FieldSpecCfg {
    std::string kind = "vacuum";  // vacuum | constant_magnetic | constant_crossed | plane_wave
    double b_z = 0.0;
    double e0 = 0.0;
    double a0 = 0.0;
    double omega = 1.0;
    std::string envelope = "infinite";  // infinite | sin2
    double cycles = 0.0;
};

struct WavefunctionCfg {
    // free_particle | scalar_volkov | oscillator_ground | oscillator_coherent |
    // oscillator_excited1 | rotor
    std::string kind = "free_particle";
    FourVector p = FourVector(1, 0, 0, 0);
    double sigma = 1.0;
    double displacement = 0.0;
};

struct InitialCfg {
    std::string kind = "point";  // point | gaussian | box
    FourVector center = FourVector::Zero();
    double sigma = 0.0;
    FourVector box_lo = FourVector::Zero(), box_hi = FourVector::Zero();
};

struct TauGridCfg {
    double start = 0.0, stop = 1.0;
    int snapshots = 11;
};

struct EnsembleCfg {
    std::size_t n_paths = 1000;
    double dt = 1e-3;
    std::string direction = "forward";
};

struct QTableCfg {
    std::vector<double> intensities_W_cm2;
    std::vector<double> energies_MeV;
    int outer_points = 32, inner_points = 32;
};

struct NelsonCfg {
    std::size_t n_paths = 10000;
    double t_stop = 50.0;
    double dt = 5e-3;
    int snapshots = 6;
    double x0_center = 0.0, x0_sigma = 1.0;
    double xmin = -4.0, xmax = 4.0;
    int bins = 80;
};

struct ClassicalCfg {
    std::string mode = "ll";  // ll | lad_forward | lad_reduced
    double gamma0 = 10.0;
    double a0_magnitude = 0.0;  ///< initial |a| for the run-away demo
    double t_stop = 10.0;
    double dt = 1e-3;
    double radius = 0.0;  ///< 0: derive the constant-B orbit radius from gamma0
};

struct SweepCfg {
    std::vector<double> lambdas;
    std::size_t n_paths = 10000;
    double dt = 2e-4;
    double t_stop = 3.141592653589793;
    int snapshots = 17;
    double radius = 1.0;
};

struct EstimatorsCfg {
    bool mean_trajectory = false;
    bool lorentz_invariant = false;
    bool ehrenfest = false;
    bool pomega = false;
    bool rr_field = false;
    bool power = false;
    bool partial_integration = false;
    double epsilon = 0.0;  ///< window radius; 0 selects the default
};

struct Scenario {
    std::string name;
    ScenarioKind kind = ScenarioKind::Ensemble4D;
    PhysicalParams physics;
    FieldSpecCfg field;
    WavefunctionCfg wavefunction;
    InitialCfg initial;
    TauGridCfg tau_grid;
    EnsembleCfg ensemble;
    QTableCfg qtable;
    NelsonCfg nelson;
    ClassicalCfg classical;
    SweepCfg sweep;
    EstimatorsCfg estimators;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
};

/// Parse and validate a scenario document. Unknown keys, missing required
/// fields and non-physical values raise ConfigError naming the location.
Scenario parse_scenario(const std::string& json_text);

/// Lossless canonical serialization (stable key order, full precision).
std::string serialize_scenario(const Scenario& s);

/// Dry-run validation; throws ConfigError on the first violation.
void validate_scenario(const Scenario& s);

std::vector<std::string> list_scenarios();
/// Built-in scenario JSON by name; throws ConfigError for unknown names.
std::string builtin_scenario_text(const std::string& name);
Scenario builtin_scenario(const std::string& name);

/// FNV-1a hash of the canonical serialization (manifest config hash).
std::uint64_t config_hash(const Scenario& s);

}  // namespace srr
