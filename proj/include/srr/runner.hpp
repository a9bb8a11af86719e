#pragma once
#include <map>
#include <optional>

#include "srr/scenario.hpp"

namespace srr {

struct RunOptions {
    std::optional<std::uint64_t> seed;  ///< overrides the scenario seed
    unsigned n_workers = 1;
    std::optional<std::string> out_dir;
    bool overwrite = false;
    bool svg = true;
};

struct RunManifest {
    std::string name;
    std::string config_hash_hex;
    std::uint64_t seed = 0;
    std::string code_version;
    unsigned n_workers = 1;
    std::map<std::string, std::string> output_checksums;  ///< file -> fnv64 hex
    std::vector<std::string> failed_outputs;
    double wall_time_s = 0.0;
    bool complete() const { return failed_outputs.empty(); }
    std::string out_dir;
};

/// Runs the scenario, writes every requested output CSV (and SVG views),
/// then the manifest as the completion marker. Estimator failures are
/// recorded per output; a ConfigError propagates.
RunManifest run_scenario(const Scenario& s, const RunOptions& opt);

/// Default worker count: SRR_THREADS env var, else 1.
unsigned default_workers();

std::string code_version();

}  // namespace srr
