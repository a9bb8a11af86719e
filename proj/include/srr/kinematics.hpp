#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "srr/core.hpp"
#include "srr/rng.hpp"
#include "srr/stats.hpp"
#include "srr/wavefunction.hpp"

namespace srr {

class EnsembleCollapse : public std::runtime_error {
public:
    EnsembleCollapse() : std::runtime_error("all sample paths were rejected") {}
};

class InsufficientStatistics : public std::runtime_error {
public:
    explicit InsufficientStatistics(const std::string& what) : std::runtime_error(what) {}
};

enum class Direction { Forward, Backward };

/// One spacetime sample with its RNG lineage. (master_seed, path_index,
/// step) fully determine the noise, so a path can be reproduced bit-exactly.
struct PathState {
    FourVector x = FourVector::Zero();
    double tau = 0.0;
    std::uint64_t master_seed = 0;
    std::uint32_t path_index = 0;
    std::uint64_t step = 0;
    bool alive = true;
};

/// dW with independent N(0, dtau) components, drawn from the path stream.
FourVector wiener_increment4(CounterRng& rng, std::uint64_t step, double dtau);

/// Euler-Maruyama forward step: x += V+(x) dtau + lambda dW+, tau += dtau.
PathState step_forward(const PathState& s, const VelocityModel& field, double lambda,
                       double dtau, CounterRng& rng);
/// Backward branch: x -= V-(x) dtau + lambda dW-, tau -= dtau (terminal-value
/// convention; the tau loop runs toward smaller tau).
PathState step_backward(const PathState& s, const VelocityModel& field, double lambda,
                        double dtau, CounterRng& rng);

struct InitialDistribution {
    enum class Kind { Point, GaussianIso, Box } kind = Kind::Point;
    FourVector center = FourVector::Zero();
    double sigma = 0.0;          ///< GaussianIso: spatial isotropic width (x1..x3)
    double sigma_t = 0.0;        ///< GaussianIso: width of the x0 component
    FourVector box_lo = FourVector::Zero(), box_hi = FourVector::Zero();
    FourVector sample(CounterRng& rng) const;
};

/// N trajectories on a shared snapshot grid; storage is path-major
/// (index p*K + k). Rejected paths freeze and drop out of later snapshots.
struct PathEnsemble {
    std::vector<double> tau;          ///< snapshot times, size K
    std::size_t n_paths = 0;
    std::vector<FourVector> pos;      ///< size n_paths * K
    std::vector<std::uint8_t> alive;  ///< size n_paths * K
    std::uint64_t master_seed = 0;
    double lambda = 0.0;
    double dtau = 0.0;                ///< integration substep

    std::size_t n_snapshots() const { return tau.size(); }
    const FourVector& at(std::size_t path, std::size_t k) const {
        return pos[path * tau.size() + k];
    }
    bool alive_at(std::size_t path, std::size_t k) const {
        return alive[path * tau.size() + k] != 0;
    }
    std::size_t alive_count(std::size_t k) const;
    /// Ensemble mean of x^mu over alive paths at snapshot k.
    FourVector mean_position(std::size_t k) const;
    /// Standard error of each component of the mean.
    FourVector mean_position_se(std::size_t k) const;
    /// Mean and SE of f(x) over alive paths at snapshot k.
    stats::MeanSE expectation(std::size_t k,
                              const std::function<double(const FourVector&)>& f) const;
};

struct EnsembleConfig {
    std::vector<double> tau_grid;     ///< strictly monotone snapshot times
    std::size_t n_paths = 0;
    std::uint64_t master_seed = 0;
    Direction direction = Direction::Forward;
    double dtau = 1e-3;               ///< integration substep (positive)
    unsigned n_workers = 1;           ///< results do not depend on this
};

/// Sample N paths of d x = V(+/-) dtau + lambda dW. Deterministic under
/// (master_seed, N, grid, dtau) for any worker count.
PathEnsemble sample_ensemble(const InitialDistribution& initial, const VelocityModel& field,
                             double lambda, const EnsembleConfig& cfg);

// ---------------------------------------------------------------------------
// 1D Nelson process (the nonrelativistic test bed)

/// One Euler-Maruyama step of dx = v_pm(x,t) dt + lambda0 dw_pm.
/// Forward uses v+ = v + u, backward v- = v - u with t decreasing.
std::pair<double, double> nelson1d_step(double x, double t, const WaveFunction& wf,
                                        const PhysicalParams& params, double dt,
                                        CounterRng& rng, std::uint64_t step, Direction dir);

struct Nelson1DEnsemble {
    std::vector<double> t;        ///< snapshot times
    std::size_t n_paths = 0;
    std::vector<double> x;        ///< path-major, size n_paths * K
    std::vector<std::uint8_t> alive;
    double sample(std::size_t p, std::size_t k) const { return x[p * t.size() + k]; }
    bool alive_at(std::size_t p, std::size_t k) const { return alive[p * t.size() + k] != 0; }
    std::vector<double> alive_samples(std::size_t k) const;
};

struct Nelson1DConfig {
    std::vector<double> t_grid;
    std::size_t n_paths = 0;
    std::uint64_t master_seed = 0;
    Direction direction = Direction::Forward;
    double dt = 1e-3;
    unsigned n_workers = 1;
    double x0_center = 0.0;       ///< initial Gaussian center
    double x0_sigma = 0.0;        ///< 0 means a point start
};

Nelson1DEnsemble sample_nelson1d(const WaveFunction& wf, const PhysicalParams& params,
                                 const Nelson1DConfig& cfg);

}  // namespace srr
