#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qelast/driver/bfgs.hpp"
#include "qelast/energy/model.hpp"
#include "qelast/metrics.hpp"

namespace qelast {

struct VqaOptions {
    OptimizerConfig optimizer;
    Backend backend = Backend::algebraic;
    bool check_backends = false; // evaluate both backends and require agreement
    AdderKind adder = AdderKind::mcx_cascade;
    double init_bound = 0.5;
    std::uint64_t seed = 1;
    int runs = 20;        // successful runs wanted
    int attempts = 0;     // > 0: run exactly this many attempts instead
    int max_attempt_factor = 5;
    double success_rel = 0.1; // cost within this fraction of the batch best
};

// Element slopes uniform in (-bound, bound), integrated from u_bar.
std::vector<double> random_admissible_profile(const Mesh1D &mesh, double bound, double u_bar,
                                              std::mt19937_64 &rng);
// y_e = u'_e / (u'_e + 2) per element.
std::vector<double> iht_companion(const Mesh1D &mesh, const std::vector<double> &u);

struct RunResult {
    int attempt = 0;
    ControlParams u, y;
    std::vector<double> u_nodal, y_field;
    MinimizeResult opt;
    double cost = 0.0;
    bool stopped = false;
    bool admissible = false;
    bool success = false;
    double min_stretch = 0.0; // min 1 + u' over Gauss points
    double init_fit_residual = 0.0;
    // classical minimizer of the same model from the same initial guess
    std::vector<double> u_cl;
    double cl_energy = std::numeric_limits<double>::quiet_NaN();
    bool cl_converged = false;
    MetricsBundle metrics;
};

// Cost as a function of the packed optimizer vector [lambda0, angles, (theta0, angles)].
class VqaCost {
  public:
    VqaCost(const EnergyModel &m, const VqaOptions &o) : m_(m), o_(o) {}
    double operator()(const std::vector<double> &x) const;
    std::vector<double> pack(const ControlParams &u, const ControlParams *y) const;
    void unpack(const std::vector<double> &x, ControlParams &u, ControlParams &y) const;
    int size() const;

  private:
    const EnergyModel &m_;
    const VqaOptions &o_;
};

RunResult run_vqa(const EnergyModel &m, const std::vector<double> &u_init,
                  const std::vector<double> &y_init, const VqaOptions &o);

struct Reference {
    std::optional<AnalyticSolution> analytic;
};

Reference make_reference(const EnergyModel &m);

// Initial nodal guess (and penalty companion) of attempt a, and the seed of its run.
struct InitialGuess {
    std::vector<double> u, y;
    std::uint64_t run_seed = 0;
};
InitialGuess initial_guess(const EnergyModel &m, const VqaOptions &o, int attempt);

// Classical minimum of the discrete energy nearest a nodal field (the companion
// field seeds y for the penalty scheme).
ClassicalMinimum classical_reference(const EnergyModel &m, const std::vector<double> &u_nodal);

struct Stat {
    double mean = 0.0;
    double std = 0.0;
};
Stat stat_of(const std::vector<double> &v);

struct BatchResult {
    std::vector<RunResult> runs;
    int successes = 0;
    double success_ratio = 0.0;
    double best_cost = 0.0;
    bool taylor_invalid = false; // analytic max |u'| >= 1 under a Taylor energy
    bool complete = true;        // wanted success count reached
    int best_run = -1;           // index of the lowest-cost successful run
    Stat e_l2, e_maxgrad, e_trace, evaluations, cost;
};

BatchResult run_batch(const EnergyModel &m, const Reference &ref, const VqaOptions &o);

} // namespace qelast
