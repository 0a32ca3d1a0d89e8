#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qelast/driver/vqa.hpp"
#include "qelast/energy/model.hpp"

namespace qelast {

inline constexpr int kCsvSchemaVersion = 1;

struct ExperimentConfig {
    std::string label = "run";
    Scheme scheme = Scheme::taylor_direct;
    int taylor_order = 3;
    int n = 3;
    int d = 2;
    int mesh_order = 1;
    double length = 1.0;
    std::vector<double> element_lengths; // empty: uniform
    double mu = 1.0;
    std::vector<double> body_force;      // polynomial coefficients in X
    double traction = 0.0;
    double u_bar = 0.0;
    double penalty = 100.0;
    OptimizerConfig optimizer;
    int runs = 20;
    int attempts = 0; // > 0: fixed attempt count (success-ratio sweeps)
    std::uint64_t seed = 1;
    double init_bound = 0.5;
    Backend backend = Backend::algebraic;
    bool check_backends = false; // "both": evaluate the other backend too and compare

    Mesh1D mesh() const;
    BoundaryData boundary() const;
    VqaOptions vqa_options() const;
    void validate() const;
    // "algebraic", "circuit" or "both"
    void set_backend(const std::string &name);
};

// JSON object; unknown keys and wrong types are config errors.
ExperimentConfig config_from_json(const std::string &text);
std::string config_to_json(const ExperimentConfig &c);
// A file holds one config object or {"experiments": [...]}.
std::vector<ExperimentConfig> load_configs(const std::string &path);

// ex1, kappa_sweep, scaling, robustness.
std::vector<ExperimentConfig> recipe(const std::string &name);
bool is_recipe(const std::string &name);

EnergyModel build_model(const ExperimentConfig &c, StateCache *cache = nullptr,
                        bool fit_states = true);

struct ExperimentOutput {
    ExperimentConfig config;
    Reference reference;
    BatchResult batch;
};

ExperimentOutput run_experiment(const ExperimentConfig &c, StateCache *cache = nullptr);

// aggregate.csv, runs_<label>.csv, history_<label>.csv, nodal_<label>.csv,
// profiles_<label>.csv (256 points), manifest.json.
void write_outputs(const std::string &dir, const std::vector<ExperimentOutput> &outs);

struct ResourceRow {
    std::string label;
    std::string structure;
    int width = 0;
    int depth = 0;
    int qnpu_depth = 0; // decomposed depth of the QNPU segment alone
    long total_gates = 0;
    long two_qubit_gates = 0;
    long cx = 0;
};

// One row per distinct circuit of the model.
std::vector<ResourceRow> report_resources(const ExperimentConfig &c);
void write_resources_csv(std::ostream &os, const std::vector<ResourceRow> &rows);

// Recomputes the metrics of a run directory from its manifest and nodal
// files; writes the aggregate table to os.
void recompute_metrics(const std::string &dir, std::ostream &os);

} // namespace qelast
