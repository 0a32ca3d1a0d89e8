// qelast command-line driver: run, resources, fit-state, metrics.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qelast/error.hpp"
#include "qelast/experiment.hpp"
#include "qelast/stateprep/fit.hpp"

using namespace qelast;
namespace fs = std::filesystem;

namespace {

std::vector<ExperimentConfig> resolve(const std::string &what) {
    if (is_recipe(what))
        return recipe(what);
    require(fs::exists(what), ErrorKind::config, "'" + what + "' is neither a recipe nor a file");
    return load_configs(what);
}

std::vector<double> read_vector(const std::string &path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::config, "cannot read " + path);
    std::vector<double> v;
    std::string tok;
    while (in >> tok) {
        std::stringstream ss(tok);
        std::string part;
        while (std::getline(ss, part, ','))
            if (!part.empty()) {
                std::size_t used = 0;
                double x = 0;
                try {
                    x = std::stod(part, &used);
                } catch (const std::exception &) {
                    used = 0;
                }
                require(used == part.size(), ErrorKind::config, "not a number: '" + part + "'");
                v.push_back(x);
            }
    }
    return v;
}

// Writes to out_dir/name, or to stdout when no directory is given.
template <class F> void emit(const std::string &out_dir, const std::string &name, F &&write) {
    if (out_dir.empty()) {
        write(std::cout);
        return;
    }
    fs::create_directories(out_dir);
    std::ofstream f(fs::path(out_dir) / name);
    require(f.good(), ErrorKind::config, "cannot write " + (fs::path(out_dir) / name).string());
    write(f);
    std::cerr << "wrote " << (fs::path(out_dir) / name).string() << '\n';
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Variational quantum solver for 1D hyperelasticity"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::uint64_t> seed;
    std::optional<int> runs;
    std::string out_dir;
    std::string backend;
    app.add_option("--seed", seed, "Base seed of the run batch");
    app.add_option("--runs", runs, "Successful runs wanted per experiment");
    app.add_option("--out-dir", out_dir, "Directory for CSV output");
    app.add_option("--backend", backend, "Expectation backend")
        ->check(CLI::IsMember({"circuit", "algebraic", "both"}));

    std::string target;
    std::string cache_path;
    auto *run = app.add_subcommand("run", "Run a recipe (ex1, kappa_sweep, scaling, robustness) or a JSON config");
    run->add_option("target", target, "Recipe name or config file")->required();
    run->add_option("--cache", cache_path, "JSON cache of fitted auxiliary states");
    std::vector<std::string> only;
    run->add_option("--only", only, "Restrict to these experiment labels");

    std::string res_target;
    auto *res = app.add_subcommand("resources", "Per-circuit width, depth and gate counts");
    res->add_option("target", res_target, "Recipe name or config file")->required();

    std::string vec_file;
    int depth = 2;
    double tol = 1e-5;
    auto *fit = app.add_subcommand("fit-state", "Fit ansatz angles to a real vector of length 2^n");
    fit->add_option("vector-file", vec_file, "Whitespace or comma separated values")->required();
    fit->add_option("--depth", depth, "Initial ansatz depth")->check(CLI::NonNegativeNumber);
    fit->add_option("--tol", tol, "Absolute residual tolerance")->check(CLI::PositiveNumber);

    std::string run_dir;
    auto *met = app.add_subcommand("metrics", "Recompute error metrics of a run directory");
    met->add_option("run-dir", run_dir, "Output directory of a previous run")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            auto cfgs = resolve(target);
            if (!only.empty()) {
                std::vector<ExperimentConfig> keep;
                for (const auto &c : cfgs)
                    if (std::find(only.begin(), only.end(), c.label) != only.end())
                        keep.push_back(c);
                require(!keep.empty(), ErrorKind::config, "--only matched no experiment");
                cfgs = keep;
            }
            for (auto &c : cfgs) {
                if (seed)
                    c.seed = *seed;
                if (runs)
                    c.runs = *runs;
                if (!backend.empty())
                    c.set_backend(backend);
                c.validate();
            }
            std::optional<StateCache> cache;
            if (!cache_path.empty())
                cache.emplace(cache_path);
            std::vector<ExperimentOutput> outs;
            for (const auto &c : cfgs) {
                std::cerr << "running " << c.label << '\n';
                outs.push_back(run_experiment(c, cache ? &*cache : nullptr));
                const auto &b = outs.back().batch;
                std::cerr << "  " << b.successes << "/" << b.runs.size() << " successful, E_L2 "
                          << b.e_l2.mean << "%, E_trace " << b.e_trace.mean << '\n';
            }
            if (cache)
                cache->save();
            const std::string dir = out_dir.empty() ? "qelast_out" : out_dir;
            write_outputs(dir, outs);
            std::cerr << "wrote " << dir << '\n';
        } else if (*res) {
            std::vector<ResourceRow> rows;
            for (const auto &c : resolve(res_target)) {
                const auto r = report_resources(c);
                rows.insert(rows.end(), r.begin(), r.end());
            }
            emit(out_dir, "resources.csv", [&](std::ostream &os) { write_resources_csv(os, rows); });
        } else if (*fit) {
            const auto v = read_vector(vec_file);
            int n = 0;
            while ((std::size_t(1) << n) < v.size())
                ++n;
            require(n >= 1 && (std::size_t(1) << n) == v.size(), ErrorKind::config,
                    "vector length must be a power of two >= 2");
            FitOptions fo;
            fo.tol = tol;
            if (seed)
                fo.seed = *seed;
            const auto r = fit_state(v, n, depth, fo);
            emit(out_dir, "fit.csv", [&](std::ostream &os) {
                os << "parameter,value\n";
                os << "n," << r.params.n << "\nd," << r.params.d << '\n';
                os.precision(17);
                os << "scale," << r.params.scale << "\nresidual," << r.residual << '\n';
                for (std::size_t k = 0; k < r.params.angles.size(); ++k)
                    os << "angle_" << k << ',' << r.params.angles[k] << '\n';
            });
        } else if (*met) {
            emit(out_dir, "metrics.csv", [&](std::ostream &os) { recompute_metrics(run_dir, os); });
        }
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
