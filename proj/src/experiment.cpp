#include "qelast/experiment.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qelast/error.hpp"
#include "qelast/primitives/qnpu.hpp"
#include "qelast/sim/resources.hpp"

namespace qelast {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::vector<double> kRobustOrder1 = {0.25, 0.25, 0.1, 0.1, 0.05, 0.05, 0.1, 0.1};
const std::vector<double> kRobustOrder2 = {0.5, 0.2, 0.1, 0.2};

std::string num(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string backend_name(const ExperimentConfig &c) {
    return c.check_backends ? "both" : to_string(c.backend);
}

void check_keys(const json &j, const std::set<std::string> &allowed, const std::string &where) {
    require(j.is_object(), ErrorKind::config, where + " must be an object");
    for (const auto &[k, v] : j.items())
        require(allowed.count(k) > 0, ErrorKind::config, "unknown key '" + k + "' in " + where);
}

template <class T> void take(const json &j, const char *key, T &out) {
    if (!j.contains(key))
        return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception &) {
        fail(ErrorKind::config, std::string("bad value for '") + key + "'");
    }
}

OptimizerConfig optimizer_from(const json &j) {
    check_keys(j,
               {"fd_step", "stop_single", "stop_triple", "grad_tol", "cost_rule",
                "max_iterations", "wolfe_c1", "wolfe_c2"},
               "optimizer");
    OptimizerConfig o;
    take(j, "fd_step", o.fd_step);
    take(j, "stop_single", o.stop_single);
    take(j, "stop_triple", o.stop_triple);
    take(j, "grad_tol", o.grad_tol);
    take(j, "cost_rule", o.cost_rule);
    take(j, "max_iterations", o.max_iterations);
    take(j, "wolfe_c1", o.wolfe_c1);
    take(j, "wolfe_c2", o.wolfe_c2);
    return o;
}

json to_json(const ExperimentConfig &c) {
    const auto &o = c.optimizer;
    return json{{"label", c.label},
                {"scheme", to_string(c.scheme)},
                {"taylor_order", c.taylor_order},
                {"n", c.n},
                {"d", c.d},
                {"mesh_order", c.mesh_order},
                {"length", c.length},
                {"element_lengths", c.element_lengths},
                {"mu", c.mu},
                {"body_force", c.body_force},
                {"traction", c.traction},
                {"u_bar", c.u_bar},
                {"penalty", c.penalty},
                {"optimizer",
                 {{"fd_step", o.fd_step},
                  {"stop_single", o.stop_single},
                  {"stop_triple", o.stop_triple},
                  {"grad_tol", o.grad_tol},
                  {"cost_rule", o.cost_rule},
                  {"max_iterations", o.max_iterations},
                  {"wolfe_c1", o.wolfe_c1},
                  {"wolfe_c2", o.wolfe_c2}}},
                {"runs", c.runs},
                {"attempts", c.attempts},
                {"seed", c.seed},
                {"init_bound", c.init_bound},
                {"backend", backend_name(c)}};
}

ExperimentConfig from_json(const json &j) {
    check_keys(j,
               {"label", "scheme", "taylor_order", "n", "d", "mesh_order", "length",
                "element_lengths", "mu", "body_force", "traction", "u_bar", "penalty", "optimizer",
                "runs", "attempts", "seed", "init_bound", "backend"},
               "experiment");
    ExperimentConfig c;
    std::string scheme = to_string(c.scheme), backend = backend_name(c);
    take(j, "label", c.label);
    take(j, "scheme", scheme);
    take(j, "taylor_order", c.taylor_order);
    take(j, "n", c.n);
    take(j, "d", c.d);
    take(j, "mesh_order", c.mesh_order);
    take(j, "length", c.length);
    take(j, "element_lengths", c.element_lengths);
    take(j, "mu", c.mu);
    take(j, "body_force", c.body_force);
    take(j, "traction", c.traction);
    take(j, "u_bar", c.u_bar);
    take(j, "penalty", c.penalty);
    take(j, "runs", c.runs);
    take(j, "attempts", c.attempts);
    take(j, "seed", c.seed);
    take(j, "init_bound", c.init_bound);
    take(j, "backend", backend);
    if (j.contains("optimizer"))
        c.optimizer = optimizer_from(j.at("optimizer"));
    c.scheme = scheme_from_string(scheme);
    c.set_backend(backend);
    c.validate();
    return c;
}

ExperimentConfig ex1_base(const std::string &label) {
    ExperimentConfig c;
    c.label = label;
    c.body_force = {0.0, 1.5};
    return c;
}

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    return out;
}

double parse_num(const std::string &s) {
    double v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    require(r.ec == std::errc() && r.ptr == s.data() + s.size(), ErrorKind::config,
            "not a number: '" + s + "'");
    return v;
}

std::ofstream open_out(const fs::path &p) {
    std::ofstream f(p);
    require(f.good(), ErrorKind::config, "cannot write " + p.string());
    return f;
}

void aggregate_header(std::ostream &os) {
    os << "label,scheme,taylor_order,n,d,mesh_order,attempts,successes,success_ratio,complete,"
          "taylor_invalid,best_cost,reference_cost,E_L2_pct_mean,E_L2_pct_std,E_maxgrad_mean,"
          "E_maxgrad_std,E_trace_mean,E_trace_std,evaluations_mean,evaluations_std,cost_mean,"
          "cost_std\n";
}

void aggregate_row(std::ostream &os, const ExperimentConfig &c, const BatchResult &b,
                   double reference_cost) {
    os << c.label << ',' << to_string(c.scheme) << ',' << c.taylor_order << ',' << c.n << ','
       << c.d << ',' << c.mesh_order << ',' << b.runs.size() << ',' << b.successes << ','
       << num(b.success_ratio) << ',' << int(b.complete) << ',' << int(b.taylor_invalid) << ','
       << num(b.best_cost) << ',' << num(reference_cost);
    for (const Stat &s : {b.e_l2, b.e_maxgrad, b.e_trace, b.evaluations, b.cost})
        os << ',' << num(s.mean) << ',' << num(s.std);
    os << '\n';
}

} // namespace

Mesh1D ExperimentConfig::mesh() const {
    if (element_lengths.empty())
        return Mesh1D::uniform(n, mesh_order, length);
    return Mesh1D(n, mesh_order, element_lengths);
}

BoundaryData ExperimentConfig::boundary() const {
    BoundaryData bc;
    bc.u_bar = u_bar;
    bc.traction = traction;
    bc.body_force.c = body_force;
    return bc;
}

VqaOptions ExperimentConfig::vqa_options() const {
    VqaOptions o;
    o.optimizer = optimizer;
    o.backend = backend;
    o.check_backends = check_backends;
    o.init_bound = init_bound;
    o.seed = seed;
    o.runs = runs;
    o.attempts = attempts;
    return o;
}

void ExperimentConfig::set_backend(const std::string &s) {
    require(s == "algebraic" || s == "circuit" || s == "both", ErrorKind::config,
            "unknown backend " + s);
    backend = s == "circuit" ? Backend::circuit : Backend::algebraic;
    check_backends = s == "both";
}

void ExperimentConfig::validate() const {
    require(!label.empty() && label.find_first_of(",/\\ ") == std::string::npos,
            ErrorKind::config, "label must be non-empty without commas, slashes or spaces");
    require(n >= 1 && n <= 12, ErrorKind::config, "n must be in 1..12");
    require(d >= 0, ErrorKind::config, "d must be non-negative");
    require(mu > 0, ErrorKind::config, "mu must be positive");
    require(runs > 0, ErrorKind::config, "runs must be positive");
    require(attempts >= 0, ErrorKind::config, "attempts must be non-negative");
    require(init_bound > 0 && init_bound < 1, ErrorKind::config, "init_bound must be in (0, 1)");
    switch (scheme) {
    case Scheme::taylor_direct:
        require(taylor_order >= 3 && taylor_order <= 5, ErrorKind::config,
                "taylor_order must be 3, 4 or 5");
        require(mesh_order == 1, ErrorKind::config, "taylor_direct needs mesh_order 1");
        break;
    case Scheme::iht_penalty:
        require(mesh_order == 1, ErrorKind::config, "iht_penalty needs mesh_order 1");
        require(penalty > 0, ErrorKind::config, "penalty must be positive");
        break;
    case Scheme::blockenc_1st:
    case Scheme::blockenc_2nd:
        require(taylor_order == 3, ErrorKind::config,
                "block-encoding schemes support taylor_order 3 only");
        require(mesh_order == (scheme == Scheme::blockenc_1st ? 1 : 2), ErrorKind::config,
                "blockenc_1st needs mesh_order 1, blockenc_2nd mesh_order 2");
        break;
    }
    optimizer.validate();
    if (!element_lengths.empty()) {
        double sum = 0;
        for (double h : element_lengths)
            sum += h;
        require(std::abs(sum - length) <= 1e-9 * length, ErrorKind::config,
                "element_lengths must sum to length");
    }
    (void)mesh(); // throws on a wrong element count
}

ExperimentConfig config_from_json(const std::string &text) {
    const json j = json::parse(text, nullptr, false);
    require(!j.is_discarded(), ErrorKind::config, "invalid JSON");
    return from_json(j);
}

std::string config_to_json(const ExperimentConfig &c) { return to_json(c).dump(2); }

std::vector<ExperimentConfig> load_configs(const std::string &path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::config, "cannot read " + path);
    const json j = json::parse(in, nullptr, false);
    require(!j.is_discarded(), ErrorKind::config, "invalid JSON in " + path);
    std::vector<ExperimentConfig> out;
    if (j.is_object() && j.contains("experiments")) {
        check_keys(j, {"experiments"}, "file");
        require(j.at("experiments").is_array(), ErrorKind::config, "experiments must be a list");
        for (const auto &e : j.at("experiments"))
            out.push_back(from_json(e));
    } else {
        out.push_back(from_json(j));
    }
    std::set<std::string> labels;
    for (const auto &c : out)
        require(labels.insert(c.label).second, ErrorKind::config, "duplicate label " + c.label);
    return out;
}

bool is_recipe(const std::string &name) {
    return name == "ex1" || name == "kappa_sweep" || name == "scaling" || name == "robustness";
}

std::vector<ExperimentConfig> recipe(const std::string &name) {
    std::vector<ExperimentConfig> out;
    if (name == "ex1") {
        for (int k : {3, 4, 5}) {
            auto c = ex1_base("T" + std::to_string(k));
            c.taylor_order = k;
            out.push_back(c);
        }
        auto p = ex1_base("P3");
        p.scheme = Scheme::iht_penalty;
        out.push_back(p);
    } else if (name == "kappa_sweep") {
        for (double kappa : {1.0, 1.5, 2.0, 2.5, 3.0})
            for (int k : {3, 4}) {
                std::ostringstream l;
                l << 'T' << k << "_k" << std::fixed;
                l.precision(1);
                l << kappa;
                auto c = ex1_base(l.str());
                c.taylor_order = k;
                c.body_force = {0.0, kappa};
                c.attempts = 50;
                out.push_back(c);
            }
    } else if (name == "scaling") {
        for (auto [n, d] : {std::pair{3, 2}, {3, 4}, {4, 4}, {4, 6}, {5, 6}, {5, 8}}) {
            auto c = ex1_base("T3_n" + std::to_string(n) + "_d" + std::to_string(d));
            c.n = n;
            c.d = d;
            out.push_back(c);
        }
    } else if (name == "robustness") {
        auto base = [](const std::string &label) {
            ExperimentConfig c;
            c.label = label;
            c.body_force = {0.0, 0.0, 5.0};
            c.traction = -0.8;
            c.u_bar = 0.1;
            c.element_lengths = kRobustOrder1;
            return c;
        };
        auto be1 = base("BE1");
        be1.scheme = Scheme::blockenc_1st;
        auto d1 = base("D1");
        auto be2 = base("BE2");
        be2.scheme = Scheme::blockenc_2nd;
        be2.mesh_order = 2;
        be2.element_lengths = kRobustOrder2;
        out = {be1, d1, be2};
    } else {
        fail(ErrorKind::config, "unknown recipe " + name);
    }
    for (const auto &c : out)
        c.validate();
    return out;
}

EnergyModel build_model(const ExperimentConfig &c, StateCache *cache, bool fit_states) {
    c.validate();
    AssemblyOptions ao;
    ao.d = c.d;
    ao.cache = cache;
    ao.fit_states = fit_states;
    const Mesh1D mesh = c.mesh();
    const BoundaryData bc = c.boundary();
    switch (c.scheme) {
    case Scheme::taylor_direct: return assemble_taylor_direct(mesh, c.taylor_order, bc, c.mu, ao);
    case Scheme::iht_penalty: return assemble_iht_penalty(mesh, c.penalty, bc, c.mu, ao);
    default: return assemble_blockenc(mesh, c.taylor_order, bc, c.mu, ao);
    }
}

ExperimentOutput run_experiment(const ExperimentConfig &c, StateCache *cache) {
    ExperimentOutput out;
    out.config = c;
    const EnergyModel m = build_model(c, cache);
    out.reference = make_reference(m);
    out.batch = run_batch(m, out.reference, c.vqa_options());
    if (!out.batch.complete)
        std::cerr << "warning: " << c.label << ": " << out.batch.successes << " of " << c.runs
                  << " successful runs after " << out.batch.runs.size() << " attempts\n";
    return out;
}

void write_outputs(const std::string &dir, const std::vector<ExperimentOutput> &outs) {
    fs::create_directories(dir);
    const fs::path root(dir);
    json manifest{{"schema_version", kCsvSchemaVersion}, {"experiments", json::array()}};
    auto agg = open_out(root / "aggregate.csv");
    aggregate_header(agg);
    for (const auto &o : outs) {
        const auto &c = o.config;
        const Mesh1D mesh = c.mesh();
        manifest["experiments"].push_back(to_json(c));
        const RunResult *best = o.batch.best_run >= 0 ? &o.batch.runs[o.batch.best_run] : nullptr;
        aggregate_row(agg, c, o.batch, best ? best->cl_energy : std::nan(""));

        auto runs = open_out(root / ("runs_" + c.label + ".csv"));
        runs << "attempt,success,stopped,admissible,status,cost,evaluations,iterations,"
                "min_stretch,init_fit_residual,classical_cost,classical_converged,E_L2_pct,"
                "E_maxgrad,E_trace\n";
        auto hist = open_out(root / ("history_" + c.label + ".csv"));
        hist << "attempt,iteration,cost,grad_norm,evaluations\n";
        auto nodal = open_out(root / ("nodal_" + c.label + ".csv"));
        nodal << "attempt,node,X,u\n";
        for (const auto &r : o.batch.runs) {
            runs << r.attempt << ',' << int(r.success) << ',' << int(r.stopped) << ','
                 << int(r.admissible) << ',' << r.opt.status << ',' << num(r.cost) << ','
                 << r.opt.evaluations << ',' << r.opt.history.size() - 1 << ','
                 << num(r.min_stretch) << ',' << num(r.init_fit_residual) << ','
                 << num(r.cl_energy) << ',' << int(r.cl_converged) << ','
                 << num(r.metrics.E_L2_pct) << ',' << num(r.metrics.E_maxgrad) << ','
                 << num(r.metrics.E_trace) << '\n';
            for (const auto &h : r.opt.history)
                hist << r.attempt << ',' << h.iteration << ',' << num(h.cost) << ','
                     << num(h.grad_norm) << ',' << h.evaluations << '\n';
            for (std::size_t i = 0; i < r.u_nodal.size(); ++i)
                nodal << r.attempt << ',' << i << ',' << num(mesh.nodes()[i]) << ','
                      << num(r.u_nodal[i]) << '\n';
        }

        auto prof = open_out(root / ("profiles_" + c.label + ".csv"));
        prof << "series,X,u,du\n";
        const int samples = 256;
        auto sample = [&](const std::string &series, auto &&f) {
            for (int i = 0; i < samples; ++i) {
                const double X = mesh.length() * i / (samples - 1);
                const auto [u, du] = f(X);
                prof << series << ',' << num(X) << ',' << num(u) << ',' << num(du) << '\n';
            }
        };
        if (o.reference.analytic) {
            const auto &a = *o.reference.analytic;
            sample("analytic", [&](double X) { return std::pair{a.u(X), a.du(X)}; });
        }
        if (best)
            sample("classical", [&](double X) { return interp_eval(mesh, best->u_cl, X); });
        for (const auto &r : o.batch.runs)
            if (r.success)
                sample("run" + std::to_string(r.attempt),
                       [&](double X) { return interp_eval(mesh, r.u_nodal, X); });
    }
    auto mf = open_out(root / "manifest.json");
    mf << manifest.dump(2) << '\n';
}

std::vector<ResourceRow> report_resources(const ExperimentConfig &c) {
    const EnergyModel m = build_model(c, nullptr, false);
    ControlParams u;
    u.n = c.n;
    u.d = c.d;
    u.angles.assign(ControlParams::angle_count(c.n, c.d), 0.0);
    const ControlParams y = u;
    Binding b{&u, &y};
    std::vector<ResourceRow> rows;
    for (const auto *t : distinct_circuits(m)) {
        const auto tc = build_term_circuit(t->spec, b);
        const auto rep = resource_report(tc.circuit);
        ResourceRow r;
        r.label = c.label;
        r.structure = t->spec.label;
        r.width = rep.width;
        r.depth = rep.depth;
        const auto it = rep.segment_depth.find(Segment::qnpu);
        r.qnpu_depth = it == rep.segment_depth.end() ? 0 : it->second;
        r.total_gates = rep.total_gates;
        r.two_qubit_gates = rep.two_qubit_gates;
        const auto cx = rep.gate_counts.find("cx");
        r.cx = cx == rep.gate_counts.end() ? 0 : cx->second;
        rows.push_back(r);
    }
    return rows;
}

void write_resources_csv(std::ostream &os, const std::vector<ResourceRow> &rows) {
    os << "label,circuit,width,depth,qnpu_depth,total_gates,two_qubit_gates,cx\n";
    for (const auto &r : rows) {
        std::string s = r.structure;
        for (char &ch : s)
            if (ch == ',')
                ch = ';';
        os << r.label << ',' << s << ',' << r.width << ',' << r.depth << ',' << r.qnpu_depth << ','
           << r.total_gates << ',' << r.two_qubit_gates << ',' << r.cx << '\n';
    }
}

void recompute_metrics(const std::string &dir, std::ostream &os) {
    const fs::path root(dir);
    std::ifstream mf(root / "manifest.json");
    require(mf.good(), ErrorKind::config, "no manifest.json in " + dir);
    const json manifest = json::parse(mf, nullptr, false);
    require(!manifest.is_discarded() && manifest.contains("experiments"), ErrorKind::config,
            "malformed manifest.json");
    require(manifest.value("schema_version", 0) == kCsvSchemaVersion, ErrorKind::config,
            "unsupported schema version");
    os << "label,successes,E_L2_pct_mean,E_L2_pct_std,E_maxgrad_mean,E_maxgrad_std,"
          "E_trace_mean,E_trace_std\n";
    for (const auto &e : manifest.at("experiments")) {
        const ExperimentConfig c = from_json(e);
        const EnergyModel m = build_model(c, nullptr, false);
        const Reference ref = make_reference(m);

        std::set<int> success;
        std::ifstream runs(root / ("runs_" + c.label + ".csv"));
        require(runs.good(), ErrorKind::config, "missing runs_" + c.label + ".csv");
        std::string line;
        std::getline(runs, line);
        while (std::getline(runs, line)) {
            const auto f = split_csv(line);
            require(f.size() >= 2, ErrorKind::config, "short row in runs_" + c.label + ".csv");
            if (f[1] == "1")
                success.insert(static_cast<int>(parse_num(f[0])));
        }
        std::map<int, std::vector<double>> nodal;
        std::ifstream nf(root / ("nodal_" + c.label + ".csv"));
        require(nf.good(), ErrorKind::config, "missing nodal_" + c.label + ".csv");
        std::getline(nf, line);
        while (std::getline(nf, line)) {
            const auto f = split_csv(line);
            require(f.size() == 4, ErrorKind::config, "bad row in nodal_" + c.label + ".csv");
            nodal[static_cast<int>(parse_num(f[0]))].push_back(parse_num(f[3]));
        }
        std::vector<double> l2, mg, tr;
        for (int a : success) {
            const auto it = nodal.find(a);
            require(it != nodal.end(), ErrorKind::config, "no nodal values for a successful run");
            const auto cl = classical_reference(m, it->second);
            const auto mb = compute_metrics(m.mesh, it->second, cl.u, *ref.analytic);
            l2.push_back(mb.E_L2_pct);
            mg.push_back(mb.E_maxgrad);
            tr.push_back(mb.E_trace);
        }
        os << c.label << ',' << success.size();
        for (const auto &v : {l2, mg, tr}) {
            const Stat s = stat_of(v);
            os << ',' << num(s.mean) << ',' << num(s.std);
        }
        os << '\n';
    }
}

} // namespace qelast
