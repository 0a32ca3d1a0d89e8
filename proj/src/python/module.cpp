#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>
#include <sstream>

#include "qelast/ansatz.hpp"
#include "qelast/blockenc.hpp"
#include "qelast/error.hpp"
#include "qelast/experiment.hpp"
#include "qelast/reference/reference.hpp"
#include "qelast/sim/state_vector.hpp"
#include "qelast/stateprep/fit.hpp"

namespace py = pybind11;
using namespace qelast;

namespace {

ControlParams params(int n, int d, double scale, std::vector<double> angles) {
    ControlParams p;
    p.n = n;
    p.d = d;
    p.scale = scale;
    p.angles = std::move(angles);
    p.validate();
    return p;
}

Backend backend_of(const std::string &s) {
    if (s == "circuit")
        return Backend::circuit;
    if (s == "algebraic")
        return Backend::algebraic;
    fail(ErrorKind::invalid_argument, "backend must be 'circuit' or 'algebraic'");
}

py::dict stat_dict(const Stat &s) { return py::dict(py::arg("mean") = s.mean, py::arg("std") = s.std); }

} // namespace

PYBIND11_MODULE(_qelast, m) {
    m.doc() = "Variational quantum solver for 1D hyperelasticity";
    py::register_exception<Error>(m, "QelastError", PyExc_ValueError);

    m.def("unit_state", &unit_state, py::arg("n"), py::arg("d"), py::arg("angles"));
    m.def(
        "realize_vector",
        [](int n, int d, double scale, std::vector<double> angles) {
            return realize_vector(params(n, d, scale, std::move(angles)));
        },
        py::arg("n"), py::arg("d"), py::arg("scale"), py::arg("angles"));
    m.def(
        "fit_state",
        [](const std::vector<double> &target, int n, int d, double tol, std::uint64_t seed) {
            FitOptions o;
            o.tol = tol;
            o.seed = seed;
            const auto r = fit_state(target, n, d, o);
            return py::dict(py::arg("scale") = r.params.scale, py::arg("angles") = r.params.angles,
                            py::arg("d") = r.params.d, py::arg("residual") = r.residual);
        },
        py::arg("target"), py::arg("n"), py::arg("d") = 2, py::arg("tol") = 1e-5,
        py::arg("seed") = 7);

    m.def(
        "blockenc_apply",
        [](const std::vector<double> &state, std::vector<double> coefficients, int n) {
            const int N = 1 << n;
            require(static_cast<int>(state.size()) == N, ErrorKind::dimension_mismatch,
                    "state must have 2^n entries");
            const BlockEncoding be = build_block_encoding(make_band(std::move(coefficients), N));
            std::vector<cplx> amps(std::size_t{1} << be.circuit.num_qubits, 0.0);
            for (int i = 0; i < N; ++i)
                amps[i] = state[i];
            const auto out = apply_circuit(StateVector(be.circuit.num_qubits, amps), be.circuit);
            auto [post, p] = postselect(out, be.encode_ancillas);
            std::vector<double> reg(N);
            for (int i = 0; i < N; ++i)
                reg[i] = post[i].real();
            return py::make_tuple(reg, p, be.subnormalization);
        },
        py::arg("state"), py::arg("coefficients"), py::arg("n"),
        "Postselected register state, success probability and subnormalization.");

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def_static("from_json", &config_from_json)
        .def("to_json", &config_to_json)
        .def_readwrite("label", &ExperimentConfig::label)
        .def_readwrite("n", &ExperimentConfig::n)
        .def_readwrite("d", &ExperimentConfig::d)
        .def_readwrite("runs", &ExperimentConfig::runs)
        .def_readwrite("attempts", &ExperimentConfig::attempts)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_property_readonly("scheme", [](const ExperimentConfig &c) { return to_string(c.scheme); })
        .def("set_backend", &ExperimentConfig::set_backend)
        .def("validate", &ExperimentConfig::validate);

    m.def("recipe", &recipe, py::arg("name"));

    py::class_<EnergyModel>(m, "EnergyModel")
        .def_property_readonly("scheme", [](const EnergyModel &e) { return to_string(e.scheme); })
        .def_property_readonly("n", &EnergyModel::n)
        .def_property_readonly("has_y", &EnergyModel::has_y)
        .def_property_readonly("num_terms", [](const EnergyModel &e) { return e.terms.size(); })
        .def_property_readonly("num_circuits",
                               [](const EnergyModel &e) { return distinct_circuits(e).size(); })
        .def_property_readonly("max_width", [](const EnergyModel &e) { return max_circuit_width(e); })
        .def(
            "quantum_cost",
            [](const EnergyModel &e, double scale, std::vector<double> angles,
               std::optional<std::pair<double, std::vector<double>>> y, const std::string &backend) {
                const auto u = params(e.n(), e.d, scale, std::move(angles));
                ControlParams yp;
                if (y)
                    yp = params(e.n(), e.d, y->first, y->second);
                return quantum_cost(e, u, y ? &yp : nullptr, backend_of(backend));
            },
            py::arg("scale"), py::arg("angles"), py::arg("y") = py::none(),
            py::arg("backend") = "algebraic")
        .def(
            "classical_energy",
            [](const EnergyModel &e, const std::vector<double> &u, const std::vector<double> &y) {
                return classical_energy(e, u, y);
            },
            py::arg("u"), py::arg("y") = std::vector<double>{})
        .def(
            "classical_minimize",
            [](const EnergyModel &e, const std::vector<double> &u0, const std::vector<double> &y0) {
                const auto r = classical_minimize(e, u0, y0);
                return py::dict(py::arg("u") = r.u, py::arg("y") = r.y, py::arg("energy") = r.energy,
                                py::arg("converged") = r.converged);
            },
            py::arg("u0"), py::arg("y0") = std::vector<double>{});

    m.def(
        "build_model",
        [](const ExperimentConfig &c, bool fit_states) { return build_model(c, nullptr, fit_states); },
        py::arg("config"), py::arg("fit_states") = true);

    m.def(
        "analytic_solution",
        [](double mu, std::vector<double> body_force, double traction, double u_bar, double length,
           const std::vector<double> &X) {
            const AnalyticSolution a(mu, Polynomial{std::move(body_force)}, traction, u_bar, length);
            std::vector<double> u, du;
            for (double x : X) {
                u.push_back(a.u(x));
                du.push_back(a.du(x));
            }
            return py::make_tuple(u, du);
        },
        py::arg("mu"), py::arg("body_force"), py::arg("traction"), py::arg("u_bar"),
        py::arg("length"), py::arg("X"));

    m.def(
        "run_experiment",
        [](const ExperimentConfig &c, const std::string &out_dir) {
            ExperimentOutput o;
            {
                py::gil_scoped_release release;
                o = run_experiment(c);
                if (!out_dir.empty())
                    write_outputs(out_dir, {o});
            }
            const auto &b = o.batch;
            return py::dict(py::arg("label") = c.label, py::arg("attempts") = b.runs.size(),
                            py::arg("successes") = b.successes,
                            py::arg("success_ratio") = b.success_ratio,
                            py::arg("complete") = b.complete,
                            py::arg("taylor_invalid") = b.taylor_invalid,
                            py::arg("best_cost") = b.best_cost,
                            py::arg("reference_cost") =
                                b.best_run >= 0 ? b.runs[b.best_run].cl_energy : std::nan(""),
                            py::arg("E_L2_pct") = stat_dict(b.e_l2),
                            py::arg("E_maxgrad") = stat_dict(b.e_maxgrad),
                            py::arg("E_trace") = stat_dict(b.e_trace),
                            py::arg("evaluations") = stat_dict(b.evaluations));
        },
        py::arg("config"), py::arg("out_dir") = "");

    m.def(
        "report_resources",
        [](const ExperimentConfig &c) {
            std::ostringstream os;
            write_resources_csv(os, report_resources(c));
            return os.str();
        },
        py::arg("config"), "Resource table as CSV text.");
}
