#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qelast/fem/mesh.hpp"
#include "qelast/primitives/qnpu.hpp"
#include "qelast/stateprep/fit.hpp"

namespace qelast {

enum class Scheme { taylor_direct, iht_penalty, blockenc_1st, blockenc_2nd };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string &s);

// Physical value X = spec.coefficient * lambda0^u_power * theta0^y_power * E,
// where E is the unit-state expectation of spec.
struct ModelTerm {
    TermSpec spec;
    int u_power = 0;
    int y_power = 0;
};

// coefficient * prod X_t^p over (t, p) factors.
struct Monomial {
    double coefficient = 0.0;
    std::vector<std::pair<int, int>> factors;
};

struct EnergyModel {
    Scheme scheme = Scheme::taylor_direct;
    int taylor_order = 3;
    double penalty = 0.0;
    double mu = 1.0;
    Mesh1D mesh = Mesh1D::uniform(1, 1, 1.0);
    BoundaryData bc;
    int d = 2; // ansatz depth of the variational registers

    std::vector<ModelTerm> terms;
    std::vector<Monomial> monomials;
    double constant = 0.0;

    bool has_y() const { return scheme == Scheme::iht_penalty; }
    // Taylor-type energies are only meaningful for |u'| < 1.
    bool needs_slope_bound() const { return scheme != Scheme::iht_penalty; }
    int n() const { return mesh.n(); }
};

struct AssemblyOptions {
    int d = 2;
    bool fit_states = true; // false: fixed states keep zero angles (structure only)
    FitOptions fit = [] {
        FitOptions f;
        f.tol = 1e-12;
        f.relative = true;
        return f;
    }();
    StateCache *cache = nullptr;
};

EnergyModel assemble_taylor_direct(const Mesh1D &mesh, int taylor_order, const BoundaryData &bc,
                                   double mu, const AssemblyOptions &opt = {});
EnergyModel assemble_iht_penalty(const Mesh1D &mesh, double penalty, const BoundaryData &bc,
                                 double mu, const AssemblyOptions &opt = {});
EnergyModel assemble_blockenc(const Mesh1D &mesh, int taylor_order, const BoundaryData &bc,
                              double mu, const AssemblyOptions &opt = {});

// Expectation values of every term, in model order.
std::vector<ExpectationResult> evaluate_terms(const EnergyModel &m, const ControlParams &u,
                                              const ControlParams *y, Backend backend,
                                              AdderKind adder = AdderKind::mcx_cascade);

double combine_terms(const EnergyModel &m, const std::vector<double> &expectations,
                     const ControlParams &u, const ControlParams *y);

double quantum_cost(const EnergyModel &m, const ControlParams &u, const ControlParams *y = nullptr,
                    Backend backend = Backend::algebraic,
                    AdderKind adder = AdderKind::mcx_cascade);

// Direct element-wise evaluation of the discretized energy from the nodal
// vector u (length N_q + 1, u[0] is the Dirichlet value) and, for the
// penalty scheme, the element field y. Optional gradients are with respect
// to u[1..] and y.
double classical_energy(const EnergyModel &m, const std::vector<double> &u,
                        const std::vector<double> &y = {}, std::vector<double> *grad_u = nullptr,
                        std::vector<double> *grad_y = nullptr);

// Same discretization with the true logarithm; +inf when 1 + u' <= 0 somewhere.
double exact_energy(const Mesh1D &mesh, const BoundaryData &bc, double mu,
                    const std::vector<double> &u, std::vector<double> *grad_u = nullptr);

// u' at the two Gauss points of every element.
std::vector<double> gauss_slopes(const Mesh1D &mesh, const std::vector<double> &u);

// Distinct circuits (first term of every structure class).
std::vector<const ModelTerm *> distinct_circuits(const EnergyModel &m);
int max_circuit_width(const EnergyModel &m, AdderKind adder = AdderKind::mcx_cascade);

} // namespace qelast
