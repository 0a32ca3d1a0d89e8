#pragma once

#include <functional>
#include <vector>

#include "qelast/driver/bfgs.hpp"
#include "qelast/energy/model.hpp"

namespace qelast {

// Closed-form H, adaptive quadrature for u.
class AnalyticSolution {
  public:
    AnalyticSolution(double mu, Polynomial body_force, double traction, double u_bar,
                     double length);

    double H(double X) const;
    double stretch(double X) const; // lambda = (H + sqrt(H^2 + 4)) / 2
    double du(double X) const { return stretch(X) - 1.0; }
    double u(double X) const;
    // First Piola-Kirchhoff stress mu (lambda - 1/lambda).
    double stress(double X) const;
    double length() const { return length_; }
    double max_slope(int samples = 2001) const;

  private:
    double mu_;
    Polynomial B_int_; // antiderivative of B
    double traction_, u_bar_, length_;
};

AnalyticSolution analytic_solution(double mu, const BoundaryData &bc, double length);

// dP/dX + B by a five-point stencil on the stress.
double strong_form_residual(const AnalyticSolution &s, const Polynomial &B, double X,
                            double step = 1e-3);

struct ClassicalMinimum {
    std::vector<double> u; // nodal, u[0] = u_bar
    std::vector<double> y; // penalty scheme only
    double energy = 0.0;
    double grad_norm = 0.0;
    bool converged = false;
};

// BFGS on nodal DoFs with the analytic gradient of classical_energy.
ClassicalMinimum classical_minimize(const EnergyModel &m, const std::vector<double> &u0,
                                    const std::vector<double> &y0 = {});
// Same for the exact (logarithmic) energy.
ClassicalMinimum exact_minimize(const Mesh1D &mesh, const BoundaryData &bc, double mu,
                                const std::vector<double> &u0);

struct HessianCheck {
    bool positive_definite = false;
    double min_eigenvalue = 0.0;
};

// Central differences of an analytic gradient, symmetrized.
HessianCheck hessian_check(const std::function<std::vector<double>(const std::vector<double> &)> &grad,
                           const std::vector<double> &x, double step = 1e-5);
// Exact discrete energy at nodal u; throws inadmissible if 1 + u' <= 0.
HessianCheck hessian_pd_check(const Mesh1D &mesh, const BoundaryData &bc, double mu,
                              const std::vector<double> &u);
// Approximated energy of a model (u only; penalty models use y as given).
HessianCheck hessian_pd_check(const EnergyModel &m, const std::vector<double> &u,
                              const std::vector<double> &y = {});

} // namespace qelast
