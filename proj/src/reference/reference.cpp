#include "qelast/reference/reference.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qelast/error.hpp"

namespace qelast {

AnalyticSolution::AnalyticSolution(double mu, Polynomial body_force, double traction,
                                   double u_bar, double length)
    : mu_(mu), B_int_(body_force.antiderivative()), traction_(traction), u_bar_(u_bar),
      length_(length) {
    require(mu > 0, ErrorKind::invalid_argument, "mu must be positive");
    require(length > 0, ErrorKind::invalid_argument, "length must be positive");
}

double AnalyticSolution::H(double X) const {
    return (B_int_(length_) - B_int_(X)) / mu_ + traction_ / mu_;
}

double AnalyticSolution::stretch(double X) const {
    const double h = H(X);
    // (h + sqrt(h^2 + 4)) / 2 without cancellation for h << 0
    return h >= 0 ? (h + std::sqrt(h * h + 4)) / 2 : 2 / (std::sqrt(h * h + 4) - h);
}

double AnalyticSolution::u(double X) const {
    require(X >= -1e-12 && X <= length_ * (1 + 1e-12), ErrorKind::invalid_argument,
            "X outside [0, L]");
    if (X <= 0)
        return u_bar_;
    using boost::math::quadrature::gauss_kronrod;
    const double I = gauss_kronrod<double, 31>::integrate([this](double s) { return du(s); }, 0.0,
                                                          X, 15, 1e-14);
    return u_bar_ + I;
}

double AnalyticSolution::stress(double X) const {
    const double l = stretch(X);
    return mu_ * (l - 1 / l);
}

double AnalyticSolution::max_slope(int samples) const {
    double m = 0;
    for (int i = 0; i < samples; ++i)
        m = std::max(m, std::abs(du(length_ * i / (samples - 1))));
    return m;
}

AnalyticSolution analytic_solution(double mu, const BoundaryData &bc, double length) {
    return AnalyticSolution(mu, bc.body_force, bc.traction, bc.u_bar, length);
}

double strong_form_residual(const AnalyticSolution &s, const Polynomial &B, double X,
                            double step) {
    const double L = s.length();
    // keep the stencil inside [0, L]
    double c = std::clamp(X, 2 * step, L - 2 * step);
    double dP;
    if (c == X) {
        dP = (-s.stress(X + 2 * step) + 8 * s.stress(X + step) - 8 * s.stress(X - step) +
              s.stress(X - 2 * step)) /
             (12 * step);
    } else {
        // one-sided five-point stencil at the ends
        const double sg = X < L / 2 ? 1.0 : -1.0, h = sg * step;
        dP = (-25 * s.stress(X) + 48 * s.stress(X + h) - 36 * s.stress(X + 2 * h) +
              16 * s.stress(X + 3 * h) - 3 * s.stress(X + 4 * h)) /
             (12 * h);
    }
    return dP + B(X);
}

namespace {

ClassicalMinimum run_classical(const std::function<double(const std::vector<double> &,
                                                          std::vector<double> *)> &fg,
                               std::vector<double> x0, double accept = 1e-9) {
    OptimizerConfig cfg;
    cfg.cost_rule = false;
    cfg.grad_tol = 1e-11;
    cfg.max_iterations = 20000;
    const Objective f = [&](const std::vector<double> &x) { return fg(x, nullptr); };
    const Gradient g = [&](const std::vector<double> &x, double) {
        std::vector<double> gr;
        fg(x, &gr);
        return gr;
    };
    const auto r = minimize(f, x0, cfg, g);
    ClassicalMinimum out;
    out.energy = r.f;
    std::vector<double> gr;
    fg(r.x, &gr);
    double gn = 0;
    for (double v : gr)
        gn = std::max(gn, std::abs(v));
    out.grad_norm = gn;
    out.converged = r.stopped || gn < accept;
    out.u = r.x;
    return out;
}

} // namespace

ClassicalMinimum classical_minimize(const EnergyModel &m, const std::vector<double> &u0,
                                    const std::vector<double> &y0) {
    const int N = m.mesh.nq();
    require(static_cast<int>(u0.size()) == N + 1, ErrorKind::dimension_mismatch,
            "nodal vector length must be N_q + 1");
    const double ub = m.bc.u_bar;
    const int ny = m.has_y() ? m.mesh.num_elements() : 0;
    if (m.has_y())
        require(static_cast<int>(y0.size()) == ny, ErrorKind::dimension_mismatch,
                "y needs one value per element");
    auto split = [&](const std::vector<double> &x, std::vector<double> &u, std::vector<double> &y) {
        u.assign(1, ub);
        u.insert(u.end(), x.begin(), x.begin() + N);
        y.assign(x.begin() + N, x.end());
    };
    auto fg = [&](const std::vector<double> &x, std::vector<double> *g) {
        std::vector<double> u, y, gu, gy;
        split(x, u, y);
        const double E = classical_energy(m, u, y, g ? &gu : nullptr, g ? &gy : nullptr);
        if (g) {
            *g = gu;
            g->insert(g->end(), gy.begin(), gy.end());
        }
        return E;
    };
    std::vector<double> x0(u0.begin() + 1, u0.end());
    x0.insert(x0.end(), y0.begin(), y0.end());
    // the penalty scales the roundoff floor of the gradient
    ClassicalMinimum r = run_classical(fg, x0, 1e-9 * std::max(1.0, m.penalty));
    std::vector<double> u, y;
    split(r.u, u, y);
    r.u = u;
    r.y = y;
    return r;
}

ClassicalMinimum exact_minimize(const Mesh1D &mesh, const BoundaryData &bc, double mu,
                                const std::vector<double> &u0) {
    auto fg = [&](const std::vector<double> &x, std::vector<double> *g) {
        std::vector<double> u(1, bc.u_bar);
        u.insert(u.end(), x.begin(), x.end());
        return exact_energy(mesh, bc, mu, u, g);
    };
    ClassicalMinimum r = run_classical(fg, std::vector<double>(u0.begin() + 1, u0.end()));
    r.u.insert(r.u.begin(), bc.u_bar);
    return r;
}

HessianCheck hessian_check(
    const std::function<std::vector<double>(const std::vector<double> &)> &grad,
    const std::vector<double> &x, double step) {
    const long p = static_cast<long>(x.size());
    Eigen::MatrixXd Hm(p, p);
    std::vector<double> xp = x;
    for (long i = 0; i < p; ++i) {
        const double h = step * std::max(1.0, std::abs(x[i]));
        xp[i] = x[i] + h;
        const auto gp = grad(xp);
        xp[i] = x[i] - h;
        const auto gm = grad(xp);
        xp[i] = x[i];
        for (long j = 0; j < p; ++j)
            Hm(j, i) = (gp[j] - gm[j]) / (2 * h);
    }
    const Eigen::MatrixXd S = (Hm + Hm.transpose()) / 2;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
    HessianCheck out;
    out.min_eigenvalue = es.eigenvalues().minCoeff();
    out.positive_definite = std::isfinite(out.min_eigenvalue) && out.min_eigenvalue > 0;
    return out;
}

HessianCheck hessian_pd_check(const Mesh1D &mesh, const BoundaryData &bc, double mu,
                              const std::vector<double> &u) {
    for (double d : gauss_slopes(mesh, u))
        require(1 + d > 0, ErrorKind::inadmissible, "point violates 1 + u' > 0");
    auto grad = [&](const std::vector<double> &x) {
        std::vector<double> uu(1, u[0]), g;
        uu.insert(uu.end(), x.begin(), x.end());
        exact_energy(mesh, bc, mu, uu, &g);
        return g;
    };
    return hessian_check(grad, std::vector<double>(u.begin() + 1, u.end()));
}

HessianCheck hessian_pd_check(const EnergyModel &m, const std::vector<double> &u,
                              const std::vector<double> &y) {
    auto grad = [&](const std::vector<double> &x) {
        std::vector<double> uu(1, u[0]), g;
        uu.insert(uu.end(), x.begin(), x.end());
        classical_energy(m, uu, y, &g);
        return g;
    };
    return hessian_check(grad, std::vector<double>(u.begin() + 1, u.end()));
}

} // namespace qelast
