#include <cmath>
#include <limits>

#include "qelast/energy/model.hpp"
#include "qelast/error.hpp"

namespace qelast {

namespace {

const double kXi[2] = {-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};

// Lagrange basis on [-1, 1] with equally spaced nodes.
void lagrange(int order, double xi, double *N, double *dN) {
    if (order == 1) {
        N[0] = (1 - xi) / 2;
        N[1] = (1 + xi) / 2;
        dN[0] = -0.5;
        dN[1] = 0.5;
    } else {
        N[0] = 0.5 * xi * (xi - 1);
        N[1] = (1 - xi) * (1 + xi);
        N[2] = 0.5 * xi * (xi + 1);
        dN[0] = xi - 0.5;
        dN[1] = -2 * xi;
        dN[2] = xi + 0.5;
    }
}

// d + d^2/2 - sum_{k=1}^{nt} (-1)^{k+1} d^k / k and its derivative.
void taylor_density(double d, int nt, double &w, double &dw) {
    w = d + d * d / 2;
    dw = 1 + d;
    double p = 1.0; // d^(k-1)
    for (int k = 1; k <= nt; ++k) {
        const double c = ((k % 2 == 1) ? -1.0 : 1.0) / k;
        dw += c * k * p;
        p *= d;
        w += c * p;
    }
}

void check_lengths(const EnergyModel &m, const std::vector<double> &u, const std::vector<double> &y) {
    require(static_cast<int>(u.size()) == m.mesh.nq() + 1, ErrorKind::dimension_mismatch,
            "nodal vector length must be N_q + 1");
    if (m.has_y())
        require(static_cast<int>(y.size()) == m.mesh.num_elements(), ErrorKind::dimension_mismatch,
                "y needs one value per element");
}

// Loads -sum_e sum_g (h/2) B(X_g) u(X_g) - P u_N, accumulated with gradient.
double loads(const Mesh1D &mesh, const BoundaryData &bc, const std::vector<double> &u,
             std::vector<double> *gu) {
    const int order = mesh.order();
    double E = 0;
    double N[3], dN[3];
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const double h = mesh.h(e), x0 = mesh.nodes()[order * e];
        for (double xi : kXi) {
            lagrange(order, xi, N, dN);
            const double X = x0 + h * (1 + xi) / 2;
            const double f = h / 2 * bc.body_force(X);
            for (int a = 0; a <= order; ++a) {
                const int i = order * e + a;
                E -= f * N[a] * u[i];
                if (gu && i > 0)
                    (*gu)[i - 1] -= f * N[a];
            }
        }
    }
    const int last = static_cast<int>(u.size()) - 1;
    E -= bc.traction * u[last];
    if (gu)
        (*gu)[last - 1] -= bc.traction;
    return E;
}

} // namespace

std::vector<double> gauss_slopes(const Mesh1D &mesh, const std::vector<double> &u) {
    const int order = mesh.order();
    std::vector<double> s;
    double N[3], dN[3];
    for (int e = 0; e < mesh.num_elements(); ++e)
        for (double xi : kXi) {
            lagrange(order, xi, N, dN);
            double d = 0;
            for (int a = 0; a <= order; ++a)
                d += dN[a] * u[order * e + a];
            s.push_back(d * 2 / mesh.h(e));
        }
    return s;
}

double classical_energy(const EnergyModel &m, const std::vector<double> &u,
                        const std::vector<double> &y, std::vector<double> *gu,
                        std::vector<double> *gy) {
    check_lengths(m, u, y);
    const Mesh1D &mesh = m.mesh;
    const int order = mesh.order();
    if (gu)
        gu->assign(u.size() - 1, 0.0);
    if (gy)
        gy->assign(y.size(), 0.0);
    double E = 0;
    double N[3], dN[3];
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const double h = mesh.h(e);
        if (m.scheme == Scheme::iht_penalty) {
            const double d = (u[e + 1] - u[e]) / h, ye = y[e], P = m.penalty, mu = m.mu;
            const double r = ye * (d + 2) - d;
            E += h * (mu * (d + d * d / 2 - 2 * ye - 2 * ye * ye * ye / 3) + P / 2 * r * r);
            const double dEd = h * (mu * (1 + d) + P * r * (ye - 1));
            const double dEy = h * (mu * (-2 - 2 * ye * ye) + P * r * (d + 2));
            if (gu) {
                if (e > 0)
                    (*gu)[e - 1] -= dEd / h;
                (*gu)[e] += dEd / h;
            }
            if (gy)
                (*gy)[e] += dEy;
            continue;
        }
        // Taylor direct on order-1 meshes has one slope per element; the
        // two-point rule reproduces h * W(d) exactly.
        for (double xi : kXi) {
            lagrange(order, xi, N, dN);
            double d = 0;
            for (int a = 0; a <= order; ++a)
                d += dN[a] * u[order * e + a] * 2 / h;
            double w, dw;
            taylor_density(d, m.taylor_order, w, dw);
            E += h / 2 * m.mu * w;
            if (gu)
                for (int a = 0; a <= order; ++a) {
                    const int i = order * e + a;
                    if (i > 0)
                        (*gu)[i - 1] += h / 2 * m.mu * dw * dN[a] * 2 / h;
                }
        }
    }
    return E + loads(mesh, m.bc, u, gu);
}

double exact_energy(const Mesh1D &mesh, const BoundaryData &bc, double mu,
                    const std::vector<double> &u, std::vector<double> *gu) {
    require(static_cast<int>(u.size()) == mesh.nq() + 1, ErrorKind::dimension_mismatch,
            "nodal vector length must be N_q + 1");
    const int order = mesh.order();
    if (gu)
        gu->assign(u.size() - 1, 0.0);
    double E = 0;
    double N[3], dN[3];
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const double h = mesh.h(e);
        for (double xi : kXi) {
            lagrange(order, xi, N, dN);
            double d = 0;
            for (int a = 0; a <= order; ++a)
                d += dN[a] * u[order * e + a] * 2 / h;
            if (1 + d <= 0)
                return std::numeric_limits<double>::infinity();
            E += h / 2 * mu * (d + d * d / 2 - std::log1p(d));
            const double dw = mu * (1 + d - 1 / (1 + d));
            if (gu)
                for (int a = 0; a <= order; ++a) {
                    const int i = order * e + a;
                    if (i > 0)
                        (*gu)[i - 1] += h / 2 * dw * dN[a] * 2 / h;
                }
        }
    }
    return E + loads(mesh, bc, u, gu);
}

} // namespace qelast
