#include "qelast/fem/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "qelast/error.hpp"
#include "qelast/fem/shape.hpp"

namespace qelast {

Mesh1D::Mesh1D(int n, int order, std::vector<double> element_lengths)
    : n_(n), order_(order), h_(std::move(element_lengths)) {
    require(n >= 1 && n <= 20, ErrorKind::invalid_argument, "mesh needs 1 <= n <= 20");
    require(order == 1 || order == 2, ErrorKind::invalid_argument, "order must be 1 or 2");
    const int ne = order == 1 ? (1 << n) : (1 << n) / 2;
    require(static_cast<int>(h_.size()) == ne, ErrorKind::invalid_argument,
            "expected " + std::to_string(ne) + " element lengths, got " +
                std::to_string(h_.size()));
    length_ = 0.0;
    for (double h : h_) {
        require(h > 0.0 && std::isfinite(h), ErrorKind::invalid_argument,
                "element lengths must be positive");
        length_ += h;
    }
    x_.assign((1 << n) + 1, 0.0);
    double x = 0.0;
    for (int e = 0; e < ne; ++e) {
        for (int a = 1; a <= order; ++a)
            x_[node(e, a)] = x + h_[e] * double(a) / double(order);
        x += h_[e];
        x_[node(e, order)] = x;
    }
}

Mesh1D Mesh1D::uniform(int n, int order, double length) {
    require(length > 0.0, ErrorKind::invalid_argument, "length must be positive");
    require(order == 1 || order == 2, ErrorKind::invalid_argument, "order must be 1 or 2");
    const int ne = order == 1 ? (1 << n) : (1 << n) / 2;
    return Mesh1D(n, order, std::vector<double>(ne, length / ne));
}

double Mesh1D::to_physical(int e, double xi) const {
    return element_start(e) + h_[e] * (1.0 + xi) / 2.0;
}

double Mesh1D::gauss_x(int e, int g) const { return to_physical(e, gauss_point(g)); }

int Mesh1D::element_of(double X) const {
    const double tol = 1e-12 * std::max(1.0, length_);
    require(X >= -tol && X <= length_ + tol, ErrorKind::invalid_argument,
            "X outside [0, L]");
    const int ne = num_elements();
    for (int e = 0; e < ne; ++e)
        if (X < x_[node(e, order_)])
            return e;
    return ne - 1;
}

std::pair<double, double> interp_element(const Mesh1D &m, const std::vector<double> &u, int e,
                                         double xi) {
    require(static_cast<int>(u.size()) == m.nq() + 1, ErrorKind::dimension_mismatch,
            "nodal vector must have N_q + 1 entries");
    const ShapeValues s = shape_at(m.order(), xi);
    double val = 0.0, der = 0.0;
    for (int a = 0; a <= m.order(); ++a) {
        val += s.values[a] * u[m.node(e, a)];
        der += s.derivatives[a] * u[m.node(e, a)];
    }
    return {val, der * 2.0 / m.h(e)};
}

std::pair<double, double> interp_eval(const Mesh1D &m, const std::vector<double> &u, double X) {
    const int e = m.element_of(X);
    const double xi = 2.0 * (X - m.element_start(e)) / m.h(e) - 1.0;
    return interp_element(m, u, e, std::clamp(xi, -1.0, 1.0));
}

std::vector<double> nodal_from_dofs(double u_bar, const std::vector<double> &v) {
    std::vector<double> u;
    u.reserve(v.size() + 1);
    u.push_back(u_bar);
    u.insert(u.end(), v.begin(), v.end());
    return u;
}

} // namespace qelast
