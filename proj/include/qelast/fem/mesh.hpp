#pragma once

#include <utility>
#include <vector>

#include "qelast/fem/polynomial.hpp"

namespace qelast {

struct BoundaryData {
    double u_bar = 0.0;      // u(0)
    double traction = 0.0;   // P at X = L
    Polynomial body_force;   // B(X)
};

class Mesh1D {
  public:
    Mesh1D(int n, int order, std::vector<double> element_lengths);
    static Mesh1D uniform(int n, int order, double length);

    int n() const { return n_; }
    int order() const { return order_; }
    int nq() const { return 1 << n_; }
    int num_elements() const { return static_cast<int>(h_.size()); }
    double length() const { return length_; }
    const std::vector<double> &h() const { return h_; }
    double h(int e) const { return h_[e]; }

    // Global node index of local node a of element e.
    int node(int e, int a) const { return order_ * e + a; }
    const std::vector<double> &nodes() const { return x_; }
    double element_start(int e) const { return x_[node(e, 0)]; }
    double to_physical(int e, double xi) const;
    double gauss_x(int e, int g) const;
    int element_of(double X) const;

  private:
    int n_;
    int order_;
    std::vector<double> h_;
    std::vector<double> x_;
    double length_;
};

// u(X), u'(X) from nodal values (length N_q + 1, node 0 is the Dirichlet node).
std::pair<double, double> interp_eval(const Mesh1D &m, const std::vector<double> &u, double X);
std::pair<double, double> interp_element(const Mesh1D &m, const std::vector<double> &u, int e,
                                         double xi);

// Nodal vector from the Dirichlet value and the interior DoFs v.
std::vector<double> nodal_from_dofs(double u_bar, const std::vector<double> &v);

} // namespace qelast
