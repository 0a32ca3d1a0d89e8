#pragma once

#include <vector>

#include "qelast/fem/mesh.hpp"
#include "qelast/reference/reference.hpp"

namespace qelast {

struct MetricsBundle {
    double E_L2_pct = 0.0;  // relative L2 error vs. analytic, percent
    double E_maxgrad = 0.0; // max |u_vq' - u_exact'| over element ends and Gauss points
    double E_trace = 0.0;   // sqrt(1 - <v_vq|v_cl>^2) on the interior DoF vectors
    bool l2_absolute = false; // analytic field has zero norm: plain L2 error
};

// L2 error of the FE field u against the analytic solution (10-point Gauss per element).
double l2_error_pct(const Mesh1D &mesh, const std::vector<double> &u, const AnalyticSolution &a,
                    bool *absolute = nullptr);
double max_gradient_error(const Mesh1D &mesh, const std::vector<double> &u,
                          const AnalyticSolution &a);
double trace_error(const std::vector<double> &u_vq, const std::vector<double> &u_cl);

MetricsBundle compute_metrics(const Mesh1D &mesh, const std::vector<double> &u_vq,
                              const std::vector<double> &u_cl, const AnalyticSolution &a);

} // namespace qelast
