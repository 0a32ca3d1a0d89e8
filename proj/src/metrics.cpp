#include "qelast/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "qelast/error.hpp"

namespace qelast {

double l2_error_pct(const Mesh1D &mesh, const std::vector<double> &u, const AnalyticSolution &a,
                    bool *absolute) {
    require(static_cast<int>(u.size()) == mesh.nq() + 1, ErrorKind::dimension_mismatch,
            "nodal vector length must be N_q + 1");
    using Rule = boost::math::quadrature::gauss<double, 10>;
    double num = 0, den = 0;
    for (int e = 0; e < mesh.num_elements(); ++e) {
        auto diff2 = [&](double xi) {
            const double uh = interp_element(mesh, u, e, xi).first;
            const double ue = a.u(mesh.to_physical(e, xi));
            return (uh - ue) * (uh - ue);
        };
        auto ex2 = [&](double xi) {
            const double ue = a.u(mesh.to_physical(e, xi));
            return ue * ue;
        };
        num += mesh.h(e) / 2 * Rule::integrate(diff2, -1.0, 1.0);
        den += mesh.h(e) / 2 * Rule::integrate(ex2, -1.0, 1.0);
    }
    const bool abs_mode = den <= 0;
    if (absolute)
        *absolute = abs_mode;
    return abs_mode ? std::sqrt(num) : 100.0 * std::sqrt(num / den);
}

double max_gradient_error(const Mesh1D &mesh, const std::vector<double> &u,
                          const AnalyticSolution &a) {
    const double g = 1.0 / std::sqrt(3.0);
    double m = 0;
    for (int e = 0; e < mesh.num_elements(); ++e)
        for (double xi : {-1.0, -g, g, 1.0}) {
            const double dh = interp_element(mesh, u, e, xi).second;
            m = std::max(m, std::abs(dh - a.du(mesh.to_physical(e, xi))));
        }
    return m;
}

double trace_error(const std::vector<double> &u_vq, const std::vector<double> &u_cl) {
    require(u_vq.size() == u_cl.size(), ErrorKind::dimension_mismatch, "vector lengths differ");
    double ab = 0, aa = 0, bb = 0;
    for (std::size_t i = 1; i < u_vq.size(); ++i) {
        ab += u_vq[i] * u_cl[i];
        aa += u_vq[i] * u_vq[i];
        bb += u_cl[i] * u_cl[i];
    }
    if (aa == 0 || bb == 0)
        return aa == bb ? 0.0 : 1.0;
    const double f = ab * ab / (aa * bb);
    return std::sqrt(std::max(0.0, 1.0 - f));
}

MetricsBundle compute_metrics(const Mesh1D &mesh, const std::vector<double> &u_vq,
                              const std::vector<double> &u_cl, const AnalyticSolution &a) {
    MetricsBundle m;
    m.E_L2_pct = l2_error_pct(mesh, u_vq, a, &m.l2_absolute);
    m.E_maxgrad = max_gradient_error(mesh, u_vq, a);
    m.E_trace = trace_error(u_vq, u_cl);
    return m;
}

} // namespace qelast
