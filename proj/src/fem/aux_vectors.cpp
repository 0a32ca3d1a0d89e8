#include "qelast/fem/aux_vectors.hpp"

#include <cmath>
#include <map>

#include "qelast/error.hpp"
#include "qelast/fem/shape.hpp"

namespace qelast {

namespace {

const std::map<std::string, AuxId> &aux_names() {
    static const std::map<std::string, AuxId> names = {
        {"m1", AuxId::m1}, {"m-1", AuxId::m_last}, {"m2", AuxId::m2},   {"m3", AuxId::m3},
        {"m4", AuxId::m4}, {"m5", AuxId::m5},      {"m6", AuxId::m6},   {"m7", AuxId::m7},
        {"m8", AuxId::m8}, {"m9", AuxId::m9},      {"m10", AuxId::m10}, {"h", AuxId::h},
        {"b", AuxId::b}};
    return names;
}

void require_order(const Mesh1D &mesh, int order, AuxId id) {
    require(mesh.order() == order, ErrorKind::invalid_argument,
            to_string(id) + " is defined on order-" + std::to_string(order) + " meshes only");
}

} // namespace

AuxId aux_id_from_string(const std::string &s) {
    const auto it = aux_names().find(s);
    require(it != aux_names().end(), ErrorKind::invalid_argument, "unknown aux vector " + s);
    return it->second;
}

std::string to_string(AuxId id) {
    for (const auto &[k, v] : aux_names())
        if (v == id)
            return k;
    return "?";
}

std::vector<double> pure_power_weights(const Mesh1D &mesh, int k) {
    const int N = mesh.nq();
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    std::vector<double> w(N);
    for (int i = 0; i < N; ++i) {
        w[i] = std::pow(mesh.h(i), 1 - k);
        if (i + 1 < N)
            w[i] += sgn * std::pow(mesh.h(i + 1), 1 - k);
    }
    return w;
}

std::vector<double> cross_weights(const Mesh1D &mesh, int k, bool backward) {
    const int N = mesh.nq();
    std::vector<double> w(N, 0.0);
    for (int i = 0; i < N; ++i) {
        const int e = backward ? i : i + 1;
        if (e >= 1 && e < N)
            w[i] = std::pow(mesh.h(e), 1 - k);
    }
    return w;
}

int element_band_start(const Mesh1D &mesh, int e) {
    return mesh.order() == 1 ? e - 1 : 2 * e - 1;
}

std::vector<double> blockenc_bulk_weights(const Mesh1D &mesh, int k) {
    std::vector<double> w(mesh.nq(), 0.0);
    for (int e = 1; e < mesh.num_elements(); ++e)
        w[element_band_start(mesh, e)] = std::pow(2.0 / mesh.h(e), k - 1);
    return w;
}

std::vector<double> blockenc_body_weights(const Mesh1D &mesh, const BoundaryData &bc, int g) {
    std::vector<double> w(mesh.nq(), 0.0);
    for (int e = 1; e < mesh.num_elements(); ++e)
        w[element_band_start(mesh, e)] = mesh.h(e) * bc.body_force(mesh.gauss_x(e, g)) / 2.0;
    return w;
}

std::pair<double, std::vector<double>> body_coeffs(const Mesh1D &mesh, const Polynomial &B) {
    std::vector<double> f(mesh.nq() + 1, 0.0);
    for (int e = 0; e < mesh.num_elements(); ++e)
        for (int g = 0; g < 2; ++g) {
            const ShapeValues s = shape_values(mesh.order(), g);
            const double w = mesh.h(e) / 2.0 * kGaussWeight * B(mesh.gauss_x(e, g));
            for (int a = 0; a <= mesh.order(); ++a)
                f[mesh.node(e, a)] += w * s.values[a];
        }
    return {f[0], std::vector<double>(f.begin() + 1, f.end())};
}

std::vector<double> aux_vector(AuxId id, const Mesh1D &mesh, const AuxParams &p) {
    const int N = mesh.nq();
    std::vector<double> v(N, 0.0);
    switch (id) {
    case AuxId::m1: v[0] = 1.0; return v;
    case AuxId::m_last: v[N - 1] = 1.0; return v;
    case AuxId::m2: require_order(mesh, 1, id); return pure_power_weights(mesh, 2);
    case AuxId::m3: require_order(mesh, 1, id); return cross_weights(mesh, 2, false);
    case AuxId::m4: require_order(mesh, 1, id); return pure_power_weights(mesh, 3);
    case AuxId::m5: require_order(mesh, 1, id); return cross_weights(mesh, 3, true);
    case AuxId::m6: require_order(mesh, 1, id); return cross_weights(mesh, 3, false);
    case AuxId::m7: require_order(mesh, 2, id); return blockenc_bulk_weights(mesh, p.k);
    case AuxId::m8: return blockenc_body_weights(mesh, p.bc, p.g);
    case AuxId::m9: require_order(mesh, 1, id); return cross_weights(mesh, 2, true);
    case AuxId::m10:
        for (int i = 1; i < N; ++i)
            v[i] = 1.0;
        return v;
    case AuxId::h: require_order(mesh, 1, id); return mesh.h();
    case AuxId::b: return body_coeffs(mesh, p.bc.body_force).second;
    }
    return v;
}

} // namespace qelast
