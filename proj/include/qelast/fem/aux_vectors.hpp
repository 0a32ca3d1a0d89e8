#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qelast/fem/mesh.hpp"

namespace qelast {

enum class AuxId { m1, m_last, m2, m3, m4, m5, m6, m7, m8, m9, m10, h, b };

AuxId aux_id_from_string(const std::string &s);
std::string to_string(AuxId id);

struct AuxParams {
    int k = 2;         // power for m7
    int g = 0;         // Gauss point for m8
    BoundaryData bc{}; // body force for m8, b
};

std::vector<double> aux_vector(AuxId id, const Mesh1D &mesh, const AuxParams &p = {});

// Direct-expansion weights for sum_e h_e^{1-k}(v_e - v_{e-1})^k (order 1).
std::vector<double> pure_power_weights(const Mesh1D &mesh, int k);
// Weight of v_i^a v_{i+1}^b (forward) or v_i^a v_{i-1}^b (backward).
std::vector<double> cross_weights(const Mesh1D &mesh, int k, bool backward);

// Bulk weights (2/h_e)^{k-1} of the block-encoded power k, either order.
std::vector<double> blockenc_bulk_weights(const Mesh1D &mesh, int k);
// Body weights h_e B(X_e^g) / 2 at the band start index of every element but the first.
std::vector<double> blockenc_body_weights(const Mesh1D &mesh, const BoundaryData &bc, int g);
// First index of element e >= 1 in the interior DoF vector.
int element_band_start(const Mesh1D &mesh, int e);

// b_0 and the interior load vector by 2-point quadrature.
std::pair<double, std::vector<double>> body_coeffs(const Mesh1D &mesh, const Polynomial &B);

} // namespace qelast
