#pragma once

#include <vector>

namespace qelast {

// Two-point Gauss rule on [-1, 1]: xi = -1/sqrt(3) for g = 0, +1/sqrt(3) for g = 1.
double gauss_point(int g);
inline constexpr double kGaussWeight = 1.0;

struct ShapeValues {
    std::vector<double> values;      // N_a(xi)
    std::vector<double> derivatives; // dN_a/dxi
};

ShapeValues shape_at(int order, double xi);
ShapeValues shape_values(int order, int g);

} // namespace qelast
