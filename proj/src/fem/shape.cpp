#include "qelast/fem/shape.hpp"

#include <cmath>

#include "qelast/error.hpp"

namespace qelast {

double gauss_point(int g) {
    require(g == 0 || g == 1, ErrorKind::invalid_argument, "Gauss index must be 0 or 1");
    const double x = 1.0 / std::sqrt(3.0);
    return g == 0 ? -x : x;
}

ShapeValues shape_at(int order, double xi) {
    if (order == 1)
        return {{(1.0 - xi) / 2.0, (1.0 + xi) / 2.0}, {-0.5, 0.5}};
    if (order == 2)
        return {{xi * (xi - 1.0) / 2.0, 1.0 - xi * xi, xi * (xi + 1.0) / 2.0},
                {xi - 0.5, -2.0 * xi, xi + 0.5}};
    fail(ErrorKind::invalid_argument, "shape order must be 1 or 2");
}

ShapeValues shape_values(int order, int g) { return shape_at(order, gauss_point(g)); }

} // namespace qelast
