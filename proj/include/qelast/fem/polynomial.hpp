#pragma once

#include <vector>

namespace qelast {

// c[0] + c[1] X + c[2] X^2 + ...
struct Polynomial {
    std::vector<double> c;

    double operator()(double x) const;
    Polynomial antiderivative() const; // zero constant term
    Polynomial derivative() const;
    bool is_zero() const;
};

} // namespace qelast
