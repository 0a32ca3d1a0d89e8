#include "qelast/fem/polynomial.hpp"

namespace qelast {

double Polynomial::operator()(double x) const {
    double y = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        y = y * x + *it;
    return y;
}

Polynomial Polynomial::antiderivative() const {
    Polynomial p;
    p.c.assign(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i)
        p.c[i + 1] = c[i] / double(i + 1);
    return p;
}

Polynomial Polynomial::derivative() const {
    Polynomial p;
    for (std::size_t i = 1; i < c.size(); ++i)
        p.c.push_back(c[i] * double(i));
    return p;
}

bool Polynomial::is_zero() const {
    for (double x : c)
        if (x != 0.0)
            return false;
    return true;
}

} // namespace qelast
