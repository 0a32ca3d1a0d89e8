#include "qelast/ansatz.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "qelast/error.hpp"

namespace qelast {

void ControlParams::validate() const {
    require(n >= 1 && d >= 0, ErrorKind::invalid_argument, "ansatz needs n >= 1, d >= 0");
    require(static_cast<int>(angles.size()) == angle_count(n, d), ErrorKind::invalid_argument,
            "expected " + std::to_string(angle_count(n, d)) + " angles, got " +
                std::to_string(angles.size()));
}

Circuit build_ansatz(int n, int d, const std::vector<double> &angles) {
    ControlParams{1.0, angles, n, d}.validate();
    Circuit c(n, "ansatz");
    for (int l = 0; l <= d; ++l) {
        for (int q = 0; q < n; ++q)
            c.ry(q, angles[l * n + q]);
        if (l < d)
            for (int q = 0; q + 1 < n; ++q)
                c.cx(q, q + 1);
    }
    return c;
}

Circuit controlled_ansatz(int n, int d, const std::vector<double> &angles, int control) {
    require(control >= n, ErrorKind::invalid_argument, "control overlaps the target register");
    Circuit out(control + 1, "c-ansatz");
    out.append(build_ansatz(n, d, angles), Circuit::identity_map(n), {control});
    return out;
}

namespace {

void apply_ry(std::vector<double> &s, int q, double theta) {
    const double c = std::cos(theta / 2), sn = std::sin(theta / 2);
    const std::size_t m = std::size_t{1} << q;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!(i & m)) {
            const double a0 = s[i], a1 = s[i | m];
            s[i] = c * a0 - sn * a1;
            s[i | m] = sn * a0 + c * a1;
        }
}

// CX(q, q+1) for q = 0..n-2, in order.
void apply_cx_chain(std::vector<double> &s, int n) {
    for (int q = 0; q + 1 < n; ++q) {
        const std::size_t c = std::size_t{1} << q, t = std::size_t{1} << (q + 1);
        for (std::size_t i = 0; i < s.size(); ++i)
            if ((i & c) && !(i & t))
                std::swap(s[i], s[i | t]);
    }
}

void run_layers(std::vector<double> &s, int n, int d, const std::vector<double> &angles,
                int shifted = -1) {
    for (int l = 0; l <= d; ++l) {
        for (int q = 0; q < n; ++q) {
            const int k = l * n + q;
            apply_ry(s, q, angles[k] + (k == shifted ? std::numbers::pi : 0.0));
        }
        if (l < d)
            apply_cx_chain(s, n);
    }
}

} // namespace

std::vector<double> unit_state(int n, int d, const std::vector<double> &angles) {
    ControlParams{1.0, angles, n, d}.validate();
    std::vector<double> s(std::size_t{1} << n, 0.0);
    s[0] = 1.0;
    run_layers(s, n, d, angles);
    return s;
}

std::vector<double> realize_vector(const ControlParams &p) {
    auto s = unit_state(p.n, p.d, p.angles);
    for (auto &x : s)
        x *= p.scale;
    return s;
}

std::vector<std::vector<double>> unit_state_jacobian(int n, int d,
                                                     const std::vector<double> &angles) {
    ControlParams{1.0, angles, n, d}.validate();
    // dRY(t)/dt = RY(t + pi) / 2
    std::vector<std::vector<double>> jac(angles.size());
    for (std::size_t k = 0; k < angles.size(); ++k) {
        std::vector<double> s(std::size_t{1} << n, 0.0);
        s[0] = 1.0;
        run_layers(s, n, d, angles, static_cast<int>(k));
        for (auto &x : s)
            x *= 0.5;
        jac[k] = std::move(s);
    }
    return jac;
}

} // namespace qelast
