#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "qelast/sim/circuit.hpp"
#include "qelast/sim/state_vector.hpp"

namespace testutil {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cd = std::complex<double>;

inline Eigen::Matrix2cd gate2(qelast::GateKind k, double a) {
    using qelast::GateKind;
    Eigen::Matrix2cd m;
    const cd i(0, 1);
    switch (k) {
    case GateKind::H: m << 1, 1, 1, -1; return m / std::sqrt(2.0);
    case GateKind::X: m << 0, 1, 1, 0; return m;
    case GateKind::Y: m << 0, -i, i, 0; return m;
    case GateKind::Z: m << 1, 0, 0, -1; return m;
    case GateKind::RY: m << std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2); return m;
    case GateKind::RZ: m << std::exp(-i * a / 2.0), 0, 0, std::exp(i * a / 2.0); return m;
    case GateKind::P: m << 1, 0, 0, std::exp(i * a); return m;
    default: break;
    }
    return Eigen::Matrix2cd::Identity();
}

// Dense matrix of one gate, column by column from the basis action.
inline MatrixXcd dense_gate(const qelast::GateOp &g, int q) {
    const long dim = 1L << q;
    MatrixXcd u = MatrixXcd::Zero(dim, dim);
    for (long col = 0; col < dim; ++col) {
        bool on = true;
        for (int c : g.controls)
            on = on && ((col >> c) & 1);
        if (!on) {
            u(col, col) = 1.0;
            continue;
        }
        if (g.kind == qelast::GateKind::SWAP) {
            const int a = g.targets[0], b = g.targets[1];
            long row = col;
            const long ba = (col >> a) & 1, bb = (col >> b) & 1;
            row &= ~((1L << a) | (1L << b));
            row |= (bb << a) | (ba << b);
            u(row, col) = 1.0;
            continue;
        }
        const int t = g.targets[0];
        const auto m = gate2(g.kind, g.angle);
        const long bit = (col >> t) & 1;
        const long r0 = col & ~(1L << t), r1 = col | (1L << t);
        u(r0, col) += m(0, bit);
        u(r1, col) += m(1, bit);
    }
    return u;
}

inline VectorXcd to_eigen(const qelast::StateVector &s) {
    VectorXcd v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        v(i) = s[i];
    return v;
}

// Gate-by-gate dense action on a vector.
inline VectorXcd dense_apply(const qelast::Circuit &c, VectorXcd v) {
    for (const auto &g : c.ops)
        v = dense_gate(g, c.num_qubits) * v;
    return v;
}

inline VectorXcd dense_apply(const qelast::Circuit &c, const qelast::StateVector &s) {
    return dense_apply(c, to_eigen(s));
}

inline MatrixXcd dense_circuit(const qelast::Circuit &c) {
    const long dim = 1L << c.num_qubits;
    MatrixXcd u = MatrixXcd::Identity(dim, dim);
    for (const auto &g : c.ops)
        u = dense_gate(g, c.num_qubits) * u;
    return u;
}

inline qelast::StateVector random_state(int q, std::mt19937_64 &rng) {
    std::normal_distribution<double> nd;
    std::vector<cd> a(std::size_t{1} << q);
    double s = 0;
    for (auto &x : a) {
        x = cd(nd(rng), nd(rng));
        s += std::norm(x);
    }
    for (auto &x : a)
        x /= std::sqrt(s);
    return qelast::StateVector(q, a);
}

inline std::vector<double> random_real_unit(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> nd;
    std::vector<double> v(n);
    double s = 0;
    for (auto &x : v) {
        x = nd(rng);
        s += x * x;
    }
    for (auto &x : v)
        x /= std::sqrt(s);
    return v;
}

inline std::vector<double> random_angles(std::size_t p, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    std::vector<double> a(p);
    for (auto &x : a)
        x = u(rng);
    return a;
}

inline qelast::Circuit random_circuit(int q, int gates, int max_controls, std::mt19937_64 &rng) {
    using qelast::GateKind;
    qelast::Circuit c(q);
    std::uniform_int_distribution<int> kind(0, 7);
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    for (int k = 0; k < gates; ++k) {
        std::vector<int> qs(q);
        for (int i = 0; i < q; ++i)
            qs[i] = i;
        std::shuffle(qs.begin(), qs.end(), rng);
        const auto gk = static_cast<GateKind>(kind(rng));
        const int nt = gk == GateKind::SWAP ? 2 : 1;
        const int room = q - nt;
        std::uniform_int_distribution<int> nc(0, std::min(max_controls, room));
        const int ncont = nc(rng);
        qelast::GateOp g;
        g.kind = gk;
        g.targets.assign(qs.begin(), qs.begin() + nt);
        g.controls.assign(qs.begin() + nt, qs.begin() + nt + ncont);
        g.angle = ang(rng);
        c.add(g);
    }
    return c;
}

} // namespace testutil
