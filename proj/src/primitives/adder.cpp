#include "qelast/primitives/adder.hpp"

#include <cmath>
#include <numbers>

#include "qelast/error.hpp"

namespace qelast {

void append_qft(Circuit &c, const std::vector<int> &reg, bool inverse) {
    const int n = static_cast<int>(reg.size());
    Circuit q(c.num_qubits);
    q.segment = c.segment;
    for (int j = n - 1; j >= 0; --j) {
        q.h(reg[j]);
        for (int m = j - 1; m >= 0; --m)
            q.add(GateKind::P, reg[j], std::numbers::pi / double(1 << (j - m)), {reg[m]});
    }
    for (int j = 0; j < n / 2; ++j)
        q.swap(reg[j], reg[n - 1 - j]);
    c.append(inverse ? adjoint(q) : q, Circuit::identity_map(c.num_qubits));
}

void append_shift(Circuit &c, const std::vector<int> &reg, bool inverse,
                  const std::vector<int> &controls, AdderKind kind) {
    const int n = static_cast<int>(reg.size());
    require(n >= 1, ErrorKind::invalid_argument, "adder needs n >= 1");
    if (kind == AdderKind::qft) {
        append_qft(c, reg, false);
        const double step = (inverse ? 2.0 : -2.0) * std::numbers::pi / std::ldexp(1.0, n);
        for (int b = 0; b < n; ++b)
            c.add(GateKind::P, reg[b], step * std::ldexp(1.0, b), controls);
        append_qft(c, reg, true);
        return;
    }
    // Increment cascade; the decrement conjugates it with X on every bit.
    // The conjugation cancels when the controls are off, so it stays bare.
    if (!inverse)
        for (int q : reg)
            c.x(q);
    for (int j = n - 1; j >= 1; --j) {
        std::vector<int> ctl(reg.begin(), reg.begin() + j);
        ctl.insert(ctl.end(), controls.begin(), controls.end());
        c.mcx(ctl, reg[j]);
    }
    c.add(GateKind::X, reg[0], 0.0, controls);
    if (!inverse)
        for (int q : reg)
            c.x(q);
}

Circuit adder_circuit(int n, bool inverse, AdderKind kind) {
    require(n >= 1, ErrorKind::invalid_argument, "adder needs n >= 1");
    const int pool = adder_pool_size(n, kind);
    Circuit c(n + pool, inverse ? "adder^dag" : "adder");
    c.segment = Segment::qnpu;
    for (int i = 0; i < pool; ++i)
        c.work_pool.push_back(n + i);
    append_shift(c, Circuit::identity_map(n), inverse, {}, kind);
    return c;
}

std::vector<double> shift_vector(const std::vector<double> &x, bool inverse) {
    const std::size_t n = x.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i)
        y[i] = inverse ? x[(i + n - 1) % n] : x[(i + 1) % n];
    return y;
}

} // namespace qelast
