#include "qelast/sim/state_vector.hpp"

#include <cmath>

#include "qelast/error.hpp"

namespace qelast {

namespace {

struct Mat2 {
    cplx a, b, c, d; // [[a, b], [c, d]]
};

Mat2 matrix_of(GateKind kind, double angle) {
    const double s2 = 1.0 / std::sqrt(2.0);
    switch (kind) {
    case GateKind::H: return {s2, s2, s2, -s2};
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Y: return {0.0, cplx(0, -1), cplx(0, 1), 0.0};
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::RY: {
        const double c = std::cos(angle / 2), s = std::sin(angle / 2);
        return {c, -s, s, c};
    }
    case GateKind::RZ:
        return {std::polar(1.0, -angle / 2), 0.0, 0.0, std::polar(1.0, angle / 2)};
    case GateKind::P: return {1.0, 0.0, 0.0, std::polar(1.0, angle)};
    case GateKind::SWAP: break;
    }
    fail(ErrorKind::invalid_argument, "no 2x2 matrix for swap");
}

inline std::size_t insert_zero(std::size_t k, int bit) {
    const std::size_t low = k & ((std::size_t{1} << bit) - 1);
    return ((k >> bit) << (bit + 1)) | low;
}

} // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    require(num_qubits >= 0 && num_qubits < 31, ErrorKind::invalid_argument,
            "unsupported qubit count");
    amps_.assign(std::size_t{1} << num_qubits, 0.0);
    amps_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<cplx> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
    require(num_qubits >= 0 && num_qubits < 31 && amps_.size() == (std::size_t{1} << num_qubits),
            ErrorKind::dimension_mismatch, "amplitude count is not 2^q");
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto &a : amps_)
        s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::apply(const GateOp &op) {
    std::size_t cmask = 0;
    for (int c : op.controls) {
        require(c >= 0 && c < num_qubits_, ErrorKind::qubit_out_of_range, "control out of range");
        cmask |= std::size_t{1} << c;
    }
    for (int t : op.targets)
        require(t >= 0 && t < num_qubits_, ErrorKind::qubit_out_of_range, "target out of range");
    const std::size_t dim = amps_.size();

    if (op.kind == GateKind::SWAP) {
        const std::size_t ma = std::size_t{1} << op.targets[0];
        const std::size_t mb = std::size_t{1} << op.targets[1];
        for (std::size_t i = 0; i < dim; ++i)
            if ((i & ma) && !(i & mb) && (i & cmask) == cmask)
                std::swap(amps_[i], amps_[i ^ ma ^ mb]);
        return;
    }

    const int t = op.targets[0];
    const std::size_t tm = std::size_t{1} << t;
    const Mat2 m = matrix_of(op.kind, op.angle);
    const std::size_t half = dim >> 1;
    if (op.kind == GateKind::X) {
        for (std::size_t k = 0; k < half; ++k) {
            const std::size_t i0 = insert_zero(k, t);
            if ((i0 & cmask) == cmask)
                std::swap(amps_[i0], amps_[i0 | tm]);
        }
        return;
    }
    if (op.kind == GateKind::Z || op.kind == GateKind::P) {
        for (std::size_t k = 0; k < half; ++k) {
            const std::size_t i1 = insert_zero(k, t) | tm;
            if ((i1 & cmask) == cmask)
                amps_[i1] *= m.d;
        }
        return;
    }
    for (std::size_t k = 0; k < half; ++k) {
        const std::size_t i0 = insert_zero(k, t);
        if ((i0 & cmask) != cmask)
            continue;
        const std::size_t i1 = i0 | tm;
        const cplx a0 = amps_[i0], a1 = amps_[i1];
        amps_[i0] = m.a * a0 + m.b * a1;
        amps_[i1] = m.c * a0 + m.d * a1;
    }
}

void StateVector::apply(const Circuit &c) {
    require(c.num_qubits == num_qubits_, ErrorKind::dimension_mismatch,
            "circuit has " + std::to_string(c.num_qubits) + " qubits, state has " +
                std::to_string(num_qubits_));
    for (const auto &op : c.ops)
        apply(op);
}

double StateVector::z_expectation(int qubit) const {
    require(qubit >= 0 && qubit < num_qubits_, ErrorKind::qubit_out_of_range,
            "ancilla out of range");
    const std::size_t m = std::size_t{1} << qubit;
    double e = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        e += (i & m) ? -std::norm(amps_[i]) : std::norm(amps_[i]);
    return e;
}

StateVector apply_circuit(StateVector state, const Circuit &circuit) {
    state.apply(circuit);
    return state;
}

double hadamard_ancilla_expectation(const Circuit &circuit, int ancilla) {
    require(ancilla >= 0 && ancilla < circuit.num_qubits, ErrorKind::qubit_out_of_range,
            "ancilla out of range");
    StateVector s(circuit.num_qubits);
    s.apply(circuit);
    return s.z_expectation(ancilla);
}

std::pair<StateVector, double> postselect(const StateVector &state,
                                          const std::vector<int> &qubits) {
    std::size_t mask = 0;
    for (int q : qubits) {
        require(q >= 0 && q < state.num_qubits(), ErrorKind::qubit_out_of_range,
                "postselected qubit out of range");
        const std::size_t b = std::size_t{1} << q;
        require(!(mask & b), ErrorKind::invalid_argument, "postselected qubits repeat");
        mask |= b;
    }
    std::vector<cplx> out(state.size(), 0.0);
    double p = 0.0;
    const auto &a = state.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(i & mask)) {
            out[i] = a[i];
            p += std::norm(a[i]);
        }
    if (p < kPostselectThreshold)
        fail(ErrorKind::postselection_failure, "postselected branch has zero probability");
    const double s = 1.0 / std::sqrt(p);
    for (auto &x : out)
        x *= s;
    return {StateVector(state.num_qubits(), std::move(out)), p};
}

} // namespace qelast
