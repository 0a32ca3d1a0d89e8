#include "qelast/sim/circuit.hpp"

#include <algorithm>
#include <numeric>

#include "qelast/error.hpp"

namespace qelast {

const char *gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::P: return "p";
    case GateKind::SWAP: return "swap";
    }
    return "?";
}

bool is_self_inverse(GateKind kind) {
    return kind == GateKind::H || kind == GateKind::X || kind == GateKind::Y ||
           kind == GateKind::Z || kind == GateKind::SWAP;
}

void Circuit::add(GateOp op) {
    const std::size_t nt = op.kind == GateKind::SWAP ? 2 : 1;
    require(op.targets.size() == nt, ErrorKind::invalid_argument,
            std::string("wrong target count for ") + gate_name(op.kind));
    std::vector<int> all = op.targets;
    all.insert(all.end(), op.controls.begin(), op.controls.end());
    for (int q : all)
        require(q >= 0 && q < num_qubits, ErrorKind::qubit_out_of_range,
                "qubit " + std::to_string(q) + " outside circuit of " +
                    std::to_string(num_qubits));
    std::sort(all.begin(), all.end());
    require(std::adjacent_find(all.begin(), all.end()) == all.end(),
            ErrorKind::invalid_argument, "targets and controls overlap");
    ops.push_back(std::move(op));
}

void Circuit::add(GateKind kind, int target, double angle, std::vector<int> controls) {
    GateOp op;
    op.kind = kind;
    op.targets = {target};
    op.controls = std::move(controls);
    op.angle = angle;
    op.segment = segment;
    add(std::move(op));
}

void Circuit::swap(int a, int b, std::vector<int> controls) {
    GateOp op;
    op.kind = GateKind::SWAP;
    op.targets = {a, b};
    op.controls = std::move(controls);
    op.segment = segment;
    add(std::move(op));
}

void Circuit::append(const Circuit &sub, const std::vector<int> &map,
                     const std::vector<int> &extra_controls) {
    require(static_cast<int>(map.size()) == sub.num_qubits, ErrorKind::dimension_mismatch,
            "qubit map size does not match subcircuit");
    for (const auto &op : sub.ops) {
        GateOp g = op;
        for (auto &t : g.targets)
            t = map[t];
        for (auto &c : g.controls)
            c = map[c];
        g.controls.insert(g.controls.end(), extra_controls.begin(), extra_controls.end());
        add(std::move(g));
    }
}

std::vector<int> Circuit::identity_map(int q) {
    std::vector<int> m(q);
    std::iota(m.begin(), m.end(), 0);
    return m;
}

Circuit adjoint(const Circuit &c) {
    Circuit out(c.num_qubits, c.label + "^dag");
    out.work_pool = c.work_pool;
    for (auto it = c.ops.rbegin(); it != c.ops.rend(); ++it) {
        GateOp g = *it;
        if (!is_self_inverse(g.kind))
            g.angle = -g.angle;
        out.add(std::move(g));
    }
    return out;
}

Circuit controlled(const Circuit &c, int control) {
    Circuit out(c.num_qubits, "c-" + c.label);
    out.work_pool = c.work_pool;
    out.append(c, Circuit::identity_map(c.num_qubits), {control});
    return out;
}

} // namespace qelast
