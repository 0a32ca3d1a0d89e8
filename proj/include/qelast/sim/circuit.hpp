#pragma once

#include <string>
#include <vector>

namespace qelast {

enum class GateKind { H, X, Y, Z, RY, RZ, P, SWAP };

// Coarse tag used to report depth per circuit section.
enum class Segment { input, qnpu, blockenc, readout };

struct GateOp {
    GateKind kind = GateKind::X;
    std::vector<int> targets;  // one qubit, two for SWAP
    std::vector<int> controls; // all must be |1>
    double angle = 0.0;
    Segment segment = Segment::input;
};

const char *gate_name(GateKind kind);
bool is_self_inverse(GateKind kind);

struct Circuit {
    int num_qubits = 0;
    std::vector<GateOp> ops;
    std::string label;
    // Qubits that multi-controlled decompositions may borrow.
    std::vector<int> work_pool;
    Segment segment = Segment::input;

    Circuit() = default;
    explicit Circuit(int q, std::string lbl = {}) : num_qubits(q), label(std::move(lbl)) {}

    void add(GateOp op);
    void add(GateKind kind, int target, double angle = 0.0, std::vector<int> controls = {});

    void h(int q) { add(GateKind::H, q); }
    void x(int q) { add(GateKind::X, q); }
    void z(int q) { add(GateKind::Z, q); }
    void ry(int q, double t) { add(GateKind::RY, q, t); }
    void rz(int q, double t) { add(GateKind::RZ, q, t); }
    void phase(int q, double t) { add(GateKind::P, q, t); }
    void cx(int c, int t) { add(GateKind::X, t, 0.0, {c}); }
    void cz(int c, int t) { add(GateKind::Z, t, 0.0, {c}); }
    void cry(int c, int t, double a) { add(GateKind::RY, t, a, {c}); }
    void mcx(std::vector<int> controls, int t) { add(GateKind::X, t, 0.0, std::move(controls)); }
    void swap(int a, int b, std::vector<int> controls = {});

    // Appends `sub` with its qubit i mapped to map[i]; extra controls are
    // added to every gate.
    void append(const Circuit &sub, const std::vector<int> &map,
                const std::vector<int> &extra_controls = {});
    void append(const Circuit &sub) { append(sub, identity_map(sub.num_qubits)); }

    static std::vector<int> identity_map(int q);
};

Circuit adjoint(const Circuit &c);

// Same qubit count, every gate gains `control`.
Circuit controlled(const Circuit &c, int control);

} // namespace qelast
