#include "qelast/sim/resources.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qelast/error.hpp"

namespace qelast {

namespace {

using std::numbers::pi;

class Decomposer {
  public:
    Decomposer(Circuit &out, const std::vector<int> &pool) : out_(out), pool_(pool) {}

    void op(const GateOp &g) {
        seg_ = g.segment;
        const auto &c = g.controls;
        if (g.kind == GateKind::SWAP) {
            const int a = g.targets[0], b = g.targets[1];
            if (c.empty()) {
                emit(GateKind::X, b, 0, {a});
                emit(GateKind::X, a, 0, {b});
                emit(GateKind::X, b, 0, {a});
            } else {
                auto cc = c;
                cc.push_back(a);
                emit(GateKind::X, a, 0, {b});
                mcx(cc, b, borrowable(cc, b));
                emit(GateKind::X, a, 0, {b});
            }
            return;
        }
        controlled1(g.kind, g.targets[0], g.angle, c);
    }

  private:
    Circuit &out_;
    const std::vector<int> &pool_;
    Segment seg_ = Segment::input;

    void emit(GateKind k, int t, double angle, std::vector<int> controls = {}) {
        GateOp g;
        g.kind = k;
        g.targets = {t};
        g.controls = std::move(controls);
        g.angle = angle;
        g.segment = seg_;
        out_.add(std::move(g));
    }

    std::vector<int> borrowable(const std::vector<int> &controls, int t) const {
        std::vector<int> b;
        for (int q : pool_)
            if (q != t && std::find(controls.begin(), controls.end(), q) == controls.end())
                b.push_back(q);
        return b;
    }

    void controlled1(GateKind k, int t, double a, const std::vector<int> &c) {
        if (c.empty()) {
            emit(k, t, a);
            return;
        }
        if (c.size() == 1) {
            switch (k) {
            case GateKind::Y:
                emit(GateKind::P, t, -pi / 2);
                emit(GateKind::X, t, 0, c);
                emit(GateKind::P, t, pi / 2);
                return;
            case GateKind::H:
                emit(GateKind::RY, t, -pi / 4);
                emit(GateKind::Z, t, 0, c);
                emit(GateKind::RY, t, pi / 4);
                return;
            default: emit(k, t, a, c); return;
            }
        }
        switch (k) {
        case GateKind::X: mcx(c, t, borrowable(c, t)); return;
        case GateKind::Z:
            emit(GateKind::H, t, 0);
            mcx(c, t, borrowable(c, t));
            emit(GateKind::H, t, 0);
            return;
        case GateKind::Y:
            emit(GateKind::P, t, -pi / 2);
            mcx(c, t, borrowable(c, t));
            emit(GateKind::P, t, pi / 2);
            return;
        case GateKind::H:
            emit(GateKind::RY, t, -pi / 4);
            controlled1(GateKind::Z, t, 0, c);
            emit(GateKind::RY, t, pi / 4);
            return;
        case GateKind::RY:
        case GateKind::RZ:
            emit(k, t, a / 2);
            mcx(c, t, borrowable(c, t));
            emit(k, t, -a / 2);
            mcx(c, t, borrowable(c, t));
            return;
        case GateKind::P: {
            // global phase e^{ia/2} on the control set, then RZ(a)
            std::vector<int> rest(c.begin(), c.end() - 1);
            controlled1(GateKind::P, c.back(), a / 2, rest);
            controlled1(GateKind::RZ, t, a, c);
            return;
        }
        case GateKind::SWAP: break;
        }
        fail(ErrorKind::invalid_argument, "unsupported controlled gate");
    }

    void toffoli(int a, int b, int t) {
        emit(GateKind::H, t, 0);
        emit(GateKind::X, t, 0, {b});
        emit(GateKind::P, t, -pi / 4);
        emit(GateKind::X, t, 0, {a});
        emit(GateKind::P, t, pi / 4);
        emit(GateKind::X, t, 0, {b});
        emit(GateKind::P, t, -pi / 4);
        emit(GateKind::X, t, 0, {a});
        emit(GateKind::P, b, pi / 4);
        emit(GateKind::P, t, pi / 4);
        emit(GateKind::H, t, 0);
        emit(GateKind::X, b, 0, {a});
        emit(GateKind::P, a, pi / 4);
        emit(GateKind::P, b, -pi / 4);
        emit(GateKind::X, b, 0, {a});
    }

    void mcx(const std::vector<int> &c, int t, const std::vector<int> &borrow) {
        const int k = static_cast<int>(c.size());
        if (k == 0) {
            emit(GateKind::X, t, 0);
            return;
        }
        if (k == 1) {
            emit(GateKind::X, t, 0, c);
            return;
        }
        if (k == 2) {
            toffoli(c[0], c[1], t);
            return;
        }
        if (static_cast<int>(borrow.size()) >= k - 2) {
            vchain(c, t, borrow);
            return;
        }
        if (!borrow.empty()) {
            const int a = borrow[0];
            const int m1 = (k + 1) / 2;
            std::vector<int> c1(c.begin(), c.begin() + m1), c2(c.begin() + m1, c.end());
            std::vector<int> b1 = c2, b2 = c1;
            b1.push_back(t);
            b1.insert(b1.end(), borrow.begin() + 1, borrow.end());
            b2.insert(b2.end(), borrow.begin() + 1, borrow.end());
            auto c2a = c2;
            c2a.push_back(a);
            for (int rep = 0; rep < 2; ++rep) {
                mcx(c1, a, b1);
                mcx(c2a, t, b2);
            }
            return;
        }
        // No qubit to borrow: controlled square roots of X.
        std::vector<int> head(c.begin(), c.end() - 1);
        const int last = c.back();
        emit(GateKind::H, t, 0);
        emit(GateKind::P, t, pi / 2, {last});
        emit(GateKind::H, t, 0);
        mcx(head, last, {});
        emit(GateKind::H, t, 0);
        emit(GateKind::P, t, -pi / 2, {last});
        emit(GateKind::H, t, 0);
        mcx(head, last, {});
        emit(GateKind::H, t, 0);
        controlled1(GateKind::P, t, pi / 2, head);
        emit(GateKind::H, t, 0);
    }

    // Dirty-ancilla V-chain, 4(k-2) Toffolis.
    void vchain(const std::vector<int> &c, int t, const std::vector<int> &a) {
        const int k = static_cast<int>(c.size());
        auto down = [&](bool with_target) {
            if (with_target)
                toffoli(c[k - 1], a[k - 3], t);
            for (int j = k - 2; j >= 2; --j)
                toffoli(c[j], a[j - 2], a[j - 1]);
        };
        auto up = [&] {
            for (int j = 2; j <= k - 2; ++j)
                toffoli(c[j], a[j - 2], a[j - 1]);
        };
        down(true);
        toffoli(c[0], c[1], a[0]);
        up();
        toffoli(c[k - 1], a[k - 3], t);
        down(false);
        toffoli(c[0], c[1], a[0]);
        up();
    }
};

int depth_of(const std::vector<const GateOp *> &ops, int q) {
    std::vector<int> level(q, 0);
    int depth = 0;
    for (const GateOp *g : ops) {
        int l = 0;
        for (int t : g->targets)
            l = std::max(l, level[t]);
        for (int c : g->controls)
            l = std::max(l, level[c]);
        ++l;
        for (int t : g->targets)
            level[t] = l;
        for (int c : g->controls)
            level[c] = l;
        depth = std::max(depth, l);
    }
    return depth;
}

} // namespace

const char *segment_name(Segment s) {
    switch (s) {
    case Segment::input: return "input";
    case Segment::qnpu: return "qnpu";
    case Segment::blockenc: return "blockenc";
    case Segment::readout: return "readout";
    }
    return "?";
}

Circuit decompose(const Circuit &c) {
    Circuit out(c.num_qubits, c.label);
    out.work_pool = c.work_pool;
    Decomposer d(out, c.work_pool);
    for (const auto &g : c.ops)
        d.op(g);
    return out;
}

int circuit_depth(const Circuit &c) {
    std::vector<const GateOp *> ops;
    for (const auto &g : c.ops)
        ops.push_back(&g);
    return depth_of(ops, c.num_qubits);
}

ResourceReport resource_report(const Circuit &c) {
    const Circuit d = decompose(c);
    ResourceReport r;
    r.width = c.num_qubits;
    r.depth = circuit_depth(d);
    std::map<Segment, std::vector<const GateOp *>> by_seg;
    for (const auto &g : d.ops) {
        std::string name(g.controls.size(), 'c');
        name += gate_name(g.kind);
        ++r.gate_counts[name];
        ++r.total_gates;
        if (!g.controls.empty())
            ++r.two_qubit_gates;
        by_seg[g.segment].push_back(&g);
    }
    for (const auto &[s, ops] : by_seg)
        r.segment_depth[s] = depth_of(ops, c.num_qubits);
    return r;
}

} // namespace qelast
