#include "qelast/primitives/qnpu.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qelast/error.hpp"
#include "qelast/sim/state_vector.hpp"

namespace qelast {

StateRef StateRef::variational(int reg, std::string name) {
    StateRef s;
    s.kind = Kind::variational;
    s.reg = reg;
    s.name = name.empty() ? (reg == 0 ? "v" : "y") : std::move(name);
    return s;
}

StateRef StateRef::fixed(ControlParams p, std::string name) {
    p.validate();
    StateRef s;
    s.kind = Kind::fixed;
    s.params = std::move(p);
    s.params.scale = 1.0;
    s.name = std::move(name);
    return s;
}

bool StateRef::same_state(const StateRef &o) const {
    if (kind != o.kind)
        return false;
    switch (kind) {
    case Kind::variational: return reg == o.reg;
    case Kind::basis: return index == o.index;
    case Kind::fixed:
        return params.n == o.params.n && params.d == o.params.d && params.angles == o.params.angles;
    }
    return false;
}

StateRef fixed_basis_vector(int k, int n) {
    require(n >= 1 && k >= 0 && k < (1 << n), ErrorKind::invalid_argument,
            "basis index out of range");
    StateRef s;
    s.kind = StateRef::Kind::basis;
    s.index = k;
    s.name = "e" + std::to_string(k);
    return s;
}

bool Operand::same(const Operand &o) const {
    if (!state.same_state(o.state) || op != o.op)
        return false;
    if (op == OpKind::blockenc)
        return band && o.band && *band == *o.band;
    return true;
}

namespace {

std::string op_key(const Operand &o, bool exact) {
    std::ostringstream s;
    switch (o.state.kind) {
    case StateRef::Kind::variational: s << (o.state.reg == 0 ? "v" : "y"); break;
    case StateRef::Kind::basis: s << "e" << o.state.index; break;
    case StateRef::Kind::fixed:
        s << "F";
        if (exact) {
            s << "[" << o.state.name;
            s.precision(17);
            for (double a : o.state.params.angles)
                s << "," << a;
            s << "]";
        }
        break;
    }
    switch (o.op) {
    case OpKind::none: break;
    case OpKind::shift: s << ".A"; break;
    case OpKind::shift_dag: s << ".Ad"; break;
    case OpKind::blockenc:
        s << ".U" << (o.band->order == 1 ? "a" : "b")
          << (o.band->kind == BandKind::I ? "I" : "II");
        if (exact) {
            s.precision(17);
            for (double c : o.band->coeffs)
                s << "," << c;
        }
        break;
    }
    return s.str();
}

std::string key(const TermSpec &t, bool exact) {
    std::vector<std::string> ports;
    for (const auto &p : t.ports)
        ports.push_back(op_key(p, exact));
    std::sort(ports.begin(), ports.end());
    std::string k = "<" + op_key(t.bra, exact) + "|" + op_key(t.ket, exact) + ">";
    for (const auto &p : ports)
        k += "D(" + p + ")";
    return k;
}

} // namespace

TermKind infer_kind(const TermSpec &t) {
    if (t.block_encoding_count() > 0)
        return TermKind::blockenc_chain;
    if (t.ports.empty() && t.bra.op == OpKind::none && t.ket.op == OpKind::none)
        return TermKind::inner_product;
    return TermKind::diagonal_chain;
}

void TermSpec::validate() const {
    require(n >= 1, ErrorKind::invalid_argument, "term needs n >= 1");
    auto check = [&](const Operand &o) {
        if (o.state.kind == StateRef::Kind::fixed)
            require(o.state.params.n == n, ErrorKind::dimension_mismatch,
                    "fixed state register size differs from term");
        if (o.state.kind == StateRef::Kind::basis)
            require(o.state.index < (1 << n), ErrorKind::invalid_argument,
                    "basis index out of range");
        if (o.op == OpKind::blockenc) {
            require(o.band.has_value(), ErrorKind::invalid_argument,
                    "block-encoded operand without band");
            require(o.band->size == (1 << n), ErrorKind::dimension_mismatch,
                    "band size differs from 2^n");
        }
    };
    check(bra);
    check(ket);
    for (const auto &p : ports)
        check(p);
    if (bra.op != OpKind::none)
        require(bra.same(ket), ErrorKind::invalid_argument,
                "an operator on the bra requires the same operand on the ket");
    require(kind == infer_kind(*this), ErrorKind::invalid_argument,
            "term kind does not match its operands");
}

std::string TermSpec::structure_key() const { return key(*this, false); }
std::string TermSpec::identity_key() const { return key(*this, true); }

int TermSpec::block_encoding_count() const {
    int c = bra.op == OpKind::blockenc ? 1 : 0;
    if (bra.op == OpKind::none && ket.op == OpKind::blockenc)
        ++c;
    for (const auto &p : ports)
        c += p.op == OpKind::blockenc;
    return c;
}

bool TermSpec::uses_shift() const {
    auto s = [](const Operand &o) { return o.op != OpKind::none; };
    return s(bra) || s(ket) || std::any_of(ports.begin(), ports.end(), s);
}

const char *to_string(Backend b) { return b == Backend::circuit ? "circuit" : "algebraic"; }

namespace {

const ControlParams &bound(const StateRef &s, const Binding &b) {
    const ControlParams *p = s.reg == 0 ? b.u : b.y;
    require(p != nullptr, ErrorKind::invalid_argument,
            "variational register " + std::to_string(s.reg) + " is not bound");
    return *p;
}

void emit_prep(Circuit &c, const StateRef &s, const std::vector<int> &reg,
               const std::vector<int> &controls, const Binding &b, bool dagger) {
    const Segment saved = c.segment;
    c.segment = Segment::input;
    if (s.kind == StateRef::Kind::basis) {
        for (std::size_t q = 0; q < reg.size(); ++q)
            if (s.index >> q & 1)
                c.add(GateKind::X, reg[q], 0.0, controls);
    } else {
        const ControlParams &p = s.kind == StateRef::Kind::fixed ? s.params : bound(s, b);
        require(p.n == static_cast<int>(reg.size()), ErrorKind::dimension_mismatch,
                "state register size mismatch");
        Circuit a = build_ansatz(p.n, p.d, p.angles);
        if (dagger)
            a = adjoint(a);
        for (auto &op : a.ops)
            op.segment = Segment::input;
        std::vector<int> map(reg);
        c.append(a, map, controls);
    }
    c.segment = saved;
}

struct Layout {
    int n = 0;
    std::vector<std::vector<int>> regs;
    std::vector<int> enc;
    std::size_t enc_next = 0;
    std::vector<int> pool;
    int anc = 0;
    int width = 0;
};

int be_ancillas(const TermSpec &t) {
    int a = 0;
    auto add = [&](const Operand &o) {
        if (o.op == OpKind::blockenc)
            a += encode_ancilla_count(*o.band);
    };
    add(t.bra);
    if (t.bra.op == OpKind::none)
        add(t.ket);
    for (const auto &p : t.ports)
        add(p);
    return a;
}

Layout make_layout(const TermSpec &t, AdderKind adder) {
    Layout l;
    l.n = t.n;
    int q = 0;
    for (std::size_t r = 0; r < 1 + t.ports.size(); ++r) {
        std::vector<int> reg(t.n);
        for (int i = 0; i < t.n; ++i)
            reg[i] = q++;
        l.regs.push_back(std::move(reg));
    }
    const int na = be_ancillas(t);
    for (int i = 0; i < na; ++i)
        l.enc.push_back(q++);
    const int pool = t.uses_shift() ? adder_pool_size(t.n, adder) : 0;
    for (int i = 0; i < pool; ++i)
        l.pool.push_back(q++);
    l.anc = q++;
    l.width = q;
    return l;
}

void emit_op(Circuit &c, const Operand &o, const std::vector<int> &reg,
             const std::vector<int> &controls, Layout &l, AdderKind adder) {
    const Segment saved = c.segment;
    c.segment = Segment::qnpu;
    switch (o.op) {
    case OpKind::none: break;
    case OpKind::shift:
    case OpKind::shift_dag:
        append_shift(c, reg, o.op == OpKind::shift_dag, controls, adder);
        break;
    case OpKind::blockenc: {
        const int na = encode_ancilla_count(*o.band);
        std::vector<int> anc(l.enc.begin() + l.enc_next, l.enc.begin() + l.enc_next + na);
        l.enc_next += na;
        append_block_encoding(c, *o.band, reg, anc, controls, adder);
        break;
    }
    }
    c.segment = saved;
}

} // namespace

int term_width(const TermSpec &t, AdderKind adder) { return make_layout(t, adder).width; }

TermCircuit build_term_circuit(const TermSpec &t, const Binding &b, AdderKind adder) {
    t.validate();
    Layout l = make_layout(t, adder);
    TermCircuit tc;
    tc.ancilla = l.anc;
    tc.postselect = l.enc;
    Circuit &c = tc.circuit;
    c = Circuit(l.width, t.label);
    c.work_pool = l.pool;
    const std::vector<int> ctl = {l.anc};
    const auto &r0 = l.regs[0];

    c.segment = Segment::readout;
    c.h(l.anc);
    if (t.ports.empty() && t.bra.op == OpKind::none) {
        // <bra| O |ket> = <0| V_bra^dag O V_ket |0>
        emit_prep(c, t.ket.state, r0, ctl, b, false);
        emit_op(c, t.ket, r0, ctl, l, adder);
        emit_prep(c, t.bra.state, r0, ctl, b, true);
    } else {
        emit_prep(c, t.bra.state, r0, {}, b, false);
        if (t.bra.op != OpKind::none) {
            emit_op(c, t.bra, r0, {}, l, adder);
        } else {
            if (!t.ket.state.same_state(t.bra.state)) {
                emit_prep(c, t.bra.state, r0, ctl, b, true);
                emit_prep(c, t.ket.state, r0, ctl, b, false);
            }
            emit_op(c, t.ket, r0, ctl, l, adder);
        }
        for (std::size_t j = 0; j < t.ports.size(); ++j) {
            emit_prep(c, t.ports[j].state, l.regs[j + 1], ctl, b, false);
            emit_op(c, t.ports[j], l.regs[j + 1], ctl, l, adder);
        }
        c.segment = Segment::qnpu;
        for (std::size_t j = 0; j < t.ports.size(); ++j)
            for (int q = 0; q < t.n; ++q)
                c.add(GateKind::X, l.regs[j + 1][q], 0.0, {r0[q], l.anc});
    }
    c.segment = Segment::readout;
    c.h(l.anc);
    return tc;
}

std::vector<double> realize_unit(const StateRef &s, int n, const Binding &b) {
    switch (s.kind) {
    case StateRef::Kind::basis: {
        std::vector<double> e(std::size_t{1} << n, 0.0);
        e.at(s.index) = 1.0;
        return e;
    }
    case StateRef::Kind::fixed: return unit_state(s.params.n, s.params.d, s.params.angles);
    case StateRef::Kind::variational: {
        const ControlParams &p = bound(s, b);
        require(p.n == n, ErrorKind::dimension_mismatch, "variational register size mismatch");
        return unit_state(p.n, p.d, p.angles);
    }
    }
    return {};
}

std::vector<double> apply_operand_op(const Operand &o, std::vector<double> x) {
    switch (o.op) {
    case OpKind::none: return x;
    case OpKind::shift: return shift_vector(x, false);
    case OpKind::shift_dag: return shift_vector(x, true);
    case OpKind::blockenc: {
        auto y = o.band->apply(x);
        const double a = o.band->alpha();
        for (auto &v : y)
            v /= a;
        return y;
    }
    }
    return x;
}

ExpectationResult evaluate_term(const TermSpec &t, const Binding &b, Backend backend,
                                AdderKind adder) {
    ExpectationResult r;
    r.backend = backend;
    if (backend == Backend::algebraic) {
        t.validate();
        auto value = [&](const Operand &o) {
            return apply_operand_op(o, realize_unit(o.state, t.n, b));
        };
        const auto bra = value(t.bra);
        const auto ket = t.bra.op != OpKind::none ? bra : value(t.ket);
        std::vector<double> prod(bra.size());
        for (std::size_t i = 0; i < bra.size(); ++i)
            prod[i] = bra[i] * ket[i];
        for (const auto &p : t.ports) {
            const auto f = value(p);
            for (std::size_t i = 0; i < prod.size(); ++i)
                prod[i] *= f[i];
        }
        for (double x : prod)
            r.value += x;
        return r;
    }
    const TermCircuit tc = build_term_circuit(t, b, adder);
    StateVector s(tc.circuit.num_qubits);
    s.apply(tc.circuit);
    if (tc.postselect.empty()) {
        r.value = s.z_expectation(tc.ancilla);
        return r;
    }
    try {
        auto [post, prob] = postselect(s, tc.postselect);
        r.postselect_probs.push_back(prob);
        r.value = post.z_expectation(tc.ancilla) * prob;
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::postselection_failure)
            throw;
        // |value| <= probability < threshold
        r.postselect_probs.push_back(0.0);
        r.value = 0.0;
    }
    return r;
}

double inner_product_expect(const ControlParams &p, const ControlParams &q, Backend backend) {
    require(p.n == q.n, ErrorKind::dimension_mismatch, "register-size mismatch");
    TermSpec t;
    t.n = p.n;
    t.kind = TermKind::inner_product;
    t.bra.state = StateRef::variational(0);
    t.ket.state = StateRef::variational(1);
    Binding b{&p, &q};
    return evaluate_term(t, b, backend).value;
}

ExpectationResult diagonal_chain_expect(const TermSpec &t, const Binding &b, Backend backend) {
    require(t.kind == TermKind::diagonal_chain, ErrorKind::invalid_argument,
            "term is not a diagonal chain");
    return evaluate_term(t, b, backend);
}

ExpectationResult blockenc_chain_expect(const TermSpec &t, const Binding &b, Backend backend) {
    require(t.kind == TermKind::blockenc_chain, ErrorKind::invalid_argument,
            "term is not a block-encoded chain");
    return evaluate_term(t, b, backend);
}

} // namespace qelast
