#include "qelast/energy/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qelast/error.hpp"
#include "qelast/fem/aux_vectors.hpp"
#include "qelast/fem/shape.hpp"

namespace qelast {

std::string to_string(Scheme s) {
    switch (s) {
    case Scheme::taylor_direct: return "taylor_direct";
    case Scheme::iht_penalty: return "iht_penalty";
    case Scheme::blockenc_1st: return "blockenc_1st";
    case Scheme::blockenc_2nd: return "blockenc_2nd";
    }
    return "?";
}

Scheme scheme_from_string(const std::string &s) {
    for (Scheme k : {Scheme::taylor_direct, Scheme::iht_penalty, Scheme::blockenc_1st,
                     Scheme::blockenc_2nd})
        if (to_string(k) == s)
            return k;
    fail(ErrorKind::config, "unknown scheme " + s);
}

namespace {

// Coefficient of d^k in d + d^2/2 - log1p truncated at order nt.
double taylor_coeff(int k) { return k == 2 ? 1.0 : ((k % 2 == 0) ? 1.0 : -1.0) / k; }

double binom(int k, int j) {
    double r = 1.0;
    for (int i = 1; i <= j; ++i)
        r = r * (k - j + i) / i;
    return r;
}

double norm2(const std::vector<double> &v) {
    double s = 0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

// Linear form c0 + sum_i c_i X_{t_i} over model terms.
struct Linear {
    double c0 = 0.0;
    std::vector<std::pair<int, double>> parts;
};

class Builder {
  public:
    Builder(EnergyModel &m, const AssemblyOptions &opt) : m_(m), opt_(opt) {}

    Operand var(int reg, OpKind op = OpKind::none) const {
        Operand o;
        o.state = StateRef::variational(reg);
        o.op = op;
        return o;
    }

    Operand basis(int k) const {
        Operand o;
        o.state = fixed_basis_vector(k, m_.n());
        return o;
    }

    // Unit fixed operand for a weight vector; returns its norm in `scale`.
    Operand fixed(const std::vector<double> &w, const std::string &name, double &scale) {
        scale = norm2(w);
        require(scale > 0, ErrorKind::invalid_argument, "zero weight vector " + name);
        ControlParams p;
        if (const auto it = fitted_.find(w); it != fitted_.end()) {
            p = it->second;
        } else if (opt_.fit_states) {
            p = opt_.cache ? opt_.cache->fit(w, m_.n(), opt_.d, opt_.fit).params
                           : fit_state(w, m_.n(), opt_.d, opt_.fit).params;
            fitted_[w] = p;
        } else {
            p = ControlParams{1.0, std::vector<double>(ControlParams::angle_count(m_.n(), opt_.d), 0.0),
                              m_.n(), opt_.d};
        }
        Operand o;
        o.state = StateRef::fixed(p, name);
        return o;
    }

    int term(TermSpec t, int up, int yp, const std::string &label) {
        t.n = m_.n();
        t.kind = infer_kind(t);
        t.label = label;
        t.validate();
        const std::string key = t.identity_key();
        if (const auto it = index_.find(key); it != index_.end())
            return it->second;
        m_.terms.push_back(ModelTerm{std::move(t), up, yp});
        const int id = static_cast<int>(m_.terms.size()) - 1;
        index_[key] = id;
        return id;
    }

    // Readout of amplitude k of register reg: X = component k of the vector.
    int readout(int reg, int k) {
        TermSpec t;
        t.bra = var(reg);
        t.ket = basis(k);
        return term(t, reg == 0 ? 1 : 0, reg == 1 ? 1 : 0,
                    std::string(reg == 0 ? "v" : "y") + "[" + std::to_string(k) + "]");
    }

    void add(double c, std::vector<std::pair<int, int>> f) {
        if (c == 0.0)
            return;
        if (f.empty()) {
            m_.constant += c;
            return;
        }
        m_.monomials.push_back(Monomial{c, std::move(f)});
    }

    // c * prod(fixed) * L^k, expanded into monomials.
    void add_power(double c, const std::vector<std::pair<int, int>> &fixed, const Linear &l,
                   int k) {
        std::vector<int> exps(l.parts.size(), 0);
        expand(c, fixed, l, k, 0, exps, 1.0);
    }

    void finish() {
        std::map<std::vector<std::pair<int, int>>, double> merged;
        for (auto &mo : m_.monomials) {
            std::map<int, int> pw;
            for (auto [t, p] : mo.factors)
                pw[t] += p;
            merged[std::vector<std::pair<int, int>>(pw.begin(), pw.end())] += mo.coefficient;
        }
        m_.monomials.clear();
        for (auto &[f, c] : merged)
            if (c != 0.0)
                m_.monomials.push_back(Monomial{c, f});
    }

  private:
    void expand(double c, const std::vector<std::pair<int, int>> &fixed, const Linear &l, int left,
                std::size_t i, std::vector<int> &exps, double mult) {
        if (i == l.parts.size()) {
            const double coeff = c * mult * std::pow(l.c0, left);
            std::vector<std::pair<int, int>> f = fixed;
            for (std::size_t j = 0; j < exps.size(); ++j)
                if (exps[j] > 0)
                    f.emplace_back(l.parts[j].first, exps[j]);
            add(coeff, std::move(f));
            return;
        }
        for (int e = 0; e <= left; ++e) {
            exps[i] = e;
            expand(c, fixed, l, left - e, i + 1, exps,
                   mult * binom(left, e) * std::pow(l.parts[i].second, e));
        }
        exps[i] = 0;
    }

    EnergyModel &m_;
    const AssemblyOptions &opt_;
    std::map<std::string, int> index_;
    std::map<std::vector<double>, ControlParams> fitted_;
};

void check_common(const Mesh1D &mesh, double mu) {
    require(mu > 0, ErrorKind::invalid_argument, "mu must be positive");
    require(mesh.n() >= 1, ErrorKind::invalid_argument, "mesh needs n >= 1");
}

// sum_i w_i v_i^a (S v)_i^b as a diagonal chain; S = A (forward) or A^dagger.
int power_chain(Builder &b, const std::vector<double> &w, const std::string &name, int a, int bp,
                OpKind shift, double &scale) {
    TermSpec t;
    const OpKind main_op = bp > 0 ? shift : OpKind::none;
    int plain = a, shifted = bp;
    t.bra = b.var(0);
    --plain;
    if (bp > 0) {
        t.ket = b.var(0, main_op);
        --shifted;
    } else {
        t.ket = b.var(0);
        --plain;
    }
    for (int i = 0; i < plain; ++i)
        t.ports.push_back(b.var(0));
    for (int i = 0; i < shifted; ++i)
        t.ports.push_back(b.var(0, main_op));
    t.ports.push_back(b.fixed(w, name, scale));
    t.coefficient = scale;
    return b.term(t, a + bp, 0, name);
}

// Adds c * sum_e h_e^{1-k} (u_{e+1} - u_e)^k over an order-1 mesh. Element 0
// goes through the readout of v_0; the rest through diagonal chains.
void add_difference_power(Builder &b, const Mesh1D &mesh, const BoundaryData &bc, int k, double c) {
    const double ub = bc.u_bar;
    // pure powers: sum_i w_i v_i^k, w_0 includes element 0's v_0^k
    {
        double s = 0;
        const int t = power_chain(b, pure_power_weights(mesh, k), "pure" + std::to_string(k), k, 0,
                                  OpKind::none, s);
        b.add(c, {{t, 1}});
    }
    for (int j = 1; j < k; ++j) {
        const int a = k - j; // power of the left node v_i, j on v_{i+1}
        const double coef = c * binom(k, j) * ((a % 2 == 0) ? 1.0 : -1.0);
        double s = 0;
        int t;
        const std::string name = "cross" + std::to_string(k) + "_" + std::to_string(j);
        if (a >= j) {
            t = power_chain(b, cross_weights(mesh, k, false), name, a, j, OpKind::shift, s);
        } else {
            // v_{i-1}^a v_i^j: unshifted power j, shifted (A^dagger) power a
            t = power_chain(b, cross_weights(mesh, k, true), name, j, a, OpKind::shift_dag, s);
        }
        b.add(coef, {{t, 1}});
    }
    // element 0: h_0^{1-k}[(v_0 - u_bar)^k - v_0^k]
    const int r0 = b.readout(0, 0);
    const double w0 = c * std::pow(mesh.h(0), 1 - k);
    b.add_power(w0, {}, Linear{-ub, {{r0, 1.0}}}, k);
    b.add(-w0, {{r0, k}});
}

void add_loads(Builder &b, const Mesh1D &mesh, const BoundaryData &bc, bool body_term) {
    const auto [b0, bv] = body_coeffs(mesh, bc.body_force);
    b.add(-b0 * bc.u_bar, {});
    if (body_term && norm2(bv) > 0) {
        double s = 0;
        TermSpec t;
        t.bra = b.fixed(bv, "b", s);
        t.ket = b.var(0);
        t.coefficient = s;
        b.add(-1.0, {{b.term(t, 1, 0, "b"), 1}});
    }
    if (bc.traction != 0.0)
        b.add(-bc.traction, {{b.readout(0, mesh.nq() - 1), 1}});
}

EnergyModel base_model(Scheme s, const Mesh1D &mesh, const BoundaryData &bc, double mu,
                       const AssemblyOptions &opt) {
    EnergyModel m;
    m.scheme = s;
    m.mesh = mesh;
    m.bc = bc;
    m.mu = mu;
    m.d = opt.d;
    return m;
}

} // namespace

EnergyModel assemble_taylor_direct(const Mesh1D &mesh, int taylor_order, const BoundaryData &bc,
                                   double mu, const AssemblyOptions &opt) {
    check_common(mesh, mu);
    require(mesh.order() == 1, ErrorKind::invalid_argument,
            "direct expansion needs an order-1 mesh");
    require(taylor_order >= 3 && taylor_order <= 5, ErrorKind::invalid_argument,
            "Taylor order must be 3, 4 or 5");
    EnergyModel m = base_model(Scheme::taylor_direct, mesh, bc, mu, opt);
    m.taylor_order = taylor_order;
    Builder b(m, opt);
    b.readout(0, 0);
    for (int k = 2; k <= taylor_order; ++k)
        add_difference_power(b, mesh, bc, k, mu * taylor_coeff(k));
    add_loads(b, mesh, bc, true);
    b.finish();
    return m;
}

EnergyModel assemble_iht_penalty(const Mesh1D &mesh, double penalty, const BoundaryData &bc,
                                 double mu, const AssemblyOptions &opt) {
    check_common(mesh, mu);
    require(mesh.order() == 1, ErrorKind::invalid_argument, "penalty scheme needs an order-1 mesh");
    require(penalty > 0, ErrorKind::invalid_argument, "penalty must be positive");
    EnergyModel m = base_model(Scheme::iht_penalty, mesh, bc, mu, opt);
    m.taylor_order = 3;
    m.penalty = penalty;
    const double P = penalty, ub = bc.u_bar, h0 = mesh.h(0);
    const int N = mesh.nq();
    Builder b(m, opt);

    const int v0 = b.readout(0, 0);
    const int y0 = b.readout(1, 0);
    // mu * sum_e h_e u'_e = mu (u_N - u_bar)
    b.add(mu, {{b.readout(0, N - 1), 1}});
    b.add(-mu * ub, {});
    // (mu + P)/2 * sum_e h_e u'^2
    add_difference_power(b, mesh, bc, 2, (mu + P) / 2.0);

    double s = 0;
    const auto h = mesh.h();
    {
        TermSpec t; // <h|y>
        t.bra = b.fixed(h, "h", s);
        t.ket = b.var(1);
        t.coefficient = s;
        b.add(-2.0 * mu, {{b.term(t, 0, 1, "h.y"), 1}});
    }
    {
        TermSpec t; // sum h y^3
        t.bra = b.var(1);
        t.ket = b.var(1);
        t.ports = {b.var(1), b.fixed(h, "h", s)};
        t.coefficient = s;
        b.add(-2.0 * mu / 3.0, {{b.term(t, 0, 3, "h.y^3"), 1}});
    }
    {
        TermSpec t; // sum h y^2
        t.bra = b.var(1);
        t.ket = b.var(1);
        t.ports = {b.fixed(h, "h", s)};
        t.coefficient = s;
        b.add(2.0 * P, {{b.term(t, 0, 2, "h.y^2"), 1}});
    }
    // sum_{e>=1} y_e^p (v_e - v_{e-1})^2 / h_e for p = 2 (coefficient P/2), p = 1 (-P)
    const auto m9 = aux_vector(AuxId::m9, mesh);
    for (int p : {2, 1}) {
        const double c = p == 2 ? P / 2.0 : -P;
        const std::string tag = "y" + std::to_string(p) + ".";
        auto ports = [&](bool) {
            std::vector<Operand> out;
            for (int i = 0; i < p; ++i)
                out.push_back(b.var(1));
            out.push_back(b.fixed(m9, "m9", s));
            return out;
        };
        TermSpec f1;
        f1.bra = b.var(0);
        f1.ket = b.var(0);
        f1.ports = ports(false);
        f1.coefficient = s;
        b.add(c, {{b.term(f1, 2, p, tag + "vv"), 1}});
        TermSpec f2;
        f2.bra = b.var(0, OpKind::shift_dag);
        f2.ket = b.var(0, OpKind::shift_dag);
        f2.ports = ports(false);
        f2.coefficient = s;
        b.add(c, {{b.term(f2, 2, p, tag + "AvAv"), 1}});
        TermSpec f3;
        f3.bra = b.var(0);
        f3.ket = b.var(0, OpKind::shift_dag);
        f3.ports = ports(false);
        f3.coefficient = s;
        b.add(-2.0 * c, {{b.term(f3, 2, p, tag + "vAv"), 1}});
        // element 0: y_0^p (v_0 - u_bar)^2 / h_0
        b.add_power(c / h0, {{y0, p}}, Linear{-ub, {{v0, 1.0}}}, 2);
    }
    const auto m10 = aux_vector(AuxId::m10, mesh);
    {
        // 2P sum_e y_e^2 (v_e - v_{e-1}), v_{-1} = u_bar
        TermSpec t;
        t.bra = b.var(1);
        t.ket = b.var(1);
        t.ports = {b.var(0)};
        b.add(2.0 * P, {{b.term(t, 1, 2, "yy.v"), 1}});
        TermSpec t2;
        t2.bra = b.var(1);
        t2.ket = b.var(1);
        t2.ports = {b.fixed(m10, "m10", s), b.var(0, OpKind::shift_dag)};
        t2.coefficient = s;
        b.add(-2.0 * P, {{b.term(t2, 1, 2, "yy.m10.Av"), 1}});
        b.add(-2.0 * P * ub, {{y0, 2}});
    }
    {
        // -2P sum_e y_e (v_e - v_{e-1})
        TermSpec t;
        t.bra = b.var(1);
        t.ket = b.var(0);
        b.add(-2.0 * P, {{b.term(t, 1, 1, "y.v"), 1}});
        TermSpec t2;
        t2.bra = b.var(1);
        t2.ket = b.var(0, OpKind::shift_dag);
        t2.ports = {b.fixed(m10, "m10", s)};
        t2.coefficient = s;
        b.add(2.0 * P, {{b.term(t2, 1, 1, "y.m10.Av"), 1}});
        b.add(2.0 * P * ub, {{y0, 1}});
    }
    add_loads(b, mesh, bc, true);
    b.finish();
    return m;
}

EnergyModel assemble_blockenc(const Mesh1D &mesh, int taylor_order, const BoundaryData &bc,
                              double mu, const AssemblyOptions &opt) {
    check_common(mesh, mu);
    require(taylor_order == 3, ErrorKind::invalid_argument,
            "block-encoding scheme is implemented for Taylor order 3");
    const int order = mesh.order();
    EnergyModel m = base_model(order == 1 ? Scheme::blockenc_1st : Scheme::blockenc_2nd, mesh, bc,
                               mu, opt);
    m.taylor_order = taylor_order;
    const int N = mesh.nq();
    const double ub = bc.u_bar, h0 = mesh.h(0);
    Builder b(m, opt);

    std::vector<int> r0;
    for (int a = 1; a <= order; ++a)
        r0.push_back(b.readout(0, a - 1));

    for (int g = 0; g < 2; ++g) {
        const CirculantBand dband = build_circulant(order, BandKind::II, g, N);
        const double alpha = dband.alpha();
        for (int k = 2; k <= taylor_order; ++k) {
            double s = 0;
            Operand u = b.var(0, OpKind::blockenc);
            u.band = dband;
            TermSpec t;
            t.bra = u;
            t.ket = u;
            for (int i = 0; i < k - 2; ++i)
                t.ports.push_back(u);
            t.ports.push_back(b.fixed(blockenc_bulk_weights(mesh, k), "w" + std::to_string(k), s));
            t.coefficient = s * std::pow(alpha, k);
            const int id = b.term(t, k, 0, "bulk" + std::to_string(k) + "g" + std::to_string(g));
            b.add(mu * taylor_coeff(k), {{id, 1}});
        }
        // element 0 at this Gauss point: (h0/2) mu c_k ((2/h0) sum_a N'_a u_a)^k
        const ShapeValues sv = shape_values(order, g);
        Linear du{ub * sv.derivatives[0] * 2.0 / h0, {}};
        Linear uu{ub * sv.values[0], {}};
        for (int a = 1; a <= order; ++a) {
            du.parts.emplace_back(r0[a - 1], sv.derivatives[a] * 2.0 / h0);
            uu.parts.emplace_back(r0[a - 1], sv.values[a]);
        }
        for (int k = 2; k <= taylor_order; ++k)
            b.add_power(h0 / 2.0 * mu * taylor_coeff(k), {}, du, k);

        const double B0 = bc.body_force(mesh.gauss_x(0, g));
        b.add_power(-h0 / 2.0 * B0, {}, uu, 1);
        const auto w8 = blockenc_body_weights(mesh, bc, g);
        if (norm2(w8) > 0) {
            const CirculantBand vband = build_circulant(order, BandKind::I, g, N);
            double s = 0;
            Operand u = b.var(0, OpKind::blockenc);
            u.band = vband;
            TermSpec t;
            t.bra = b.fixed(w8, "m8g" + std::to_string(g), s);
            t.ket = u;
            t.coefficient = s * vband.alpha();
            b.add(-1.0, {{b.term(t, 1, 0, "body g" + std::to_string(g)), 1}});
        }
    }
    if (bc.traction != 0.0)
        b.add(-bc.traction, {{b.readout(0, N - 1), 1}});
    b.finish();
    return m;
}

std::vector<ExpectationResult> evaluate_terms(const EnergyModel &m, const ControlParams &u,
                                              const ControlParams *y, Backend backend,
                                              AdderKind adder) {
    require(u.n == m.n(), ErrorKind::dimension_mismatch, "u register size differs from mesh");
    if (m.has_y()) {
        require(y != nullptr, ErrorKind::invalid_argument, "penalty scheme needs y parameters");
        require(y->n == m.n(), ErrorKind::dimension_mismatch, "y register size differs from mesh");
    }
    const Binding bind{&u, y};
    std::vector<ExpectationResult> out;
    out.reserve(m.terms.size());
    for (const auto &t : m.terms)
        out.push_back(evaluate_term(t.spec, bind, backend, adder));
    return out;
}

double combine_terms(const EnergyModel &m, const std::vector<double> &e, const ControlParams &u,
                     const ControlParams *y) {
    std::vector<double> X(m.terms.size());
    for (std::size_t i = 0; i < X.size(); ++i) {
        const auto &t = m.terms[i];
        X[i] = t.spec.coefficient * std::pow(u.scale, t.u_power) *
               (t.y_power ? std::pow(y->scale, t.y_power) : 1.0) * e[i];
    }
    double c = m.constant;
    for (const auto &mo : m.monomials) {
        double v = mo.coefficient;
        for (auto [t, p] : mo.factors)
            v *= std::pow(X[t], p);
        c += v;
    }
    return c;
}

double quantum_cost(const EnergyModel &m, const ControlParams &u, const ControlParams *y,
                    Backend backend, AdderKind adder) {
    const auto r = evaluate_terms(m, u, y, backend, adder);
    std::vector<double> e(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        e[i] = r[i].value;
    return combine_terms(m, e, u, y);
}

std::vector<const ModelTerm *> distinct_circuits(const EnergyModel &m) {
    std::vector<const ModelTerm *> out;
    std::map<std::string, bool> seen;
    for (const auto &t : m.terms)
        if (seen.emplace(t.spec.structure_key(), true).second)
            out.push_back(&t);
    return out;
}

int max_circuit_width(const EnergyModel &m, AdderKind adder) {
    int w = 0;
    for (const auto *t : distinct_circuits(m))
        w = std::max(w, term_width(t->spec, adder));
    return w;
}

} // namespace qelast
