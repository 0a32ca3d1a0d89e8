#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "qelast/error.hpp"
#include "qelast/primitives/qnpu.hpp"

using namespace qelast;
using Catch::Matchers::WithinAbs;

namespace {

ControlParams random_params(int n, int d, std::mt19937_64 &rng) {
    return ControlParams{1.0, testutil::random_angles(n * (d + 1), rng), n, d};
}

Operand var(int reg, OpKind op = OpKind::none) {
    Operand o;
    o.state = StateRef::variational(reg);
    o.op = op;
    return o;
}

Operand fixed(const ControlParams &p, OpKind op = OpKind::none) {
    Operand o;
    o.state = StateRef::fixed(p, "f");
    o.op = op;
    return o;
}

double both(const TermSpec &t, const Binding &b) {
    const double c = evaluate_term(t, b, Backend::circuit).value;
    const double a = evaluate_term(t, b, Backend::algebraic).value;
    CHECK_THAT(c, WithinAbs(a, 1e-9));
    return a;
}

} // namespace

TEST_CASE("inner products") {
    std::mt19937_64 rng(51);
    const auto p = random_params(3, 2, rng), q = random_params(3, 2, rng);
    CHECK_THAT(inner_product_expect(p, p, Backend::circuit), WithinAbs(1.0, 1e-12));
    const auto vp = unit_state(3, 2, p.angles), vq = unit_state(3, 2, q.angles);
    double dot = 0;
    for (int i = 0; i < 8; ++i)
        dot += vp[i] * vq[i];
    CHECK_THAT(inner_product_expect(p, q, Backend::circuit), WithinAbs(dot, 1e-9));
    CHECK_THAT(inner_product_expect(p, q, Backend::algebraic), WithinAbs(dot, 1e-12));

    TermSpec t;
    t.n = 3;
    t.bra.state = fixed_basis_vector(2, 3);
    t.ket.state = fixed_basis_vector(5, 3);
    CHECK_THAT(both(t, {}), WithinAbs(0.0, 1e-12));
    CHECK_THROWS_AS(inner_product_expect(p, random_params(2, 2, rng), Backend::algebraic), Error);
}

TEST_CASE("basis readout returns the first amplitude") {
    std::mt19937_64 rng(52);
    const auto p = random_params(3, 2, rng);
    TermSpec t;
    t.n = 3;
    t.bra = var(0);
    t.ket.state = fixed_basis_vector(0, 3);
    const Binding b{&p, nullptr};
    CHECK_THAT(both(t, b), WithinAbs(unit_state(3, 2, p.angles)[0], 1e-12));
}

TEST_CASE("diagonal chains") {
    std::mt19937_64 rng(53);
    const auto p = random_params(3, 2, rng), q = random_params(3, 2, rng);
    const auto vp = unit_state(3, 2, p.angles), vq = unit_state(3, 2, q.angles);
    const Binding b{&p, nullptr};

    SECTION("uniform weights give 1/sqrt(N)") {
        std::vector<double> ang(9, 0.0);
        for (int i = 0; i < 3; ++i)
            ang[6 + i] = std::numbers::pi / 2;
        TermSpec t;
        t.n = 3;
        t.kind = TermKind::diagonal_chain;
        t.bra = var(0);
        t.ket = var(0);
        t.ports = {fixed(ControlParams{1.0, ang, 3, 2})};
        CHECK_THAT(both(t, b), WithinAbs(1.0 / std::sqrt(8.0), 1e-12));
    }
    SECTION("random weights") {
        TermSpec t;
        t.n = 3;
        t.kind = TermKind::diagonal_chain;
        t.bra = var(0);
        t.ket = var(0);
        t.ports = {fixed(q)};
        double ref = 0;
        for (int i = 0; i < 8; ++i)
            ref += vp[i] * vp[i] * vq[i];
        CHECK_THAT(both(t, b), WithinAbs(ref, 1e-12));
    }
    SECTION("shifted ket") {
        TermSpec t;
        t.n = 3;
        t.kind = TermKind::diagonal_chain;
        t.bra = var(0);
        t.ket = var(0, OpKind::shift_dag);
        t.ports = {fixed(q)};
        double ref = 0;
        for (int i = 0; i < 8; ++i)
            ref += vp[i] * vq[i] * vp[(i + 7) % 8];
        CHECK_THAT(both(t, b), WithinAbs(ref, 1e-12));
        t.ket.op = OpKind::shift;
        ref = 0;
        for (int i = 0; i < 8; ++i)
            ref += vp[i] * vq[i] * vp[(i + 1) % 8];
        CHECK_THAT(both(t, b), WithinAbs(ref, 1e-12));
    }
    SECTION("shifted bra, two variational registers, cubic chain") {
        const auto y = random_params(3, 2, rng);
        const auto vy = unit_state(3, 2, y.angles);
        const Binding by{&p, &y};
        TermSpec t;
        t.n = 3;
        t.kind = TermKind::diagonal_chain;
        t.bra = var(0, OpKind::shift_dag);
        t.ket = var(0, OpKind::shift_dag);
        t.ports = {var(1), var(1), fixed(q)};
        double ref = 0;
        for (int i = 0; i < 8; ++i)
            ref += vp[(i + 7) % 8] * vp[(i + 7) % 8] * vy[i] * vy[i] * vq[i];
        CHECK_THAT(both(t, by), WithinAbs(ref, 1e-12));
        CHECK(term_width(t) == 4 * 3 + 1 + 1);
    }
    SECTION("bra and ket in different registers with a shifted port") {
        const auto y = random_params(3, 2, rng);
        const auto vy = unit_state(3, 2, y.angles);
        TermSpec t;
        t.n = 3;
        t.kind = TermKind::diagonal_chain;
        t.bra = var(1);
        t.ket = var(0, OpKind::shift_dag);
        t.ports = {fixed(q)};
        double ref = 0;
        for (int i = 0; i < 8; ++i)
            ref += vy[i] * vp[(i + 7) % 8] * vq[i];
        CHECK_THAT(both(t, Binding{&p, &y}), WithinAbs(ref, 1e-12));
    }
}

TEST_CASE("block-encoded chains") {
    std::mt19937_64 rng(54);
    const auto p = random_params(3, 2, rng), q = random_params(3, 2, rng);
    const auto vp = unit_state(3, 2, p.angles), vq = unit_state(3, 2, q.angles);
    const Binding b{&p, nullptr};
    for (int order : {1, 2}) {
        const auto band = build_circulant(order, BandKind::II, 0, 8);
        const auto l = band.apply(vp);
        const double a = band.alpha();
        Operand u = var(0, OpKind::blockenc);
        u.band = band;
        TermSpec t;
        t.n = 3;
        t.kind = TermKind::blockenc_chain;
        t.bra = u;
        t.ket = u;
        t.ports = {fixed(q)};
        double ref = 0;
        for (int i = 0; i < 8; ++i)
            ref += l[i] * l[i] * vq[i] / (a * a);
        CHECK_THAT(both(t, b), WithinAbs(ref, 1e-12));
        t.ports.push_back(u);
        ref = 0;
        for (int i = 0; i < 8; ++i)
            ref += l[i] * l[i] * l[i] * vq[i] / (a * a * a);
        CHECK_THAT(both(t, b), WithinAbs(ref, 1e-12));
        CHECK(term_width(t) == (order == 1 ? 15 : 17));
        const auto r = evaluate_term(t, b, Backend::circuit);
        REQUIRE(r.postselect_probs.size() == 1);
    }
    SECTION("linear functional with the shape-value band") {
        const auto band = build_circulant(2, BandKind::I, 1, 8);
        Operand u = var(0, OpKind::blockenc);
        u.band = band;
        TermSpec t;
        t.n = 3;
        t.kind = TermKind::blockenc_chain;
        t.bra = fixed(q);
        t.ket = u;
        const auto l = band.apply(vp);
        double ref = 0;
        for (int i = 0; i < 8; ++i)
            ref += vq[i] * l[i] / band.alpha();
        CHECK_THAT(both(t, b), WithinAbs(ref, 1e-12));
    }
}

TEST_CASE("term validation") {
    TermSpec t;
    t.n = 3;
    t.bra = var(0, OpKind::shift);
    t.ket = var(0);
    t.kind = TermKind::diagonal_chain;
    CHECK_THROWS_AS(t.validate(), Error);
    t.bra = var(0);
    t.ket = var(0, OpKind::shift);
    t.kind = TermKind::inner_product;
    CHECK_THROWS_AS(t.validate(), Error);
}
