#include <catch_amalgamated.hpp>

#include <numbers>

#include "helpers.hpp"
#include "qelast/error.hpp"
#include "qelast/sim/resources.hpp"

using namespace qelast;
using Catch::Matchers::WithinAbs;

TEST_CASE("bit flip on qubit 0 sets the least significant bit") {
    Circuit c(3);
    c.x(0);
    const auto s = apply_circuit(StateVector(3), c);
    CHECK(std::abs(s[1] - cplx(1.0)) < 1e-15);
}

TEST_CASE("single-qubit RY rotation") {
    Circuit c(1);
    c.ry(0, std::numbers::pi / 2);
    const auto s = apply_circuit(StateVector(1), c);
    CHECK_THAT(s[0].real(), WithinAbs(std::cos(std::numbers::pi / 4), 1e-15));
    CHECK_THAT(s[1].real(), WithinAbs(std::sin(std::numbers::pi / 4), 1e-15));
}

TEST_CASE("simulator matches dense matrices on random circuits") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Circuit c = testutil::random_circuit(5, 30, 3, rng);
        const auto in = testutil::random_state(5, rng);
        const auto out = apply_circuit(in, c);
        const auto ref = testutil::dense_apply(c, in);
        CHECK((testutil::to_eigen(out) - ref).cwiseAbs().maxCoeff() < 1e-12);
        CHECK_THAT(out.norm(), WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("circuit followed by its adjoint is the identity") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const Circuit c = testutil::random_circuit(3, 25, 2, rng);
        const auto in = testutil::random_state(3, rng);
        const auto out = apply_circuit(apply_circuit(in, c), adjoint(c));
        for (std::size_t i = 0; i < in.size(); ++i)
            CHECK(std::abs(out[i] - in[i]) < 1e-10);
    }
}

TEST_CASE("out-of-range qubits and size mismatches are rejected") {
    Circuit c(2);
    CHECK_THROWS_AS(c.x(2), Error);
    CHECK_THROWS_AS(c.cx(1, 1), Error);
    StateVector s(3);
    CHECK_THROWS_AS(s.apply(c), Error);
}

TEST_CASE("Hadamard ancilla readout") {
    SECTION("identity block gives 1") {
        Circuit c(2);
        c.h(1);
        c.h(1);
        CHECK_THAT(hadamard_ancilla_expectation(c, 1), WithinAbs(1.0, 1e-15));
    }
    SECTION("controlled Z on |1> gives -1") {
        Circuit c(2);
        c.x(0);
        c.h(1);
        c.cz(1, 0);
        c.h(1);
        CHECK_THAT(hadamard_ancilla_expectation(c, 1), WithinAbs(-1.0, 1e-15));
    }
    SECTION("ancilla out of range") {
        Circuit c(2);
        CHECK_THROWS_AS(hadamard_ancilla_expectation(c, 2), Error);
    }
}

TEST_CASE("Hadamard readout equals Re<psi|U|psi> for random U") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const Circuit u = testutil::random_circuit(3, 15, 2, rng);
        const Circuit prep = testutil::random_circuit(3, 15, 1, rng);
        Circuit c(4);
        c.append(prep, Circuit::identity_map(3));
        c.h(3);
        c.append(u, Circuit::identity_map(3), {3});
        c.h(3);
        Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(8);
        zero(0) = 1.0;
        const Eigen::VectorXcd psi = testutil::dense_apply(prep, zero);
        const double ref = psi.dot(testutil::dense_apply(u, psi)).real();
        CHECK_THAT(hadamard_ancilla_expectation(c, 3), WithinAbs(ref, 1e-12));
    }
}

TEST_CASE("postselection") {
    SECTION("product state keeps the register") {
        Circuit c(2);
        c.ry(0, 0.7);
        auto [s, p] = postselect(apply_circuit(StateVector(2), c), {1});
        CHECK_THAT(p, WithinAbs(1.0, 1e-15));
        CHECK_THAT(s[1].real(), WithinAbs(std::sin(0.35), 1e-15));
    }
    SECTION("uniform superposition") {
        Circuit c(1);
        c.h(0);
        auto [s, p] = postselect(apply_circuit(StateVector(1), c), {0});
        CHECK_THAT(p, WithinAbs(0.5, 1e-15));
        CHECK_THAT(s.norm(), WithinAbs(1.0, 1e-15));
    }
    SECTION("empty branch fails") {
        Circuit c(1);
        c.x(0);
        try {
            postselect(apply_circuit(StateVector(1), c), {0});
            FAIL("expected failure");
        } catch (const Error &e) {
            CHECK(e.kind() == ErrorKind::postselection_failure);
        }
    }
}

TEST_CASE("resource report basics") {
    CHECK(resource_report(Circuit(3)).depth == 0);
    Circuit c(2);
    c.cx(0, 1);
    const auto r = resource_report(c);
    CHECK(r.depth == 1);
    CHECK(r.width == 2);
    CHECK(r.gate_counts.at("cx") == 1);
}

TEST_CASE("decomposition preserves the unitary") {
    std::mt19937_64 rng(14);
    SECTION("random multi-controlled gates, with and without a pool") {
        for (int trial = 0; trial < 12; ++trial) {
            Circuit c = testutil::random_circuit(6, 8, 4, rng);
            if (trial % 2)
                c.work_pool = {5, 4};
            const Circuit d = decompose(c);
            for (const auto &g : d.ops)
                CHECK(g.controls.size() + g.targets.size() <= 2);
            for (int k = 0; k < 3; ++k) {
                const auto in = testutil::random_state(6, rng);
                const auto diff = apply_circuit(in, d).amplitudes();
                const auto ref = testutil::dense_apply(c, in);
                for (std::size_t i = 0; i < diff.size(); ++i)
                    CHECK(std::abs(diff[i] - ref(i)) < 1e-10);
            }
        }
    }
    SECTION("wide MCX uses the V-chain and split paths") {
        for (int pool = 0; pool <= 4; ++pool) {
            Circuit c(9);
            for (int i = 0; i < pool; ++i)
                c.work_pool.push_back(8 - i);
            c.mcx({0, 1, 2, 3, 4, 5}, 6);
            const auto in = testutil::random_state(9, rng);
            const auto a = apply_circuit(in, decompose(c));
            const auto b = apply_circuit(in, c);
            for (std::size_t i = 0; i < a.size(); ++i)
                CHECK(std::abs(a[i] - b[i]) < 1e-10);
        }
    }
}

TEST_CASE("depth is invariant under qubit relabeling") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 10; ++trial) {
        Circuit c = testutil::random_circuit(7, 20, 4, rng);
        c.work_pool = {6, 5};
        std::vector<int> perm(7);
        for (int i = 0; i < 7; ++i)
            perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        Circuit r(7);
        r.append(c, perm);
        for (int q : c.work_pool)
            r.work_pool.push_back(perm[q]);
        CHECK(resource_report(r).depth == resource_report(c).depth);
        CHECK(resource_report(r).total_gates == resource_report(c).total_gates);
    }
}
