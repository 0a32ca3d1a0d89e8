#pragma once

#include <vector>

#include "qelast/primitives/adder.hpp"
#include "qelast/primitives/term.hpp"

namespace qelast {

struct TermCircuit {
    Circuit circuit;
    int ancilla = 0;
    std::vector<int> postselect;
};

TermCircuit build_term_circuit(const TermSpec &t, const Binding &b,
                               AdderKind adder = AdderKind::mcx_cascade);

// Qubit count of the term circuit without building it.
int term_width(const TermSpec &t, AdderKind adder = AdderKind::mcx_cascade);

std::vector<double> realize_unit(const StateRef &s, int n, const Binding &b);
std::vector<double> apply_operand_op(const Operand &o, std::vector<double> x);

ExpectationResult evaluate_term(const TermSpec &t, const Binding &b, Backend backend,
                                AdderKind adder = AdderKind::mcx_cascade);

double inner_product_expect(const ControlParams &p, const ControlParams &q, Backend backend);
ExpectationResult diagonal_chain_expect(const TermSpec &t, const Binding &b, Backend backend);
ExpectationResult blockenc_chain_expect(const TermSpec &t, const Binding &b, Backend backend);

} // namespace qelast
