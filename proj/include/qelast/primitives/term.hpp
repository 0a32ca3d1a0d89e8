#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qelast/ansatz.hpp"
#include "qelast/blockenc.hpp"

namespace qelast {

// A unit-norm state that a register can be prepared in.
struct StateRef {
    enum class Kind { variational, fixed, basis };
    Kind kind = Kind::variational;
    int reg = 0;          // variational: 0 = displacement, 1 = auxiliary field y
    ControlParams params; // fixed: fitted ansatz (scale ignored)
    int index = 0;        // basis: |index>
    std::string name;

    static StateRef variational(int reg, std::string name = {});
    static StateRef fixed(ControlParams p, std::string name);
    bool same_state(const StateRef &o) const;
};

// Descriptor for |k> on n qubits, prepared with X gates.
StateRef fixed_basis_vector(int k, int n);

enum class OpKind { none, shift, shift_dag, blockenc };

struct Operand {
    StateRef state;
    OpKind op = OpKind::none;
    std::optional<CirculantBand> band;

    bool same(const Operand &o) const;
};

enum class TermKind { inner_product, diagonal_chain, blockenc_chain };

// value = sum_i (O_bra bra)_i (O_ket ket)_i prod_j (O_j port_j)_i over unit
// states; block encodings enter as A / alpha.
struct TermSpec {
    double coefficient = 1.0;
    TermKind kind = TermKind::inner_product;
    Operand bra;
    Operand ket;
    std::vector<Operand> ports;
    std::string label;
    int n = 0;

    void validate() const;
    // Structure key used to count distinct circuits (ignores fitted data).
    std::string structure_key() const;
    // Exact key used to merge identical terms.
    std::string identity_key() const;
    int block_encoding_count() const;
    bool uses_shift() const;
};

TermKind infer_kind(const TermSpec &t);

enum class Backend { circuit, algebraic };

const char *to_string(Backend b);

struct ExpectationResult {
    double value = 0.0;
    Backend backend = Backend::algebraic;
    std::vector<double> postselect_probs;
};

// Variational parameter sets bound to the register ids of a term.
struct Binding {
    const ControlParams *u = nullptr;
    const ControlParams *y = nullptr;
};

} // namespace qelast
