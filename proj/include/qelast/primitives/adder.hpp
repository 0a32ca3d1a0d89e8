#pragma once

#include <vector>

#include "qelast/sim/circuit.hpp"

namespace qelast {

enum class AdderKind { mcx_cascade, qft };

inline int adder_pool_size(int n, AdderKind kind) {
    return kind == AdderKind::mcx_cascade && n >= 3 ? n - 2 : 0;
}

// Appends the cyclic shift |k> -> |k-1 mod 2^n> on `reg` (little-endian),
// or its inverse. `controls` gate the whole shift.
void append_shift(Circuit &c, const std::vector<int> &reg, bool inverse,
                  const std::vector<int> &controls = {},
                  AdderKind kind = AdderKind::mcx_cascade);

// Register on qubits 0..n-1; the cascade variant adds n-2 pool qubits.
Circuit adder_circuit(int n, bool inverse, AdderKind kind = AdderKind::mcx_cascade);

// Classical action: (A x)_i = x_{i+1}, (A^dagger x)_i = x_{i-1}.
std::vector<double> shift_vector(const std::vector<double> &x, bool inverse);

void append_qft(Circuit &c, const std::vector<int> &reg, bool inverse);

} // namespace qelast
