#pragma once

#include <string>
#include <vector>

#include "qelast/primitives/adder.hpp"
#include "qelast/sim/circuit.hpp"

namespace qelast {

enum class BandKind { I, II }; // shape values / shape derivatives

// Circulant matrix with entry (i, i + r mod N) = coeffs[r].
struct CirculantBand {
    int size = 0;
    std::vector<double> coeffs;
    int order = 1;
    BandKind kind = BandKind::I;
    int g = 0;

    double alpha() const;
    std::string label() const;
    std::vector<double> apply(const std::vector<double> &x) const;
    bool operator==(const CirculantBand &o) const;
};

CirculantBand build_circulant(int order, BandKind kind, int g, int size);
CirculantBand make_band(std::vector<double> coeffs, int size);

// Index qubits plus one data qubit.
int encode_ancilla_count(const CirculantBand &band);

// Appends the LCU block encoding of band / alpha acting on `reg`, using
// `anc` (encode_ancilla_count qubits) and gated by `controls`.
void append_block_encoding(Circuit &c, const CirculantBand &band, const std::vector<int> &reg,
                           const std::vector<int> &anc, const std::vector<int> &controls = {},
                           AdderKind adder = AdderKind::mcx_cascade);

struct BlockEncoding {
    Circuit circuit; // register 0..n-1, then encode ancillas, then pool
    std::vector<int> encode_ancillas;
    double subnormalization = 1.0;
    CirculantBand matrix;
    int n = 0;
};

BlockEncoding build_block_encoding(const CirculantBand &band,
                                   AdderKind adder = AdderKind::mcx_cascade);

} // namespace qelast
