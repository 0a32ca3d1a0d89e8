#pragma once

#include <map>
#include <string>

#include "qelast/sim/circuit.hpp"

namespace qelast {

struct ResourceReport {
    int width = 0;
    int depth = 0;
    long total_gates = 0;
    long two_qubit_gates = 0;
    std::map<std::string, long> gate_counts;
    std::map<Segment, int> segment_depth;
};

// Rewrites every gate into one- and two-qubit basis gates
// {H, X, Y, Z, RY, RZ, P, CX, CZ, CRY, CRZ, CP}.
Circuit decompose(const Circuit &c);

// Longest dependency chain of the op list, as is (no decomposition).
int circuit_depth(const Circuit &c);

ResourceReport resource_report(const Circuit &c);

const char *segment_name(Segment s);

} // namespace qelast
