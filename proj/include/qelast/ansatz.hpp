#pragma once

#include <vector>

#include "qelast/sim/circuit.hpp"

namespace qelast {

struct ControlParams {
    double scale = 1.0;
    std::vector<double> angles;
    int n = 0;
    int d = 0;

    static int angle_count(int n, int d) { return n * (d + 1); }
    void validate() const;
};

// d x [RY on every qubit; CX(i, i+1) chain] + final RY layer. Angle (layer l,
// qubit q) is angles[l * n + q].
Circuit build_ansatz(int n, int d, const std::vector<double> &angles);

// Ansatz on qubits 0..n-1, controlled by `control` (>= n); width control + 1.
Circuit controlled_ansatz(int n, int d, const std::vector<double> &angles, int control);

// V(angles)|0>, real amplitudes, computed on a real array.
std::vector<double> unit_state(int n, int d, const std::vector<double> &angles);
std::vector<double> realize_vector(const ControlParams &p);

// Derivative of unit_state with respect to each angle (column-major,
// p columns of length 2^n).
std::vector<std::vector<double>> unit_state_jacobian(int n, int d,
                                                     const std::vector<double> &angles);

} // namespace qelast
