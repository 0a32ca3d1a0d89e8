#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "qelast/sim/circuit.hpp"

namespace qelast {

using cplx = std::complex<double>;

class StateVector {
  public:
    explicit StateVector(int num_qubits); // |0...0>
    StateVector(int num_qubits, std::vector<cplx> amplitudes);

    int num_qubits() const { return num_qubits_; }
    std::size_t size() const { return amps_.size(); }
    const std::vector<cplx> &amplitudes() const { return amps_; }
    std::vector<cplx> &amplitudes() { return amps_; }
    cplx operator[](std::size_t i) const { return amps_[i]; }

    double norm() const;
    void apply(const GateOp &op);
    void apply(const Circuit &c);

    // P(qubit = 0) - P(qubit = 1)
    double z_expectation(int qubit) const;

  private:
    int num_qubits_;
    std::vector<cplx> amps_;
};

StateVector apply_circuit(StateVector state, const Circuit &circuit);

// Runs the circuit from |0...0> and returns P(0) - P(1) on the ancilla.
double hadamard_ancilla_expectation(const Circuit &circuit, int ancilla);

inline constexpr double kPostselectThreshold = 1e-14;

// Projects the listed qubits on |0...0>, renormalizes, returns the branch
// probability.
std::pair<StateVector, double> postselect(const StateVector &state,
                                          const std::vector<int> &qubits);

} // namespace qelast
