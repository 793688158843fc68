#pragma once

#include <span>
#include <vector>

#include "qtl/matrix.hpp"
#include "qtl/statevector.hpp"

namespace qtl {

// Variational circuit description: embedding + `depth` rotation layers with
// an entangler, measured as per-qubit <Z>. Inputs and outputs both have
// n_qubits entries. weights(l, k) is the R_y angle of layer l on qubit k.
struct BareCircuitSpec {
    int n_qubits = 0;
    Matrix weights;  // depth x n_qubits, radians

    BareCircuitSpec() = default;
    BareCircuitSpec(int n_qubits_, Matrix weights_);

    int depth() const { return weights.rows; }

    bool operator==(const BareCircuitSpec&) const = default;
};

// |x> = prod_k R_y(x_k * pi/2) H |0...0>; each qubit starts in a balanced
// superposition and is tilted by its input coordinate.
StateVector embed(int n_qubits, std::span<const double> x);

// CNOT(k, k+1) for k = 0..n-2 in ascending order; identity on one qubit.
void entangle(StateVector& state);
StateVector entangler(const StateVector& state);

// R_y(w_row[k]) on every qubit, then the entangler.
StateVector variational_layer(const StateVector& state, std::span<const double> w_row);

// Full classical-in/classical-out evaluation: embed, apply all layers,
// measure <Z> on every qubit.
std::vector<double> run_bare(const BareCircuitSpec& spec, std::span<const double> x);

}  // namespace qtl
