#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qtl/bare_circuit.hpp"
#include "qtl/matrix.hpp"

namespace qtl {

// Exact partial derivatives of every circuit output with respect to every
// variational weight and every embedded input coordinate.
struct QuantumJacobians {
    int n_qubits = 0;
    int depth = 0;
    // d_weights[(out * depth + layer) * n_qubits + qubit] = d y_out / d w(layer, qubit)
    std::vector<double> d_weights;
    // d_inputs(out, in) = d y_out / d x_in
    Matrix d_inputs;

    double weight_grad(int out, int layer, int qubit) const {
        return d_weights[(static_cast<std::size_t>(out) * depth + layer) * n_qubits + qubit];
    }
};

// Two-term parameter-shift rule for R_y generators: shifting one weight by
// +-pi/2 and halving the difference gives the exact derivative of all
// outputs with respect to that weight.
std::vector<double> shift_grad_weight(const BareCircuitSpec& spec, std::span<const double> x,
                                      int layer, int qubit);

// Same rule applied to the embedding angle x_k * pi/2: shifting x_k by +-1
// shifts the angle by +-pi/2; the chain factor pi/2 converts the angle
// derivative into d/dx_k.
std::vector<double> shift_grad_input(const BareCircuitSpec& spec, std::span<const double> x,
                                     int qubit);

// Assembles all partials. Costs exactly 2 * (depth * n_qubits + n_qubits)
// bare-circuit evaluations; eval_count receives that number when non-null.
QuantumJacobians bare_jacobians(const BareCircuitSpec& spec, std::span<const double> x,
                                std::uint64_t* eval_count = nullptr);

}  // namespace qtl
