#include "qtl/parameter_shift.hpp"

#include <cmath>
#include <stdexcept>

namespace qtl {

namespace {

void check_indices(const BareCircuitSpec& spec, int layer, int qubit) {
    if (layer < 0 || layer >= spec.depth()) {
        throw std::out_of_range("layer index out of range");
    }
    if (qubit < 0 || qubit >= spec.n_qubits) {
        throw std::out_of_range("qubit index out of range");
    }
}

}  // namespace

std::vector<double> shift_grad_weight(const BareCircuitSpec& spec, std::span<const double> x,
                                      int layer, int qubit) {
    check_indices(spec, layer, qubit);
    BareCircuitSpec shifted = spec;
    double& w = shifted.weights(layer, qubit);
    const double original = w;

    w = original + M_PI_2;
    std::vector<double> plus = run_bare(shifted, x);
    w = original - M_PI_2;
    std::vector<double> minus = run_bare(shifted, x);
    w = original;

    for (std::size_t i = 0; i < plus.size(); ++i) {
        plus[i] = 0.5 * (plus[i] - minus[i]);
    }
    return plus;
}

std::vector<double> shift_grad_input(const BareCircuitSpec& spec, std::span<const double> x,
                                     int qubit) {
    if (qubit < 0 || qubit >= spec.n_qubits) {
        throw std::out_of_range("qubit index out of range");
    }
    if (x.size() != static_cast<std::size_t>(spec.n_qubits)) {
        throw std::invalid_argument("input arity mismatch");
    }
    std::vector<double> shifted(x.begin(), x.end());

    shifted[qubit] = x[qubit] + 1.0;  // embedding angle +pi/2
    std::vector<double> plus = run_bare(spec, shifted);
    shifted[qubit] = x[qubit] - 1.0;  // embedding angle -pi/2
    std::vector<double> minus = run_bare(spec, shifted);

    for (std::size_t i = 0; i < plus.size(); ++i) {
        plus[i] = M_PI_2 * 0.5 * (plus[i] - minus[i]);
    }
    return plus;
}

QuantumJacobians bare_jacobians(const BareCircuitSpec& spec, std::span<const double> x,
                                std::uint64_t* eval_count) {
    const int n = spec.n_qubits;
    const int depth = spec.depth();

    QuantumJacobians jac;
    jac.n_qubits = n;
    jac.depth = depth;
    jac.d_weights.assign(static_cast<std::size_t>(n) * depth * n, 0.0);
    jac.d_inputs = Matrix(n, n);

    std::uint64_t evals = 0;
    for (int layer = 0; layer < depth; ++layer) {
        for (int qubit = 0; qubit < n; ++qubit) {
            const std::vector<double> grad = shift_grad_weight(spec, x, layer, qubit);
            evals += 2;
            for (int out = 0; out < n; ++out) {
                jac.d_weights[(static_cast<std::size_t>(out) * depth + layer) * n + qubit] =
                    grad[out];
            }
        }
    }
    for (int qubit = 0; qubit < n; ++qubit) {
        const std::vector<double> grad = shift_grad_input(spec, x, qubit);
        evals += 2;
        for (int out = 0; out < n; ++out) {
            jac.d_inputs(out, qubit) = grad[out];
        }
    }

    if (eval_count != nullptr) {
        *eval_count = evals;
    }
    return jac;
}

}  // namespace qtl
