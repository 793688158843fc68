#include "qtl/bare_circuit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qtl {

namespace {

void check_arity(std::size_t got, int expected, const char* what) {
    if (got != static_cast<std::size_t>(expected)) {
        throw std::invalid_argument(std::string(what) + ": expected " +
                                    std::to_string(expected) + " entries, got " +
                                    std::to_string(got));
    }
}

}  // namespace

BareCircuitSpec::BareCircuitSpec(int n_qubits_, Matrix weights_)
    : n_qubits(n_qubits_), weights(std::move(weights_)) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("BareCircuitSpec: n_qubits out of range");
    }
    if (weights.rows > 0 && weights.cols != n_qubits) {
        throw std::invalid_argument("BareCircuitSpec: weights must be depth x n_qubits");
    }
    if (weights.rows == 0) {
        weights.cols = n_qubits;  // normalize the empty shape
    }
}

StateVector embed(int n_qubits, std::span<const double> x) {
    check_arity(x.size(), n_qubits, "embed input");
    StateVector state(n_qubits);
    for (int k = 0; k < n_qubits; ++k) {
        state.hadamard(k);
        state.rot_y(k, x[k] * M_PI_2);
    }
    return state;
}

void entangle(StateVector& state) {
    for (int k = 0; k + 1 < state.n_qubits(); ++k) {
        state.cnot(k, k + 1);
    }
}

StateVector entangler(const StateVector& state) {
    StateVector out = state;
    entangle(out);
    return out;
}

StateVector variational_layer(const StateVector& state, std::span<const double> w_row) {
    check_arity(w_row.size(), state.n_qubits(), "variational layer weights");
    StateVector out = state;
    for (int k = 0; k < out.n_qubits(); ++k) {
        out.rot_y(k, w_row[k]);
    }
    entangle(out);
    return out;
}

std::vector<double> run_bare(const BareCircuitSpec& spec, std::span<const double> x) {
    check_arity(x.size(), spec.n_qubits, "run_bare input");
    StateVector state = embed(spec.n_qubits, x);
    for (int layer = 0; layer < spec.depth(); ++layer) {
        const auto row = spec.weights.row(layer);
        for (int k = 0; k < spec.n_qubits; ++k) {
            state.rot_y(k, row[k]);
        }
        entangle(state);
    }
    return state.expect_z_all();
}

}  // namespace qtl
