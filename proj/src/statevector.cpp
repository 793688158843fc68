#include "qtl/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qtl {

namespace {

void check_qubit_count(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("n_qubits must be in [1, " + std::to_string(kMaxQubits) +
                                    "], got " + std::to_string(n_qubits));
    }
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    check_qubit_count(n_qubits);
    amps_.assign(std::size_t{1} << n_qubits, cdouble{0.0, 0.0});
    amps_[0] = cdouble{1.0, 0.0};
}

StateVector::StateVector(int n_qubits, std::vector<cdouble> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    check_qubit_count(n_qubits);
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("amplitude count must be 2^n_qubits");
    }
    double n2 = 0.0;
    for (const cdouble& a : amps_) n2 += std::norm(a);
    if (std::abs(n2 - 1.0) > 1e-10) {
        throw std::invalid_argument("state norm must be 1 (squared norm off by " +
                                    std::to_string(n2 - 1.0) + ")");
    }
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
    check_qubit_count(n_qubits);
    if (index >= (std::uint64_t{1} << n_qubits)) {
        throw std::out_of_range("basis index out of range");
    }
    StateVector s(n_qubits);
    s.amps_[0] = cdouble{0.0, 0.0};
    s.amps_[index] = cdouble{1.0, 0.0};
    return s;
}

void StateVector::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits_) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) +
                                " out of range for " + std::to_string(n_qubits_) + " qubits");
    }
}

void StateVector::hadamard(int target) {
    check_qubit(target);
    const std::size_t stride = std::size_t{1} << target;
    constexpr double inv_sqrt2 = 0.7071067811865475244;
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const cdouble a0 = amps_[i];
            const cdouble a1 = amps_[i + stride];
            amps_[i] = inv_sqrt2 * (a0 + a1);
            amps_[i + stride] = inv_sqrt2 * (a0 - a1);
        }
    }
}

void StateVector::rot_y(int target, double angle) {
    check_qubit(target);
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    const std::size_t stride = std::size_t{1} << target;
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const cdouble a0 = amps_[i];
            const cdouble a1 = amps_[i + stride];
            amps_[i] = c * a0 - s * a1;
            amps_[i + stride] = s * a0 + c * a1;
        }
    }
}

void StateVector::cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        throw std::invalid_argument("CNOT control and target must differ");
    }
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    for (std::size_t b = 0; b < amps_.size(); ++b) {
        if ((b & cmask) && !(b & tmask)) {
            std::swap(amps_[b], amps_[b | tmask]);
        }
    }
}

void StateVector::apply(const GateOp& gate) {
    switch (gate.kind) {
        case GateOp::Kind::Hadamard: hadamard(gate.target); break;
        case GateOp::Kind::RotY: rot_y(gate.target, gate.angle); break;
        case GateOp::Kind::Cnot: cnot(gate.control, gate.target); break;
    }
}

double StateVector::expect_z(int qubit) const {
    check_qubit(qubit);
    const std::size_t mask = std::size_t{1} << qubit;
    double value = 0.0;
    for (std::size_t b = 0; b < amps_.size(); ++b) {
        const double p = std::norm(amps_[b]);
        value += (b & mask) ? -p : p;
    }
    return value;
}

std::vector<double> StateVector::expect_z_all() const {
    std::vector<double> out(n_qubits_, 0.0);
    for (std::size_t b = 0; b < amps_.size(); ++b) {
        const double p = std::norm(amps_[b]);
        for (int k = 0; k < n_qubits_; ++k) {
            out[k] += (b >> k) & 1 ? -p : p;
        }
    }
    return out;
}

double StateVector::norm() const {
    double n2 = 0.0;
    for (const cdouble& a : amps_) n2 += std::norm(a);
    return std::sqrt(n2);
}

StateVector init_zero(int n_qubits) { return StateVector(n_qubits); }

StateVector apply_gate(const StateVector& state, const GateOp& gate) {
    StateVector out = state;
    out.apply(gate);
    return out;
}

double expect_z(const StateVector& state, int qubit) { return state.expect_z(qubit); }

std::vector<double> expect_z_all(const StateVector& state) { return state.expect_z_all(); }

}  // namespace qtl
