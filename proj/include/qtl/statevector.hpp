#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace qtl {

using cdouble = std::complex<double>;

// Memory guard: 2^24 amplitudes = 256 MiB of complex doubles.
inline constexpr int kMaxQubits = 24;

// One gate from the supported set {H, R_y(angle), CNOT}.
struct GateOp {
    enum class Kind { Hadamard, RotY, Cnot };

    Kind kind = Kind::Hadamard;
    int target = 0;
    int control = -1;    // CNOT only
    double angle = 0.0;  // RotY only

    static GateOp hadamard(int target) { return {Kind::Hadamard, target, -1, 0.0}; }
    static GateOp rot_y(int target, double angle) { return {Kind::RotY, target, -1, angle}; }
    static GateOp cnot(int control, int target) { return {Kind::Cnot, target, control, 0.0}; }
};

// Exact n-qubit pure state.
//
// Qubit ordering is little-endian: qubit k corresponds to bit k of the
// amplitude index, so basis index b holds qubit k in state (b >> k) & 1.
//
// R_y convention: R_y(t) = [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]].
// Under this convention H followed by R_y(x*pi/2) sweeps <Z> over [-1, 1]
// as x runs over [-1, 1].
class StateVector {
public:
    // |0...0>
    explicit StateVector(int n_qubits);

    // from explicit amplitudes; the squared 2-norm must be 1 within 1e-10
    StateVector(int n_qubits, std::vector<cdouble> amplitudes);

    static StateVector basis(int n_qubits, std::uint64_t index);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cdouble>& amplitudes() const { return amps_; }

    // In-place gate application over strided 2x2 blocks (stride 2^target).
    void hadamard(int target);
    void rot_y(int target, double angle);
    void cnot(int control, int target);
    void apply(const GateOp& gate);

    // <Z_qubit>, in [-1, 1]
    double expect_z(int qubit) const;
    std::vector<double> expect_z_all() const;

    double norm() const;

private:
    int n_qubits_ = 0;
    std::vector<cdouble> amps_;

    void check_qubit(int qubit) const;
};

// Pure variants; the input state is never modified.
StateVector init_zero(int n_qubits);
StateVector apply_gate(const StateVector& state, const GateOp& gate);
double expect_z(const StateVector& state, int qubit);
std::vector<double> expect_z_all(const StateVector& state);

}  // namespace qtl
