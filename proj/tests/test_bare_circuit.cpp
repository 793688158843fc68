#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "qtl/bare_circuit.hpp"
#include "qtl/rng.hpp"
#include "qtl/statevector.hpp"

using qtl::BareCircuitSpec;
using qtl::cdouble;
using qtl::Matrix;
using qtl::StateVector;

namespace {

// independent closed form for one qubit: rotations about Y compose
// additively and there is no entangler, so <Z> = -sin(x*pi/2 + sum of w)
double single_qubit_expectation(double x, const std::vector<double>& weights) {
    const double total = std::accumulate(weights.begin(), weights.end(), x * M_PI_2);
    return -std::sin(total);
}

BareCircuitSpec make_spec(int n_qubits, const std::vector<std::vector<double>>& rows) {
    Matrix w(static_cast<int>(rows.size()), n_qubits);
    for (std::size_t l = 0; l < rows.size(); ++l)
        for (int k = 0; k < n_qubits; ++k) w(static_cast<int>(l), k) = rows[l][k];
    return BareCircuitSpec(n_qubits, std::move(w));
}

}  // namespace

TEST_CASE("embedding zeros gives the uniform superposition") {
    StateVector psi = qtl::embed(4, std::vector<double>{0, 0, 0, 0});
    for (const cdouble& a : psi.amplitudes()) {
        CHECK(std::abs(a - cdouble{0.25, 0}) < 1e-12);
    }
}

TEST_CASE("embedding x=1 on one qubit lands on |1>") {
    StateVector psi = qtl::embed(1, std::vector<double>{1.0});
    CHECK(std::abs(psi.amplitudes()[0]) < 1e-12);
    CHECK(std::abs(psi.amplitudes()[1] - cdouble{1, 0}) < 1e-12);
    CHECK(psi.expect_z(0) == doctest::Approx(-1.0));
}

TEST_CASE("embedding arity mismatch is rejected") {
    CHECK_THROWS_AS(qtl::embed(4, std::vector<double>{0, 0, 0}), std::invalid_argument);
}

TEST_CASE("embedding sweeps <Z> as -sin(x*pi/2)") {
    for (double x : {-1.0, -0.5, -0.1, 0.0, 0.3, 0.8, 1.0}) {
        StateVector psi = qtl::embed(1, std::span<const double>(&x, 1));
        CHECK(psi.expect_z(0) == doctest::Approx(-std::sin(x * M_PI_2)).epsilon(1e-12));
    }
}

TEST_CASE("entangler fixes the all-zeros state") {
    StateVector psi = qtl::entangler(qtl::init_zero(4));
    CHECK(std::abs(psi.amplitudes()[0] - cdouble{1, 0}) < 1e-12);
}

TEST_CASE("entangler on two qubits is a single CNOT") {
    StateVector psi = qtl::entangler(StateVector::basis(2, 1));
    CHECK(std::abs(psi.amplitudes()[3] - cdouble{1, 0}) < 1e-12);
}

TEST_CASE("entangler is the identity on one qubit") {
    StateVector psi = qtl::embed(1, std::vector<double>{0.37});
    StateVector out = qtl::entangler(psi);
    CHECK(psi.amplitudes() == out.amplitudes());
}

TEST_CASE("entangler permutes the uniform superposition onto itself") {
    // brute force: the CNOT chain maps each of the 16 basis states to a
    // distinct basis state, so equal amplitudes stay equal
    StateVector uniform = qtl::embed(4, std::vector<double>{0, 0, 0, 0});
    StateVector out = qtl::entangler(uniform);
    for (std::size_t b = 0; b < out.dim(); ++b) {
        CHECK(std::abs(out.amplitudes()[b] - cdouble{0.25, 0}) < 1e-12);
    }

    // and it is really a permutation on basis states
    std::vector<bool> hit(16, false);
    for (std::size_t b = 0; b < 16; ++b) {
        StateVector basis = qtl::entangler(StateVector::basis(4, b));
        int nonzero = 0;
        for (std::size_t i = 0; i < 16; ++i) {
            if (std::abs(basis.amplitudes()[i]) > 0.5) {
                ++nonzero;
                CHECK(!hit[i]);
                hit[i] = true;
            }
        }
        CHECK(nonzero == 1);
    }
}

TEST_CASE("variational layer with zero weights fixes |0000>") {
    StateVector psi = qtl::variational_layer(qtl::init_zero(4), std::vector<double>{0, 0, 0, 0});
    CHECK(std::abs(psi.amplitudes()[0] - cdouble{1, 0}) < 1e-12);
}

TEST_CASE("variational layer on one qubit skips the entangler") {
    StateVector psi = qtl::variational_layer(qtl::init_zero(1), std::vector<double>{M_PI});
    CHECK(std::abs(psi.amplitudes()[1] - cdouble{1, 0}) < 1e-12);
}

TEST_CASE("variational layer applies rotations before the entangler") {
    // w = [pi, 0] on |00>: qubit 0 flips to 1, then CNOT sets qubit 1
    StateVector psi = qtl::variational_layer(qtl::init_zero(2), std::vector<double>{M_PI, 0});
    CHECK(std::abs(psi.amplitudes()[3] - cdouble{1, 0}) < 1e-12);
}

TEST_CASE("variational layer rejects arity mismatch") {
    CHECK_THROWS_AS(qtl::variational_layer(qtl::init_zero(3), std::vector<double>{0.1, 0.2}),
                    std::invalid_argument);
}

TEST_CASE("depth-0 circuit measures the embedding alone") {
    BareCircuitSpec spec(4, Matrix(0, 4));
    auto y = qtl::run_bare(spec, std::vector<double>{0, 0, 0, 0});
    for (double v : y) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));

    std::vector<double> x{0.3, -0.7, 0.1, 0.9};
    auto yx = qtl::run_bare(spec, x);
    StateVector embedded = qtl::embed(4, x);
    auto direct = embedded.expect_z_all();
    for (int k = 0; k < 4; ++k) CHECK(yx[k] == doctest::Approx(direct[k]).epsilon(1e-12));
}

TEST_CASE("single qubit depth-1 closed form") {
    auto spec = make_spec(1, {{0.0}});
    CHECK(qtl::run_bare(spec, std::vector<double>{0.0})[0] == doctest::Approx(0.0).epsilon(1e-12));

    for (double w : {-1.2, -0.4, 0.0, 0.9, 2.3}) {
        for (double x : {-1.0, -0.3, 0.0, 0.5, 1.0}) {
            auto s = make_spec(1, {{w}});
            const double got = qtl::run_bare(s, std::span<const double>(&x, 1))[0];
            CHECK(got == doctest::Approx(-std::sin(x * M_PI_2 + w)).epsilon(1e-10));
        }
    }
}

TEST_CASE("single qubit rotations compose additively across layers") {
    qtl::Rng rng(555);
    for (int trial = 0; trial < 50; ++trial) {
        const int depth = 1 + static_cast<int>(rng.uniform_int(5));
        std::vector<std::vector<double>> rows(depth, std::vector<double>(1));
        std::vector<double> flat;
        for (auto& r : rows) {
            r[0] = rng.uniform(-M_PI, M_PI);
            flat.push_back(r[0]);
        }
        const double x = rng.uniform(-1, 1);
        auto spec = make_spec(1, rows);
        CHECK(qtl::run_bare(spec, std::span<const double>(&x, 1))[0] ==
              doctest::Approx(single_qubit_expectation(x, flat)).epsilon(1e-10));
    }
}

TEST_CASE("depth-5 zero-weight circuit on zero input stays balanced") {
    // brute force expectation: the embedding is uniform over all 16 basis
    // states and every zero-rotation layer only permutes basis states
    auto spec = make_spec(4, {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
    auto y = qtl::run_bare(spec, std::vector<double>{0, 0, 0, 0});
    for (double v : y) CHECK(v == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("run_bare outputs stay in [-1, 1]") {
    qtl::Rng rng(808);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform_int(4));
        const int depth = static_cast<int>(rng.uniform_int(5));
        Matrix w(depth, n);
        for (double& v : w.data) v = rng.uniform(-M_PI, M_PI);
        std::vector<double> x(n);
        for (double& v : x) v = rng.uniform(-1, 1);
        for (double v : qtl::run_bare(BareCircuitSpec(n, w), x)) {
            CHECK(v >= -1.0 - 1e-12);
            CHECK(v <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("appending a zero-weight layer only applies the entangler") {
    qtl::Rng rng(606);
    for (int trial = 0; trial < 20; ++trial) {
        // n = 1: an extra zero layer must change nothing at all
        Matrix w1(2, 1);
        for (double& v : w1.data) v = rng.uniform(-M_PI, M_PI);
        Matrix w1ext(3, 1);
        std::copy(w1.data.begin(), w1.data.end(), w1ext.data.begin());
        w1ext(2, 0) = 0.0;
        const double x = rng.uniform(-1, 1);
        CHECK(qtl::run_bare(BareCircuitSpec(1, w1), std::span<const double>(&x, 1))[0] ==
              doctest::Approx(qtl::run_bare(BareCircuitSpec(1, w1ext),
                                            std::span<const double>(&x, 1))[0])
                  .epsilon(1e-12));

        // n = 3: the appended layer must equal the entangler's action on the
        // intermediate state
        Matrix w3(2, 3);
        for (double& v : w3.data) v = rng.uniform(-M_PI, M_PI);
        Matrix w3ext(3, 3);
        std::copy(w3.data.begin(), w3.data.end(), w3ext.data.begin());
        std::vector<double> x3{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};

        StateVector mid = qtl::embed(3, x3);
        mid = qtl::variational_layer(mid, w3.row(0));
        mid = qtl::variational_layer(mid, w3.row(1));
        StateVector entangled = qtl::entangler(mid);

        auto extended = qtl::run_bare(BareCircuitSpec(3, w3ext), x3);
        auto expected = entangled.expect_z_all();
        for (int k = 0; k < 3; ++k) {
            CHECK(extended[k] == doctest::Approx(expected[k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("spec validates weight shape") {
    CHECK_THROWS_AS(BareCircuitSpec(4, Matrix(2, 3)), std::invalid_argument);
    CHECK_NOTHROW(BareCircuitSpec(4, Matrix(0, 4)));
    CHECK_NOTHROW(BareCircuitSpec(4, Matrix(0, 0)));  // empty shape normalized
}
