#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qtl/nn.hpp"
#include "qtl/rng.hpp"
#include "support/finite_diff.hpp"

using qtl::Activation;
using qtl::DenseLayer;
using qtl::Matrix;

namespace {

DenseLayer identity_layer(int n, Activation act = Activation::Identity) {
    DenseLayer layer;
    layer.W = Matrix(n, n);
    for (int i = 0; i < n; ++i) layer.W(i, i) = 1.0;
    layer.b.assign(n, 0.0);
    layer.activation = act;
    return layer;
}

}  // namespace

TEST_CASE("dense_forward applies the affine map and activation") {
    DenseLayer id2 = identity_layer(2);
    auto y = qtl::dense_forward(id2, std::vector<double>{0.3, -0.7});
    CHECK(y[0] == doctest::Approx(0.3));
    CHECK(y[1] == doctest::Approx(-0.7));

    DenseLayer tanh2 = identity_layer(2, Activation::Tanh);
    CHECK(qtl::dense_forward(tanh2, std::vector<double>{0.0, 0.0})[0] == doctest::Approx(0.0));
    CHECK(qtl::dense_forward(tanh2, std::vector<double>{100.0, 0.0})[0] == doctest::Approx(1.0));

    DenseLayer relu;
    relu.W = Matrix(1, 2);
    relu.W(0, 0) = 1.0;
    relu.W(0, 1) = 1.0;
    relu.b = {1.0};
    relu.activation = Activation::ReLU;
    CHECK(qtl::dense_forward(relu, std::vector<double>{-2.0, 0.5})[0] == doctest::Approx(0.0));

    CHECK_THROWS_AS(qtl::dense_forward(id2, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("dense_backward linear case has closed-form partials") {
    qtl::Rng rng(7);
    DenseLayer layer = qtl::make_dense(3, 2, Activation::Identity, rng);
    std::vector<double> x{0.5, -1.0, 2.0};
    std::vector<double> upstream{1.5, -0.25};
    auto g = qtl::dense_backward(layer, x, upstream);

    for (int r = 0; r < 2; ++r) {
        CHECK(g.db[r] == doctest::Approx(upstream[r]));
        for (int c = 0; c < 3; ++c) {
            CHECK(g.dW(r, c) == doctest::Approx(upstream[r] * x[c]));
        }
    }
    for (int c = 0; c < 3; ++c) {
        double expected = 0.0;
        for (int r = 0; r < 2; ++r) expected += layer.W(r, c) * upstream[r];
        CHECK(g.dx[c] == doctest::Approx(expected));
    }
}

TEST_CASE("tanh at zero pre-activation reduces to the linear case") {
    DenseLayer layer = identity_layer(2, Activation::Tanh);
    std::vector<double> x{0.0, 0.0};
    std::vector<double> upstream{0.7, -0.3};
    auto g = qtl::dense_backward(layer, x, upstream);
    CHECK(g.db[0] == doctest::Approx(0.7));
    CHECK(g.db[1] == doctest::Approx(-0.3));
    CHECK(g.dx[0] == doctest::Approx(0.7));
    CHECK(g.dx[1] == doctest::Approx(-0.3));
}

TEST_CASE("dense_backward matches finite differences for every activation") {
    qtl::Rng rng(11);
    for (Activation act : {Activation::Identity, Activation::Tanh, Activation::ReLU}) {
        for (int trial = 0; trial < 17; ++trial) {
            const int n_in = 1 + static_cast<int>(rng.uniform_int(8));
            const int n_out = 1 + static_cast<int>(rng.uniform_int(8));
            DenseLayer layer = qtl::make_dense(n_in, n_out, act, rng);
            std::vector<double> x(n_in), upstream(n_out);
            for (double& v : x) v = rng.uniform(-2, 2);
            for (double& v : upstream) v = rng.uniform(-1, 1);

            const auto grads = qtl::dense_backward(layer, x, upstream);
            const auto scalar = [&](const DenseLayer& l, const std::vector<double>& input) {
                const auto y = qtl::dense_forward(l, input);
                double s = 0.0;
                for (int i = 0; i < n_out; ++i) s += upstream[i] * y[i];
                return s;
            };

            for (int r = 0; r < n_out; ++r) {
                CHECK(std::abs(grads.db[r] - testutil::central_diff(
                                                 [&](double b) {
                                                     DenseLayer l = layer;
                                                     l.b[r] = b;
                                                     return scalar(l, x);
                                                 },
                                                 layer.b[r])) < 1e-6);
                for (int c = 0; c < n_in; ++c) {
                    CHECK(std::abs(grads.dW(r, c) - testutil::central_diff(
                                                        [&](double w) {
                                                            DenseLayer l = layer;
                                                            l.W(r, c) = w;
                                                            return scalar(l, x);
                                                        },
                                                        layer.W(r, c))) < 1e-6);
                }
            }
            for (int c = 0; c < n_in; ++c) {
                CHECK(std::abs(grads.dx[c] - testutil::central_diff(
                                                 [&](double v) {
                                                     std::vector<double> input = x;
                                                     input[c] = v;
                                                     return scalar(layer, input);
                                                 },
                                                 x[c])) < 1e-6);
            }
        }
    }
}

TEST_CASE("cross entropy on uniform logits is ln 2") {
    auto r = qtl::cross_entropy_loss(std::vector<double>{0.0, 0.0}, 0);
    CHECK(std::abs(r.loss - std::log(2.0)) < 1e-9);
    CHECK(r.dlogits[0] == doctest::Approx(-0.5));
    CHECK(r.dlogits[1] == doctest::Approx(0.5));
}

TEST_CASE("cross entropy is overflow-safe") {
    auto r = qtl::cross_entropy_loss(std::vector<double>{1000.0, 0.0}, 0);
    CHECK(std::isfinite(r.loss));
    CHECK(r.loss == doctest::Approx(0.0).epsilon(1e-12));

    auto miss = qtl::cross_entropy_loss(std::vector<double>{1000.0, 0.0}, 1);
    CHECK(std::isfinite(miss.loss));
    CHECK(miss.loss == doctest::Approx(1000.0));
}

TEST_CASE("cross entropy rejects out-of-range labels") {
    CHECK_THROWS_AS(qtl::cross_entropy_loss(std::vector<double>{0.0, 1.0}, 2), std::out_of_range);
    CHECK_THROWS_AS(qtl::cross_entropy_loss(std::vector<double>{0.0, 1.0}, -1), std::out_of_range);
}

TEST_CASE("cross entropy gradient matches finite differences") {
    qtl::Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_int(5));
        std::vector<double> logits(n);
        for (double& v : logits) v = rng.uniform(-3, 3);
        const int label = static_cast<int>(rng.uniform_int(n));
        const auto got = qtl::cross_entropy_loss(logits, label);
        const auto fd = testutil::central_diff_grad(
            [&](const std::vector<double>& l) { return qtl::cross_entropy_loss(l, label).loss; },
            logits);
        for (int i = 0; i < n; ++i) CHECK(std::abs(got.dlogits[i] - fd[i]) < 1e-6);
    }
}

TEST_CASE("softmax is a probability vector") {
    qtl::Rng rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_int(6));
        std::vector<double> logits(n);
        for (double& v : logits) v = rng.uniform(-30, 30);
        const auto p = qtl::softmax(logits);
        double total = 0.0;
        for (double v : p) {
            CHECK(v > 0.0);
            CHECK(v < 1.0 + 1e-15);
            total += v;
        }
        CHECK(std::abs(total - 1.0) < 1e-12);
    }
}

TEST_CASE("cross entropy is invariant under uniform logit shifts") {
    qtl::Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> logits{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const double shift = rng.uniform(-50, 50);
        std::vector<double> shifted = logits;
        for (double& v : shifted) v += shift;
        CHECK(std::abs(qtl::cross_entropy_loss(logits, 1).loss -
                       qtl::cross_entropy_loss(shifted, 1).loss) < 1e-9);
    }
}

TEST_CASE("first Adam step moves by about -lr * sign(g)") {
    double param = 1.0;
    double* params[] = {&param};
    qtl::Adam adam(0.01);
    adam.step(params, std::vector<double>{4.0});
    CHECK(param == doctest::Approx(1.0 - 0.01).epsilon(1e-6));
    CHECK(adam.step_count() == 1);
}

TEST_CASE("zero gradients leave parameters unchanged") {
    double a = 0.5, b = -0.25;
    double* params[] = {&a, &b};
    qtl::Adam adam(0.1);
    for (int i = 0; i < 10; ++i) adam.step(params, std::vector<double>{0.0, 0.0});
    CHECK(a == 0.5);
    CHECK(b == -0.25);
}

TEST_CASE("Adam matches an independent scalar trace") {
    // hand recursion over 10 steps with constant gradient
    const double lr = 0.05, beta1 = 0.9, beta2 = 0.999, eps = 1e-8, g = -2.5;
    double expected = 0.3, m = 0.0, v = 0.0;
    double param = 0.3;
    double* params[] = {&param};
    qtl::Adam adam(lr, beta1, beta2, eps);
    for (int t = 1; t <= 10; ++t) {
        m = beta1 * m + (1 - beta1) * g;
        v = beta2 * v + (1 - beta2) * g * g;
        const double m_hat = m / (1 - std::pow(beta1, t));
        const double v_hat = v / (1 - std::pow(beta2, t));
        expected -= lr * m_hat / (std::sqrt(v_hat) + eps);
        adam.step(params, std::vector<double>{g});
        CHECK(std::abs(param - expected) < 1e-12);
    }
}

TEST_CASE("Adam validates shapes") {
    double a = 0.0;
    double* params[] = {&a};
    qtl::Adam adam(0.01);
    CHECK_THROWS_AS(adam.step(params, std::vector<double>{1.0, 2.0}), std::invalid_argument);
    adam.step(params, std::vector<double>{1.0});
    double b = 0.0;
    double* grown[] = {&a, &b};
    CHECK_THROWS_AS(adam.step(grown, std::vector<double>{1.0, 2.0}), std::invalid_argument);
}
