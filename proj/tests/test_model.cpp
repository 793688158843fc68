#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qtl/model.hpp"
#include "support/finite_diff.hpp"

using qtl::BareClassifier;
using qtl::ClassicalBaseline;
using qtl::DressedCircuit;
using qtl::Matrix;
using qtl::Model;
using qtl::Rng;

namespace {

qtl::Dataset toy_dataset(int n_samples, int width, int n_classes, Rng& rng) {
    qtl::Dataset d;
    d.features = Matrix(n_samples, width);
    d.labels.resize(n_samples);
    d.n_classes = n_classes;
    for (int i = 0; i < n_samples; ++i) {
        for (int j = 0; j < width; ++j) d.features(i, j) = rng.uniform(-1, 1);
        d.labels[i] = static_cast<int>(rng.uniform_int(n_classes));
    }
    return d;
}

// linearly separable toy data: label = sign of first coordinate
qtl::Dataset separable_dataset(int n_samples, int width, Rng& rng) {
    qtl::Dataset d = toy_dataset(n_samples, width, 2, rng);
    for (int i = 0; i < n_samples; ++i) d.labels[i] = d.features(i, 0) > 0 ? 1 : 0;
    return d;
}

}  // namespace

TEST_CASE("dressed forward with a zeroed head returns the head bias") {
    Rng rng(1);
    DressedCircuit model = qtl::make_dressed(2, 4, 2, 2, rng);
    for (double& w : model.post.W.data) w = 0.0;
    model.post.b = {0.25, -1.5};
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> x{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const auto logits = qtl::forward(Model{model}, x);
        CHECK(logits[0] == doctest::Approx(0.25));
        CHECK(logits[1] == doctest::Approx(-1.5));
    }
}

TEST_CASE("dressed forward unrolls to post(run_bare(bare, pre(x)))") {
    Rng rng(2);
    DressedCircuit model = qtl::make_dressed(4, 4, 0, 2, rng);
    // pass-through pre-layer: identity weights, tanh activation
    model.pre.W = Matrix(4, 4);
    for (int i = 0; i < 4; ++i) model.pre.W(i, i) = 1.0;
    model.pre.b.assign(4, 0.0);

    std::vector<double> x{0.4, -0.8, 1.7, 0.0};
    std::vector<double> squashed(4);
    for (int i = 0; i < 4; ++i) squashed[i] = std::tanh(x[i]);
    const auto expected =
        qtl::dense_forward(model.post, qtl::expect_z_all(qtl::embed(4, squashed)));
    const auto got = qtl::forward(Model{model}, x);
    for (int i = 0; i < 2; ++i) CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("baseline with identity layers passes inputs through") {
    ClassicalBaseline model;
    for (int i = 0; i < 2; ++i) {
        qtl::DenseLayer layer;
        layer.W = Matrix(3, 3);
        for (int k = 0; k < 3; ++k) layer.W(k, k) = 1.0;
        layer.b.assign(3, 0.0);
        layer.activation = qtl::Activation::Identity;
        model.layers.push_back(layer);
    }
    const auto y = qtl::forward(Model{model}, std::vector<double>{0.1, -2.0, 0.7});
    CHECK(y[0] == doctest::Approx(0.1));
    CHECK(y[1] == doctest::Approx(-2.0));
    CHECK(y[2] == doctest::Approx(0.7));
}

TEST_CASE("forward validates input arity") {
    Rng rng(3);
    Model model = qtl::make_dressed(2, 3, 1, 2, rng);
    CHECK_THROWS_AS(qtl::forward(model, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("predict takes the argmax with lowest-index ties") {
    Rng rng(4);
    DressedCircuit model = qtl::make_dressed(2, 2, 0, 2, rng);
    for (double& w : model.post.W.data) w = 0.0;

    model.post.b = {0.2, 0.7};
    CHECK(qtl::predict(Model{model}, std::vector<double>{0, 0}) == 1);
    model.post.b = {0.5, 0.5};
    CHECK(qtl::predict(Model{model}, std::vector<double>{0, 0}) == 0);
    model.post.b = {0.9, 0.1};
    CHECK(qtl::predict(Model{model}, std::vector<double>{0, 0}) == 0);
}

TEST_CASE("uniform logit shifts never change the prediction") {
    Rng rng(5);
    DressedCircuit model = qtl::make_dressed(3, 3, 2, 3, rng);
    DressedCircuit shifted = model;
    const double delta = 17.5;
    for (double& b : shifted.post.b) b += delta;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        CHECK(qtl::predict(Model{model}, x) == qtl::predict(Model{shifted}, x));
    }
}

TEST_CASE("positive rescaling of the head never changes the prediction") {
    Rng rng(6);
    DressedCircuit model = qtl::make_dressed(2, 3, 1, 3, rng);
    DressedCircuit scaled = model;
    for (double& w : scaled.post.W.data) w *= 3.5;
    for (double& b : scaled.post.b) b *= 3.5;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        CHECK(qtl::predict(Model{model}, x) == qtl::predict(Model{scaled}, x));
    }
}

TEST_CASE("logits stay finite over [-10, 10] inputs") {
    Rng rng(7);
    Model model = qtl::make_dressed(2, 4, 3, 2, rng);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x{rng.uniform(-10, 10), rng.uniform(-10, 10)};
        for (double v : qtl::forward(model, x)) CHECK(std::isfinite(v));
    }
}

TEST_CASE("collect_params respects freezing") {
    Rng rng(8);
    DressedCircuit model = qtl::make_dressed(2, 3, 2, 2, rng);
    // 2->3 pre: 9 params; 2x3 quantum: 6; 3->2 post: 8
    Model as_model{model};
    CHECK(qtl::param_count(as_model) == 9 + 6 + 8);

    model.quantum_frozen = true;
    Model frozen_q{model};
    CHECK(qtl::param_count(frozen_q) == 9 + 8);

    model.pre.frozen = true;
    model.post.frozen = true;
    Model frozen_all{model};
    CHECK(qtl::param_count(frozen_all) == 0);
}

TEST_CASE("loss gradients match end-to-end finite differences (dressed)") {
    Rng rng(9);
    Model model = qtl::make_dressed(3, 2, 2, 2, rng);
    // nudge weights away from the near-zero init so derivatives are generic
    for (double* p : qtl::collect_params(model)) *p += rng.uniform(-0.3, 0.3);

    qtl::Dataset data = toy_dataset(3, 3, 2, rng);
    const std::vector<int> batch{0, 1, 2};

    const qtl::BatchGrads got = qtl::loss_and_grads(model, data, batch);
    const std::vector<double*> params = qtl::collect_params(model);
    REQUIRE(got.grads.size() == params.size());

    for (std::size_t i = 0; i < params.size(); ++i) {
        const double original = *params[i];
        *params[i] = original + 1e-4;
        const double plus = qtl::loss_and_grads(model, data, batch).loss;
        *params[i] = original - 1e-4;
        const double minus = qtl::loss_and_grads(model, data, batch).loss;
        *params[i] = original;
        const double fd = (plus - minus) / 2e-4;
        CAPTURE(i);
        CHECK(std::abs(got.grads[i] - fd) < 1e-4);
    }
}

TEST_CASE("loss gradients match finite differences (baseline and bare classifier)") {
    Rng rng(10);
    qtl::Dataset data = toy_dataset(4, 3, 2, rng);
    const std::vector<int> batch{0, 1, 2, 3};

    std::vector<Model> models;
    models.emplace_back(qtl::make_baseline({3, 4, 2}, rng));
    models.emplace_back(qtl::make_bare_classifier(3, 2, 2, rng));
    for (Model& model : models) {
        for (double* p : qtl::collect_params(model)) *p += rng.uniform(-0.3, 0.3);
        const qtl::BatchGrads got = qtl::loss_and_grads(model, data, batch);
        const std::vector<double*> params = qtl::collect_params(model);
        for (std::size_t i = 0; i < params.size(); ++i) {
            const double original = *params[i];
            *params[i] = original + 1e-4;
            const double plus = qtl::loss_and_grads(model, data, batch).loss;
            *params[i] = original - 1e-4;
            const double minus = qtl::loss_and_grads(model, data, batch).loss;
            *params[i] = original;
            CHECK(std::abs(got.grads[i] - (plus - minus) / 2e-4) < 1e-4);
        }
    }
}

TEST_CASE("frozen quantum block contributes no gradient entries") {
    Rng rng(11);
    DressedCircuit model = qtl::make_dressed(2, 2, 2, 2, rng);
    model.quantum_frozen = true;
    Model frozen{model};
    qtl::Dataset data = toy_dataset(2, 2, 2, rng);
    const qtl::BatchGrads grads = qtl::loss_and_grads(frozen, data, std::vector<int>{0, 1});
    CHECK(grads.grads.size() == qtl::param_count(frozen));
    CHECK(grads.grads.size() == 6 + 6);  // pre 2->2 and post 2->2 only
}

TEST_CASE("a duplicated sample gives the same loss as the single sample") {
    Rng rng(12);
    Model model = qtl::make_dressed(2, 2, 1, 2, rng);
    qtl::Dataset data = toy_dataset(3, 2, 2, rng);
    const auto single = qtl::loss_and_grads(model, data, std::vector<int>{1});
    const auto doubled = qtl::loss_and_grads(model, data, std::vector<int>{1, 1});
    CHECK(single.loss == doctest::Approx(doubled.loss).epsilon(1e-12));
    for (std::size_t i = 0; i < single.grads.size(); ++i) {
        CHECK(single.grads[i] == doctest::Approx(doubled.grads[i]).epsilon(1e-12));
    }
}

TEST_CASE("empty batches are rejected") {
    Rng rng(13);
    Model model = qtl::make_baseline({2, 2}, rng);
    qtl::Dataset data = toy_dataset(2, 2, 2, rng);
    CHECK_THROWS_AS(qtl::loss_and_grads(model, data, std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("zero learning rate leaves parameters unchanged with a flat trace") {
    Rng rng(14);
    Model model = qtl::make_dressed(2, 2, 1, 2, rng);
    const Model before = model;
    qtl::Dataset data = toy_dataset(12, 2, 2, rng);

    qtl::TrainConfig config;
    config.iterations = 8;
    config.batch_size = 4;
    config.learning_rate = 0.0;
    config.seed = 5;
    const qtl::TrainResult result = qtl::train(model, data, data, config);
    CHECK(model == before);

    // all batch losses computed from identical parameters on the same data
    // permutation chunking may differ per epoch, so only assert the params
    CHECK(result.trace.size() == 9);
}

TEST_CASE("training is deterministic for a fixed seed") {
    Rng rng_a(15);
    Rng rng_b(15);
    Model a = qtl::make_dressed(2, 2, 1, 2, rng_a);
    Model b = qtl::make_dressed(2, 2, 1, 2, rng_b);
    Rng data_rng(16);
    qtl::Dataset data = separable_dataset(20, 2, data_rng);

    qtl::TrainConfig config;
    config.iterations = 15;
    config.batch_size = 5;
    config.learning_rate = 0.05;
    config.seed = 99;
    const auto trace_a = qtl::train(a, data, data, config);
    const auto trace_b = qtl::train(b, data, data, config);
    CHECK(a == b);
    CHECK(trace_a.trace == trace_b.trace);
}

TEST_CASE("median final loss over 5 seeds beats the initial loss on separable data") {
    std::vector<double> initial_losses, final_losses;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Rng rng(seed);
        Model model = qtl::make_dressed(2, 2, 1, 2, rng);
        Rng data_rng(seed + 100);
        qtl::Dataset data = separable_dataset(30, 2, data_rng);

        initial_losses.push_back(qtl::mean_loss(model, data));
        qtl::TrainConfig config;
        config.iterations = 60;
        config.batch_size = 10;
        config.learning_rate = 0.05;
        config.seed = seed;
        qtl::train(model, data, data, config);
        final_losses.push_back(qtl::mean_loss(model, data));
    }
    std::sort(initial_losses.begin(), initial_losses.end());
    std::sort(final_losses.begin(), final_losses.end());
    CHECK(final_losses[2] < initial_losses[2]);
}

TEST_CASE("trace shape: per-iteration losses, per-epoch evaluations") {
    Rng rng(17);
    Model model = qtl::make_baseline({2, 2}, rng);
    Rng data_rng(18);
    qtl::Dataset data = separable_dataset(20, 2, data_rng);

    qtl::TrainConfig config;
    config.iterations = 10;  // 4 batches per epoch -> evals at 4, 8, 10
    config.batch_size = 5;
    config.learning_rate = 0.01;
    config.seed = 1;
    const auto result = qtl::train(model, data, data, config);

    REQUIRE(result.trace.size() == 11);
    CHECK(!result.trace[0].train_loss.has_value());
    CHECK(result.trace[0].test_accuracy.has_value());
    for (int i = 1; i <= 10; ++i) {
        CHECK(result.trace[i].iteration == i);
        CHECK(result.trace[i].train_loss.has_value());
        const bool expect_eval = i == 4 || i == 8 || i == 10;
        CHECK(result.trace[i].test_accuracy.has_value() == expect_eval);
    }
    CHECK(result.trace[3].epoch == 0);
    CHECK(result.trace[5].epoch == 1);
}

TEST_CASE("best-accuracy checkpointing retains the best model") {
    Rng rng(19);
    Model model = qtl::make_dressed(2, 2, 1, 2, rng);
    Rng data_rng(20);
    qtl::Dataset data = separable_dataset(24, 2, data_rng);

    qtl::TrainConfig config;
    config.iterations = 12;
    config.batch_size = 6;
    config.learning_rate = 0.05;
    config.seed = 3;
    config.track_best = true;
    const auto result = qtl::train(model, data, data, config);
    REQUIRE(result.best_model.has_value());
    CHECK(qtl::accuracy(*result.best_model, data) == doctest::Approx(result.best_accuracy));
    CHECK(result.best_accuracy >= result.final_accuracy);
}

TEST_CASE("train config validation") {
    qtl::TrainConfig config;
    config.iterations = 5;
    config.batch_size = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.batch_size = 2;
    config.learning_rate = -1;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.learning_rate = 0.01;
    config.iterations = -2;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("a zero-step budget evaluates once and trains nothing") {
    Rng rng(21);
    Model model = qtl::make_dressed(2, 2, 1, 2, rng);
    const Model before = model;
    Rng data_rng(22);
    qtl::Dataset data = separable_dataset(10, 2, data_rng);

    qtl::TrainConfig config;
    config.iterations = 0;
    config.epochs = 0;
    config.learning_rate = 0.05;
    const auto result = qtl::train(model, data, data, config);
    CHECK(model == before);
    REQUIRE(result.trace.size() == 1);
    CHECK(result.trace[0].iteration == 0);
    CHECK(result.trace[0].test_accuracy.has_value());
}
