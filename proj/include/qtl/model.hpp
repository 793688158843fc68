#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "qtl/bare_circuit.hpp"
#include "qtl/dataset.hpp"
#include "qtl/nn.hpp"
#include "qtl/rng.hpp"

namespace qtl {

// Classical -> quantum -> classical composition: a tanh pre-layer feeds the
// embedding, a linear post-layer reads out the Z-expectations.
struct DressedCircuit {
    DenseLayer pre;        // n_in -> n_qubits, Tanh
    BareCircuitSpec bare;  // n_qubits in/out
    DenseLayer post;       // n_qubits -> n_out, Identity
    bool quantum_frozen = false;

    int n_in() const { return pre.n_in(); }
    int n_out() const { return post.n_out(); }
    void validate() const;

    bool operator==(const DressedCircuit&) const = default;
};

struct ClassicalBaseline {
    std::vector<DenseLayer> layers;

    int n_in() const { return layers.front().n_in(); }
    int n_out() const { return layers.back().n_out(); }
    void validate() const;

    bool operator==(const ClassicalBaseline&) const = default;
};

// A bare circuit trained directly as a classifier on circuit inputs; the
// logits are the first n_classes Z-expectations. Rows flagged frozen keep
// their weights (used by quantum-to-quantum transfer).
struct BareClassifier {
    BareCircuitSpec bare;
    std::vector<std::uint8_t> row_frozen;  // one flag per layer
    int n_classes = 2;

    void validate() const;

    bool operator==(const BareClassifier&) const = default;
};

using Model = std::variant<DressedCircuit, ClassicalBaseline, BareClassifier>;

// Initialization: classical layers Uniform(+-1/sqrt(n_in)); quantum angles
// Normal(0, 0.01^2) so circuits start near the identity-rotation point.
DressedCircuit make_dressed(int n_in, int n_qubits, int depth, int n_out, Rng& rng);
ClassicalBaseline make_baseline(const std::vector<int>& sizes, Rng& rng);
BareClassifier make_bare_classifier(int n_qubits, int depth, int n_classes, Rng& rng);

Matrix quantum_init(int depth, int n_qubits, Rng& rng);

int model_input_arity(const Model& model);
int model_output_arity(const Model& model);

std::vector<double> forward(const Model& model, std::span<const double> x);

// argmax over the logits; ties resolve to the lowest index
int predict(const Model& model, std::span<const double> x);

double accuracy(const Model& model, const Dataset& data);
double mean_loss(const Model& model, const Dataset& data);

// Unfrozen parameters in a fixed order:
//   dressed:   pre.W, pre.b | bare.weights (row-major) | post.W, post.b
//   baseline:  layer 0 W, b | layer 1 W, b | ...
//   bare_qq:   unfrozen weight rows, ascending layer index
// Gradients from loss_and_grads use the same order.
std::vector<double*> collect_params(Model& model);
std::size_t param_count(const Model& model);

struct BatchGrads {
    double loss = 0.0;           // mean over the batch
    std::vector<double> grads;   // mean over the batch, collect_params order
};

BatchGrads loss_and_grads(const Model& model, const Dataset& data, std::span<const int> indices);

struct TrainConfig {
    long iterations = 0;        // total Adam steps; 0 = derive from epochs
    int epochs = 0;
    int batch_size = 10;
    double learning_rate = 0.01;
    double decay_factor = 1.0;  // learning-rate multiplier
    int decay_period = 0;       // epochs between decays; 0 = no schedule
    std::uint64_t seed = 0;     // shuffle stream
    int eval_every = 0;         // iterations between evaluations; 0 = each epoch
    bool track_best = false;

    void validate() const;
};

struct TraceRow {
    long iteration = 0;
    int epoch = 0;
    std::optional<double> train_loss;      // batch loss; absent on the row at iteration 0
    std::optional<double> test_accuracy;   // present at evaluation points
    std::optional<double> train_set_loss;  // full-training-set loss at evaluation points

    bool operator==(const TraceRow&) const = default;
};

struct TrainResult {
    std::vector<TraceRow> trace;
    double final_accuracy = 0.0;
    double best_accuracy = 0.0;
    long best_iteration = 0;
    std::optional<Model> best_model;  // populated when track_best is set
};

// Adam over shuffled mini-batches; deterministic for a fixed seed. The model
// is left at its final parameters.
TrainResult train(Model& model, const Dataset& train_data, const Dataset& test_data,
                  const TrainConfig& config);

}  // namespace qtl
