#include "qtl/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qtl/parameter_shift.hpp"

namespace qtl {

void DressedCircuit::validate() const {
    if (pre.n_out() != bare.n_qubits || post.n_in() != bare.n_qubits) {
        throw std::invalid_argument("dressed circuit: pre.n_out, n_qubits and post.n_in must agree");
    }
}

void ClassicalBaseline::validate() const {
    if (layers.empty()) {
        throw std::invalid_argument("baseline: needs at least one layer");
    }
    for (std::size_t i = 1; i < layers.size(); ++i) {
        if (layers[i].n_in() != layers[i - 1].n_out()) {
            throw std::invalid_argument("baseline: consecutive layer arities must match");
        }
    }
}

void BareClassifier::validate() const {
    if (row_frozen.size() != static_cast<std::size_t>(bare.depth())) {
        throw std::invalid_argument("bare classifier: frozen mask must cover every layer");
    }
    if (n_classes < 2 || n_classes > bare.n_qubits) {
        throw std::invalid_argument("bare classifier: n_classes must be in [2, n_qubits]");
    }
}

Matrix quantum_init(int depth, int n_qubits, Rng& rng) {
    Matrix w(depth, n_qubits);
    const char* env = std::getenv("QTL_QINIT");
    const double scale = env ? std::atof(env) : 0.01;
    for (double& v : w.data) v = rng.normal(0.0, scale);
    return w;
}

DressedCircuit make_dressed(int n_in, int n_qubits, int depth, int n_out, Rng& rng) {
    DressedCircuit model;
    model.pre = make_dense(n_in, n_qubits, Activation::Tanh, rng);
    model.bare = BareCircuitSpec(n_qubits, quantum_init(depth, n_qubits, rng));
    model.post = make_dense(n_qubits, n_out, Activation::Identity, rng);
    return model;
}

ClassicalBaseline make_baseline(const std::vector<int>& sizes, Rng& rng) {
    if (sizes.size() < 2) {
        throw std::invalid_argument("baseline: need input and output sizes");
    }
    ClassicalBaseline model;
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
        const bool last = i + 2 == sizes.size();
        model.layers.push_back(
            make_dense(sizes[i], sizes[i + 1], last ? Activation::Identity : Activation::Tanh, rng));
    }
    return model;
}

BareClassifier make_bare_classifier(int n_qubits, int depth, int n_classes, Rng& rng) {
    BareClassifier model;
    model.bare = BareCircuitSpec(n_qubits, quantum_init(depth, n_qubits, rng));
    model.row_frozen.assign(depth, 0);
    model.n_classes = n_classes;
    model.validate();
    return model;
}

int model_input_arity(const Model& model) {
    return std::visit(
        [](const auto& m) -> int {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, BareClassifier>) {
                return m.bare.n_qubits;
            } else {
                return m.n_in();
            }
        },
        model);
}

int model_output_arity(const Model& model) {
    return std::visit(
        [](const auto& m) -> int {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, BareClassifier>) {
                return m.n_classes;
            } else {
                return m.n_out();
            }
        },
        model);
}

std::vector<double> forward(const Model& model, std::span<const double> x) {
    return std::visit(
        [&](const auto& m) -> std::vector<double> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DressedCircuit>) {
                const std::vector<double> z = dense_forward(m.pre, x);
                const std::vector<double> y = run_bare(m.bare, z);
                return dense_forward(m.post, y);
            } else if constexpr (std::is_same_v<T, ClassicalBaseline>) {
                std::vector<double> v(x.begin(), x.end());
                for (const DenseLayer& layer : m.layers) v = dense_forward(layer, v);
                return v;
            } else {
                const std::vector<double> y = run_bare(m.bare, x);
                return std::vector<double>(y.begin(), y.begin() + m.n_classes);
            }
        },
        model);
}

int predict(const Model& model, std::span<const double> x) {
    const std::vector<double> logits = forward(model, x);
    int best = 0;
    for (int i = 1; i < static_cast<int>(logits.size()); ++i) {
        if (logits[i] > logits[best]) best = i;
    }
    return best;
}

double accuracy(const Model& model, const Dataset& data) {
    if (data.size() == 0) {
        throw std::invalid_argument("accuracy: empty dataset");
    }
    int correct = 0;
    for (int i = 0; i < data.size(); ++i) {
        if (predict(model, data.features.row(i)) == data.labels[i]) ++correct;
    }
    return static_cast<double>(correct) / data.size();
}

double mean_loss(const Model& model, const Dataset& data) {
    if (data.size() == 0) {
        throw std::invalid_argument("mean_loss: empty dataset");
    }
    double total = 0.0;
    for (int i = 0; i < data.size(); ++i) {
        total += cross_entropy_loss(forward(model, data.features.row(i)), data.labels[i]).loss;
    }
    return total / data.size();
}

namespace {

void append_dense_params(DenseLayer& layer, std::vector<double*>& out) {
    if (layer.frozen) return;
    for (double& w : layer.W.data) out.push_back(&w);
    for (double& b : layer.b) out.push_back(&b);
}

}  // namespace

std::vector<double*> collect_params(Model& model) {
    std::vector<double*> out;
    std::visit(
        [&](auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DressedCircuit>) {
                append_dense_params(m.pre, out);
                if (!m.quantum_frozen) {
                    for (double& w : m.bare.weights.data) out.push_back(&w);
                }
                append_dense_params(m.post, out);
            } else if constexpr (std::is_same_v<T, ClassicalBaseline>) {
                for (DenseLayer& layer : m.layers) append_dense_params(layer, out);
            } else {
                for (int l = 0; l < m.bare.depth(); ++l) {
                    if (m.row_frozen[l]) continue;
                    for (int k = 0; k < m.bare.n_qubits; ++k) {
                        out.push_back(&m.bare.weights(l, k));
                    }
                }
            }
        },
        model);
    return out;
}

std::size_t param_count(const Model& model) {
    Model& mutable_model = const_cast<Model&>(model);
    return collect_params(mutable_model).size();
}

namespace {

struct GradAccumulator {
    std::vector<double> values;
    std::size_t cursor = 0;

    explicit GradAccumulator(std::size_t n) : values(n, 0.0) {}

    void add(const Matrix& m) {
        for (double v : m.data) values[cursor++] += v;
    }
    void add(const std::vector<double>& v) {
        for (double x : v) values[cursor++] += x;
    }
    void rewind() { cursor = 0; }
};

// one sample of the dressed model; returns the loss
double accumulate_dressed(const DressedCircuit& m, std::span<const double> x, int label,
                          GradAccumulator& acc) {
    const std::vector<double> z = dense_forward(m.pre, x);
    const std::vector<double> y = run_bare(m.bare, z);
    const std::vector<double> logits = dense_forward(m.post, y);
    const LossGrad loss = cross_entropy_loss(logits, label);

    const DenseGrads post_grads = dense_backward(m.post, y, loss.dlogits);
    const std::vector<double>& dy = post_grads.dx;
    const int n = m.bare.n_qubits;

    // pre-layer gradients need d(loss)/dz through the embedding
    if (!m.pre.frozen) {
        std::vector<double> dz(n, 0.0);
        for (int k = 0; k < n; ++k) {
            const std::vector<double> column = shift_grad_input(m.bare, z, k);
            for (int out = 0; out < n; ++out) dz[k] += dy[out] * column[out];
        }
        const DenseGrads pre_grads = dense_backward(m.pre, x, dz);
        acc.add(pre_grads.dW);
        acc.add(pre_grads.db);
    }
    if (!m.quantum_frozen) {
        for (int layer = 0; layer < m.bare.depth(); ++layer) {
            for (int k = 0; k < n; ++k) {
                const std::vector<double> column = shift_grad_weight(m.bare, z, layer, k);
                double g = 0.0;
                for (int out = 0; out < n; ++out) g += dy[out] * column[out];
                acc.values[acc.cursor++] += g;
            }
        }
    }
    if (!m.post.frozen) {
        acc.add(post_grads.dW);
        acc.add(post_grads.db);
    }
    return loss.loss;
}

double accumulate_baseline(const ClassicalBaseline& m, std::span<const double> x, int label,
                           GradAccumulator& acc) {
    std::vector<std::vector<double>> inputs;
    inputs.emplace_back(x.begin(), x.end());
    for (const DenseLayer& layer : m.layers) {
        inputs.push_back(dense_forward(layer, inputs.back()));
    }
    const LossGrad loss = cross_entropy_loss(inputs.back(), label);

    // backward pass, then write gradients in forward layer order
    std::vector<DenseGrads> grads(m.layers.size());
    std::vector<double> upstream = loss.dlogits;
    for (int i = static_cast<int>(m.layers.size()) - 1; i >= 0; --i) {
        grads[i] = dense_backward(m.layers[i], inputs[i], upstream);
        upstream = grads[i].dx;
    }
    for (std::size_t i = 0; i < m.layers.size(); ++i) {
        if (m.layers[i].frozen) continue;
        acc.add(grads[i].dW);
        acc.add(grads[i].db);
    }
    return loss.loss;
}

double accumulate_bare(const BareClassifier& m, std::span<const double> x, int label,
                       GradAccumulator& acc) {
    const std::vector<double> y = run_bare(m.bare, x);
    const std::vector<double> logits(y.begin(), y.begin() + m.n_classes);
    const LossGrad loss = cross_entropy_loss(logits, label);

    for (int layer = 0; layer < m.bare.depth(); ++layer) {
        if (m.row_frozen[layer]) continue;
        for (int k = 0; k < m.bare.n_qubits; ++k) {
            const std::vector<double> column = shift_grad_weight(m.bare, x, layer, k);
            double g = 0.0;
            for (int out = 0; out < m.n_classes; ++out) g += loss.dlogits[out] * column[out];
            acc.values[acc.cursor++] += g;
        }
    }
    return loss.loss;
}

}  // namespace

BatchGrads loss_and_grads(const Model& model, const Dataset& data, std::span<const int> indices) {
    if (indices.empty()) {
        throw std::invalid_argument("loss_and_grads: empty batch");
    }
    GradAccumulator acc(param_count(model));
    double total_loss = 0.0;
    for (int idx : indices) {
        if (idx < 0 || idx >= data.size()) {
            throw std::out_of_range("loss_and_grads: sample index out of range");
        }
        acc.rewind();
        const auto x = data.features.row(idx);
        const int label = data.labels[idx];
        total_loss += std::visit(
            [&](const auto& m) -> double {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, DressedCircuit>) {
                    return accumulate_dressed(m, x, label, acc);
                } else if constexpr (std::is_same_v<T, ClassicalBaseline>) {
                    return accumulate_baseline(m, x, label, acc);
                } else {
                    return accumulate_bare(m, x, label, acc);
                }
            },
            model);
    }
    BatchGrads out;
    const double inv = 1.0 / static_cast<double>(indices.size());
    out.loss = total_loss * inv;
    out.grads = std::move(acc.values);
    for (double& g : out.grads) g *= inv;
    return out;
}

void TrainConfig::validate() const {
    if (iterations < 0 || epochs < 0) {
        throw std::invalid_argument("train config: negative budget");
    }
    if (batch_size < 1) {
        throw std::invalid_argument("train config: batch_size must be >= 1");
    }
    if (learning_rate < 0.0) {
        throw std::invalid_argument("train config: learning rate must be >= 0");
    }
    if (decay_factor <= 0.0) {
        throw std::invalid_argument("train config: decay factor must be > 0");
    }
    if (decay_period < 0 || eval_every < 0) {
        throw std::invalid_argument("train config: negative cadence");
    }
}

TrainResult train(Model& model, const Dataset& train_data, const Dataset& test_data,
                  const TrainConfig& config) {
    config.validate();
    train_data.validate();
    test_data.validate();

    const long steps_per_epoch =
        (train_data.size() + config.batch_size - 1) / config.batch_size;
    const long total =
        config.iterations > 0 ? config.iterations : config.epochs * steps_per_epoch;

    // lr = 0 still walks the whole loop so traces keep their shape
    Adam adam(config.learning_rate);
    const std::vector<double*> params = collect_params(model);

    TrainResult result;
    result.final_accuracy = accuracy(model, test_data);
    result.best_accuracy = result.final_accuracy;
    result.best_iteration = 0;
    result.trace.push_back(
        TraceRow{0, 0, std::nullopt, result.final_accuracy, mean_loss(model, train_data)});
    if (config.track_best) result.best_model = model;

    std::vector<std::vector<int>> epoch_batches;
    std::size_t batch_cursor = 0;
    int epoch = 0;

    for (long it = 0; it < total; ++it) {
        if (it % steps_per_epoch == 0) {
            epoch = static_cast<int>(it / steps_per_epoch);
            if (config.decay_period > 0) {
                adam.set_learning_rate(config.learning_rate *
                                       std::pow(config.decay_factor, epoch / config.decay_period));
            }
            epoch_batches = batches(train_data, config.batch_size,
                                    derive_seed(config.seed, static_cast<std::uint64_t>(epoch)));
            batch_cursor = 0;
        }

        const BatchGrads step = loss_and_grads(model, train_data, epoch_batches[batch_cursor++]);
        adam.step(params, step.grads);

        const long done = it + 1;
        const bool eval_now = done == total || (config.eval_every > 0
                                                    ? done % config.eval_every == 0
                                                    : done % steps_per_epoch == 0);
        TraceRow row{done, epoch, step.loss, std::nullopt, std::nullopt};
        if (eval_now) {
            const double acc = accuracy(model, test_data);
            row.test_accuracy = acc;
            row.train_set_loss = mean_loss(model, train_data);
            result.final_accuracy = acc;
            if (acc > result.best_accuracy) {
                result.best_accuracy = acc;
                result.best_iteration = done;
                if (config.track_best) result.best_model = model;
            }
        }
        result.trace.push_back(row);
    }
    return result;
}

}  // namespace qtl
