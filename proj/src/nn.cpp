#include "qtl/nn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qtl {

namespace {

double activate(Activation a, double z) {
    switch (a) {
        case Activation::Identity: return z;
        case Activation::Tanh: return std::tanh(z);
        case Activation::ReLU: return z > 0.0 ? z : 0.0;
    }
    return z;
}

double activate_prime(Activation a, double z) {
    switch (a) {
        case Activation::Identity: return 1.0;
        case Activation::Tanh: {
            const double t = std::tanh(z);
            return 1.0 - t * t;
        }
        case Activation::ReLU: return z > 0.0 ? 1.0 : 0.0;
    }
    return 1.0;
}

}  // namespace

const char* activation_name(Activation a) {
    switch (a) {
        case Activation::Identity: return "identity";
        case Activation::Tanh: return "tanh";
        case Activation::ReLU: return "relu";
    }
    return "identity";
}

Activation activation_from_name(const std::string& name) {
    if (name == "identity") return Activation::Identity;
    if (name == "tanh") return Activation::Tanh;
    if (name == "relu") return Activation::ReLU;
    throw std::invalid_argument("unknown activation: " + name);
}

DenseLayer make_dense(int n_in, int n_out, Activation activation, Rng& rng) {
    if (n_in < 1 || n_out < 1) {
        throw std::invalid_argument("dense layer dimensions must be positive");
    }
    DenseLayer layer;
    layer.W = Matrix(n_out, n_in);
    layer.b.resize(n_out);
    layer.activation = activation;
    const double bound = 1.0 / std::sqrt(static_cast<double>(n_in));
    for (double& w : layer.W.data) w = rng.uniform(-bound, bound);
    for (double& b : layer.b) b = rng.uniform(-bound, bound);
    return layer;
}

std::vector<double> dense_forward(const DenseLayer& layer, std::span<const double> x) {
    if (x.size() != static_cast<std::size_t>(layer.n_in())) {
        throw std::invalid_argument("dense_forward: input arity mismatch (expected " +
                                    std::to_string(layer.n_in()) + ", got " +
                                    std::to_string(x.size()) + ")");
    }
    std::vector<double> out(layer.n_out());
    for (int r = 0; r < layer.n_out(); ++r) {
        double z = layer.b[r];
        const auto row = layer.W.row(r);
        for (int c = 0; c < layer.n_in(); ++c) z += row[c] * x[c];
        out[r] = activate(layer.activation, z);
    }
    return out;
}

DenseGrads dense_backward(const DenseLayer& layer, std::span<const double> x,
                          std::span<const double> upstream) {
    if (x.size() != static_cast<std::size_t>(layer.n_in()) ||
        upstream.size() != static_cast<std::size_t>(layer.n_out())) {
        throw std::invalid_argument("dense_backward: arity mismatch");
    }
    DenseGrads g;
    g.dW = Matrix(layer.n_out(), layer.n_in());
    g.db.assign(layer.n_out(), 0.0);
    g.dx.assign(layer.n_in(), 0.0);
    for (int r = 0; r < layer.n_out(); ++r) {
        double z = layer.b[r];
        const auto row = layer.W.row(r);
        for (int c = 0; c < layer.n_in(); ++c) z += row[c] * x[c];
        const double delta = upstream[r] * activate_prime(layer.activation, z);
        g.db[r] = delta;
        auto drow = g.dW.row(r);
        for (int c = 0; c < layer.n_in(); ++c) {
            drow[c] = delta * x[c];
            g.dx[c] += row[c] * delta;
        }
    }
    return g;
}

std::vector<double> softmax(std::span<const double> logits) {
    const double peak = *std::max_element(logits.begin(), logits.end());
    std::vector<double> p(logits.size());
    double total = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        p[i] = std::exp(logits[i] - peak);
        total += p[i];
    }
    for (double& v : p) v /= total;
    return p;
}

LossGrad cross_entropy_loss(std::span<const double> logits, int label) {
    if (logits.empty()) {
        throw std::invalid_argument("cross_entropy_loss: empty logits");
    }
    if (label < 0 || label >= static_cast<int>(logits.size())) {
        throw std::out_of_range("cross_entropy_loss: label " + std::to_string(label) +
                                " out of range for " + std::to_string(logits.size()) + " logits");
    }
    const double peak = *std::max_element(logits.begin(), logits.end());
    double total = 0.0;
    for (double v : logits) total += std::exp(v - peak);
    const double log_sum = peak + std::log(total);

    LossGrad out;
    out.loss = log_sum - logits[label];
    out.dlogits.resize(logits.size());
    for (std::size_t i = 0; i < logits.size(); ++i) {
        out.dlogits[i] = std::exp(logits[i] - log_sum);
    }
    out.dlogits[label] -= 1.0;
    return out;
}

Adam::Adam(double learning_rate, double beta1, double beta2, double epsilon)
    : learning_rate_(learning_rate), beta1_(beta1), beta2_(beta2), epsilon_(epsilon) {
    if (learning_rate < 0.0) {
        throw std::invalid_argument("Adam: learning rate must be non-negative");
    }
}

Adam::Adam(double learning_rate, double beta1, double beta2, double epsilon, long step_count,
           std::vector<double> m, std::vector<double> v)
    : Adam(learning_rate, beta1, beta2, epsilon) {
    if (m.size() != v.size() || step_count < 0) {
        throw std::invalid_argument("Adam: inconsistent restored state");
    }
    step_count_ = step_count;
    m_ = std::move(m);
    v_ = std::move(v);
}

void Adam::set_learning_rate(double lr) {
    if (lr < 0.0) throw std::invalid_argument("Adam: learning rate must be non-negative");
    learning_rate_ = lr;
}

void Adam::step(std::span<double* const> params, std::span<const double> grads) {
    if (params.size() != grads.size()) {
        throw std::invalid_argument("Adam: parameter/gradient shape mismatch");
    }
    if (m_.empty()) {
        m_.assign(params.size(), 0.0);
        v_.assign(params.size(), 0.0);
    } else if (m_.size() != params.size()) {
        throw std::invalid_argument("Adam: parameter set size changed between steps");
    }

    ++step_count_;
    const double bias1 = 1.0 - std::pow(beta1_, static_cast<double>(step_count_));
    const double bias2 = 1.0 - std::pow(beta2_, static_cast<double>(step_count_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g;
        v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * g * g;
        const double m_hat = m_[i] / bias1;
        const double v_hat = v_[i] / bias2;
        *params[i] -= learning_rate_ * m_hat / (std::sqrt(v_hat) + epsilon_);
    }
}

}  // namespace qtl
