#pragma once

#include <span>
#include <vector>

#include "qtl/matrix.hpp"
#include "qtl/rng.hpp"

namespace qtl {

enum class Activation { Identity, Tanh, ReLU };

const char* activation_name(Activation a);
Activation activation_from_name(const std::string& name);

// y = activation(W x + b)
struct DenseLayer {
    Matrix W;  // n_out x n_in
    std::vector<double> b;
    Activation activation = Activation::Identity;
    bool frozen = false;

    int n_in() const { return W.cols; }
    int n_out() const { return W.rows; }

    bool operator==(const DenseLayer&) const = default;
};

// W, b ~ Uniform(-1/sqrt(n_in), +1/sqrt(n_in))
DenseLayer make_dense(int n_in, int n_out, Activation activation, Rng& rng);

std::vector<double> dense_forward(const DenseLayer& layer, std::span<const double> x);

struct DenseGrads {
    Matrix dW;
    std::vector<double> db;
    std::vector<double> dx;
};

// Exact partials of (upstream . output) w.r.t. W, b and x; `x` must be the
// same input that produced the forward pass.
DenseGrads dense_backward(const DenseLayer& layer, std::span<const double> x,
                          std::span<const double> upstream);

std::vector<double> softmax(std::span<const double> logits);

struct LossGrad {
    double loss = 0.0;
    std::vector<double> dlogits;
};

// loss = -log_softmax(logits)[label], max-subtraction stabilized;
// dlogits = softmax(logits) - one_hot(label)
LossGrad cross_entropy_loss(std::span<const double> logits, int label);

// Adam with bias correction. Moment accumulators are laid out flat in the
// same order as the parameter set handed to step(); the first step fixes
// that size and later steps must match it.
class Adam {
public:
    explicit Adam(double learning_rate, double beta1 = 0.9, double beta2 = 0.999,
                  double epsilon = 1e-8);

    // resume from persisted state
    Adam(double learning_rate, double beta1, double beta2, double epsilon, long step_count,
         std::vector<double> m, std::vector<double> v);

    void step(std::span<double* const> params, std::span<const double> grads);

    long step_count() const { return step_count_; }
    double learning_rate() const { return learning_rate_; }
    void set_learning_rate(double lr);
    double beta1() const { return beta1_; }
    double beta2() const { return beta2_; }
    double epsilon() const { return epsilon_; }
    const std::vector<double>& first_moments() const { return m_; }
    const std::vector<double>& second_moments() const { return v_; }

private:
    double learning_rate_;
    double beta1_;
    double beta2_;
    double epsilon_;
    long step_count_ = 0;
    std::vector<double> m_;
    std::vector<double> v_;
};

}  // namespace qtl
