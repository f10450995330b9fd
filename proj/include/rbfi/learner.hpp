// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the rbfi authors

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace rbfi {

enum class LossKind : std::uint8_t {
    BinaryCePerOutput = 0,  // sum of per-output binary cross-entropies on the softmax
    CategoricalCe = 1,
};

/// One-hidden-layer classifier: sigmoid hidden layer, softmax output.
struct MlpModel {
    Eigen::MatrixXd w1;  // hidden x input
    Eigen::VectorXd b1;
    Eigen::MatrixXd w2;  // labels x hidden
    Eigen::VectorXd b2;
    double lambda_reg = 0.0;

    int input_dim() const { return static_cast<int>(w1.cols()); }
    int hidden_dim() const { return static_cast<int>(w1.rows()); }
    int num_labels() const { return static_cast<int>(w2.rows()); }
};

/// Mini-batch of training data, one column per sample.
struct TrainBatch {
    Eigen::MatrixXd inputs;   // input_dim x N
    Eigen::MatrixXd targets;  // num_labels x N, one-hot columns
};

struct MlpGradients {
    Eigen::MatrixXd w1;
    Eigen::VectorXd b1;
    Eigen::MatrixXd w2;
    Eigen::VectorXd b2;
};

/// Uniform [-a, a] init with a = sqrt(6 / (fan_in + fan_out)) per layer,
/// zero biases. Deterministic per seed.
MlpModel init_mlp(int input_dim, int hidden_dim, int num_labels, double lambda_reg,
                  std::uint64_t seed);

/// Probability vector over labels for one input.
Eigen::VectorXd mlp_forward(const MlpModel& model, const Eigen::VectorXd& x);

/// Column-batched forward pass.
Eigen::MatrixXd mlp_forward_batch(const MlpModel& model, const Eigen::MatrixXd& inputs);

/// Loss over a batch. The per-output binary cross-entropy form is
///   L = -(1/N) sum_i sum_j [y_ij log r_ij + (1 - y_ij) log(1 - r_ij)]
/// with natural logs, arguments clamped at 1e-12, plus lambda * sum w^2
/// over both weight matrices (biases excluded).
double mlp_loss(const MlpModel& model, const TrainBatch& batch,
                LossKind loss = LossKind::BinaryCePerOutput);

/// Analytic gradients of mlp_loss, including the regularization term.
MlpGradients mlp_gradients(const MlpModel& model, const TrainBatch& batch,
                           LossKind loss = LossKind::BinaryCePerOutput);

/// Labels ranked by predicted probability, best first; ties towards the
/// lower index.
std::vector<int> predict_topk(const MlpModel& model, const Eigen::VectorXd& x, int k);

struct TrainHyper {
    double learning_rate = 0.3;
    int batch_size = 256;
    int max_epochs = 120;
    int patience = 10;
    double lambda_reg = 1e-4;
    std::uint64_t seed = 1;
    LossKind loss = LossKind::BinaryCePerOutput;
    int hidden_dim = 0;  // 0 = same as input dimension
};

struct TrainReport {
    std::vector<double> train_loss;
    std::vector<double> val_loss;
    std::vector<double> val_accuracy;
    int stopping_epoch = 0;
    double test_accuracy = 0.0;
};

/// Mini-batch gradient descent with early stopping on validation loss;
/// returns the model snapshot with the best validation loss. Deterministic
/// per seed (fixed shuffle order). Throws on divergence (non-finite loss).
std::pair<MlpModel, TrainReport> train_mlp(const Eigen::MatrixXd& inputs,
                                           const std::vector<int>& labels,
                                           const std::vector<std::size_t>& train_idx,
                                           const std::vector<std::size_t>& val_idx,
                                           const std::vector<std::size_t>& test_idx,
                                           int num_labels, const TrainHyper& hyper);

}  // namespace rbfi
