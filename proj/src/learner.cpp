// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the rbfi authors

#include "rbfi/learner.hpp"

#include <cmath>
#include <stdexcept>

#include "rbfi/rng.hpp"

namespace rbfi {

namespace {

constexpr double kClamp = 1e-12;

Eigen::MatrixXd sigmoid(const Eigen::MatrixXd& z) {
    return (1.0 + (-z.array()).exp()).inverse();
}

// Softmax over each column with max subtraction.
Eigen::MatrixXd softmax_columns(Eigen::MatrixXd z) {
    const Eigen::RowVectorXd maxes = z.colwise().maxCoeff();
    z.array().rowwise() -= maxes.array();
    Eigen::MatrixXd e = z.array().exp();
    const Eigen::RowVectorXd sums = e.colwise().sum();
    e.array().rowwise() /= sums.array();
    return e;
}

struct ForwardPass {
    Eigen::MatrixXd hidden;  // sigmoid activations, hidden x N
    Eigen::MatrixXd probs;   // softmax outputs, labels x N
};

ForwardPass forward_pass(const MlpModel& m, const Eigen::MatrixXd& x) {
    ForwardPass f;
    f.hidden = sigmoid((m.w1 * x).colwise() + m.b1);
    f.probs = softmax_columns((m.w2 * f.hidden).colwise() + m.b2);
    return f;
}

double data_loss(const Eigen::MatrixXd& probs, const Eigen::MatrixXd& targets, LossKind loss) {
    const double n = static_cast<double>(probs.cols());
    const Eigen::ArrayXXd r = probs.array().max(kClamp).min(1.0 - kClamp);
    const Eigen::ArrayXXd y = targets.array();
    if (loss == LossKind::BinaryCePerOutput)
        return -(y * r.log() + (1.0 - y) * (1.0 - r).log()).sum() / n;
    return -(y * r.log()).sum() / n;
}

}  // namespace

MlpModel init_mlp(int input_dim, int hidden_dim, int num_labels, double lambda_reg,
                  std::uint64_t seed) {
    if (input_dim < 1 || hidden_dim < 1 || num_labels < 1)
        throw std::invalid_argument("init_mlp: dimensions must be >= 1");
    if (lambda_reg < 0.0) throw std::invalid_argument("init_mlp: lambda must be >= 0");

    MlpModel m;
    m.lambda_reg = lambda_reg;
    Rng rng(Rng::derive(seed, 0x31));
    const auto fill = [&rng](Eigen::MatrixXd& w, int fan_in, int fan_out) {
        const double a = std::sqrt(6.0 / (fan_in + fan_out));
        for (Eigen::Index i = 0; i < w.rows(); ++i)
            for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = rng.uniform(-a, a);
    };
    m.w1.resize(hidden_dim, input_dim);
    fill(m.w1, input_dim, hidden_dim);
    m.b1 = Eigen::VectorXd::Zero(hidden_dim);
    m.w2.resize(num_labels, hidden_dim);
    fill(m.w2, hidden_dim, num_labels);
    m.b2 = Eigen::VectorXd::Zero(num_labels);
    return m;
}

Eigen::VectorXd mlp_forward(const MlpModel& model, const Eigen::VectorXd& x) {
    if (x.size() != model.w1.cols()) throw std::invalid_argument("mlp_forward: bad input size");
    return forward_pass(model, x).probs.col(0);
}

Eigen::MatrixXd mlp_forward_batch(const MlpModel& model, const Eigen::MatrixXd& inputs) {
    if (inputs.rows() != model.w1.cols())
        throw std::invalid_argument("mlp_forward_batch: bad input size");
    return forward_pass(model, inputs).probs;
}

double mlp_loss(const MlpModel& model, const TrainBatch& batch, LossKind loss) {
    if (batch.inputs.cols() < 1) throw std::invalid_argument("mlp_loss: empty batch");
    const ForwardPass f = forward_pass(model, batch.inputs);
    return data_loss(f.probs, batch.targets, loss) +
           model.lambda_reg * (model.w1.squaredNorm() + model.w2.squaredNorm());
}

MlpGradients mlp_gradients(const MlpModel& model, const TrainBatch& batch, LossKind loss) {
    if (batch.inputs.cols() < 1) throw std::invalid_argument("mlp_gradients: empty batch");
    const double n = static_cast<double>(batch.inputs.cols());
    const ForwardPass f = forward_pass(model, batch.inputs);

    // dL/dz for the softmax pre-activations. For the per-output binary CE
    // over a softmax, with t_j = (r_j - y_j) / (1 - r_j):
    //   dL/dz_k = t_k - r_k * sum_j t_j
    Eigen::MatrixXd dz;
    if (loss == LossKind::BinaryCePerOutput) {
        const Eigen::ArrayXXd r = f.probs.array();
        const Eigen::ArrayXXd t = (r - batch.targets.array()) / (1.0 - r).max(kClamp);
        const Eigen::RowVectorXd colsum = t.matrix().colwise().sum();
        dz = (t - r.rowwise() * colsum.array()).matrix() / n;
    } else {
        dz = (f.probs - batch.targets) / n;
    }

    MlpGradients g;
    g.w2 = dz * f.hidden.transpose() + 2.0 * model.lambda_reg * model.w2;
    g.b2 = dz.rowwise().sum();
    const Eigen::MatrixXd da = model.w2.transpose() * dz;
    const Eigen::MatrixXd dz1 =
        da.array() * f.hidden.array() * (1.0 - f.hidden.array());
    g.w1 = dz1 * batch.inputs.transpose() + 2.0 * model.lambda_reg * model.w1;
    g.b1 = dz1.rowwise().sum();
    return g;
}

std::vector<int> predict_topk(const MlpModel& model, const Eigen::VectorXd& x, int k) {
    if (k < 1 || k > model.num_labels()) throw std::invalid_argument("predict_topk: bad k");
    const Eigen::VectorXd r = mlp_forward(model, x);
    std::vector<int> order(model.num_labels());
    for (int i = 0; i < model.num_labels(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return r(a) > r(b); });
    order.resize(k);
    return order;
}

std::pair<MlpModel, TrainReport> train_mlp(const Eigen::MatrixXd& inputs,
                                           const std::vector<int>& labels,
                                           const std::vector<std::size_t>& train_idx,
                                           const std::vector<std::size_t>& val_idx,
                                           const std::vector<std::size_t>& test_idx,
                                           int num_labels, const TrainHyper& hyper) {
    if (train_idx.empty() || val_idx.empty())
        throw std::invalid_argument("train_mlp: empty train or validation split");
    const int input_dim = static_cast<int>(inputs.rows());
    const int hidden = hyper.hidden_dim > 0 ? hyper.hidden_dim : input_dim;

    const auto gather = [&](const std::vector<std::size_t>& idx) {
        TrainBatch b;
        b.inputs.resize(input_dim, static_cast<Eigen::Index>(idx.size()));
        b.targets = Eigen::MatrixXd::Zero(num_labels, static_cast<Eigen::Index>(idx.size()));
        for (std::size_t i = 0; i < idx.size(); ++i) {
            b.inputs.col(static_cast<Eigen::Index>(i)) =
                inputs.col(static_cast<Eigen::Index>(idx[i]));
            b.targets(labels[idx[i]], static_cast<Eigen::Index>(i)) = 1.0;
        }
        return b;
    };

    const TrainBatch train_all = gather(train_idx);
    const TrainBatch val_all = gather(val_idx);

    const auto accuracy = [&](const MlpModel& m, const TrainBatch& b) {
        const Eigen::MatrixXd r = mlp_forward_batch(m, b.inputs);
        std::size_t hits = 0;
        for (Eigen::Index i = 0; i < r.cols(); ++i) {
            Eigen::Index pred = 0;
            r.col(i).maxCoeff(&pred);
            if (b.targets(pred, i) > 0.5) ++hits;
        }
        return static_cast<double>(hits) / static_cast<double>(r.cols());
    };

    MlpModel model = init_mlp(input_dim, hidden, num_labels, hyper.lambda_reg, hyper.seed);
    MlpModel best = model;
    double best_val = std::numeric_limits<double>::infinity();
    int epochs_since_best = 0;

    TrainReport report;
    Rng shuffle_rng(Rng::derive(hyper.seed, 0x5f));
    std::vector<std::size_t> order(train_idx.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    const std::size_t n_train = train_idx.size();
    const std::size_t batch_size = static_cast<std::size_t>(hyper.batch_size);
    TrainBatch batch;

    for (int epoch = 0; epoch < hyper.max_epochs; ++epoch) {
        for (std::size_t i = n_train - 1; i > 0; --i)
            std::swap(order[i], order[shuffle_rng.uniform_index(i + 1)]);

        for (std::size_t lo = 0; lo < n_train; lo += batch_size) {
            const std::size_t hi = std::min(n_train, lo + batch_size);
            const Eigen::Index bn = static_cast<Eigen::Index>(hi - lo);
            batch.inputs.resize(input_dim, bn);
            batch.targets.setZero(num_labels, bn);
            for (std::size_t i = lo; i < hi; ++i) {
                const Eigen::Index col = static_cast<Eigen::Index>(i - lo);
                batch.inputs.col(col) = train_all.inputs.col(static_cast<Eigen::Index>(order[i]));
                batch.targets.col(col) =
                    train_all.targets.col(static_cast<Eigen::Index>(order[i]));
            }
            const MlpGradients g = mlp_gradients(model, batch, hyper.loss);
            model.w1 -= hyper.learning_rate * g.w1;
            model.b1 -= hyper.learning_rate * g.b1;
            model.w2 -= hyper.learning_rate * g.w2;
            model.b2 -= hyper.learning_rate * g.b2;
        }

        const double tl = mlp_loss(model, train_all, hyper.loss);
        const double vl = mlp_loss(model, val_all, hyper.loss);
        if (!std::isfinite(tl) || !std::isfinite(vl))
            throw std::runtime_error("train_mlp: loss diverged (non-finite) at epoch " +
                                     std::to_string(epoch));
        report.train_loss.push_back(tl);
        report.val_loss.push_back(vl);
        report.val_accuracy.push_back(accuracy(model, val_all));
        report.stopping_epoch = epoch + 1;

        if (vl < best_val) {
            best_val = vl;
            best = model;
            epochs_since_best = 0;
        } else if (++epochs_since_best >= hyper.patience) {
            break;
        }
    }

    if (!test_idx.empty()) report.test_accuracy = accuracy(best, gather(test_idx));
    return {std::move(best), std::move(report)};
}

}  // namespace rbfi
