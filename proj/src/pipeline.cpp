// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the rbfi authors

#include "rbfi/pipeline.hpp"

#include <stdexcept>

#include "rbfi/parallel.hpp"

namespace rbfi {

Eigen::MatrixXd transform_features(const ModelBundle& bundle, const Eigen::MatrixXd& raw) {
    Eigen::MatrixXd out = raw;
    if (bundle.options.use_quantizer) {
        if (raw.cols() != bundle.quantizer.dimension())
            throw std::invalid_argument("transform_features: quantizer dimension mismatch");
        parallel_for(static_cast<std::size_t>(raw.rows()), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                const Eigen::Index r = static_cast<Eigen::Index>(i);
                for (Eigen::Index j = 0; j < raw.cols(); ++j) {
                    const auto& q = bundle.quantizer.dims[j];
                    const int cell = q.cell(raw(r, j));
                    out(r, j) = bundle.options.quantizer_indices ? static_cast<double>(cell)
                                                                 : q.centroids(cell);
                }
            }
        });
    }
    if (bundle.options.standardize) {
        out = (out.rowwise() - bundle.standardizer.mean.transpose()).array().rowwise() /
              bundle.standardizer.scale.transpose().array();
    }
    return out;
}

std::pair<ModelBundle, TrainReport> fit_pipeline(const Dataset& dataset,
                                                 const FeatureOptions& options,
                                                 const TrainHyper& hyper) {
    if (dataset.samples.empty()) throw std::invalid_argument("fit_pipeline: empty dataset");

    ModelBundle bundle;
    bundle.options = options;
    bundle.codebook_id = dataset.codebook.id();
    for (const int c : options.cbs_indices) {
        if (c < 0 || c >= static_cast<int>(dataset.samples.front().cbs_channels.size()))
            throw std::invalid_argument("fit_pipeline: CBS index out of range");
        bundle.cbs_antennas.push_back(
            static_cast<int>(dataset.samples.front().cbs_channels[c].size()));
    }

    const Eigen::MatrixXd raw = dataset.feature_matrix(options.cbs_indices);
    const std::vector<std::size_t> train_idx = dataset.indices_of(Split::Train);
    const std::vector<std::size_t> val_idx = dataset.indices_of(Split::Validation);
    const std::vector<std::size_t> test_idx = dataset.indices_of(Split::Test);

    const auto rows_of = [&raw](const std::vector<std::size_t>& idx) {
        Eigen::MatrixXd sub(static_cast<Eigen::Index>(idx.size()), raw.cols());
        for (std::size_t i = 0; i < idx.size(); ++i)
            sub.row(static_cast<Eigen::Index>(i)) = raw.row(static_cast<Eigen::Index>(idx[i]));
        return sub;
    };

    if (options.use_quantizer)
        bundle.quantizer = fit_quantizer(rows_of(train_idx), options.quant_levels);

    if (options.standardize) {
        // standardization statistics come from the (quantized) training rows
        ModelBundle pre = bundle;
        pre.options.standardize = false;
        bundle.standardizer = fit_standardizer(transform_features(pre, rows_of(train_idx)));
    }

    const Eigen::MatrixXd inputs = transform_features(bundle, raw).transpose();
    auto [model, report] = train_mlp(inputs, dataset.labels(), train_idx, val_idx, test_idx,
                                     dataset.codebook.size, hyper);
    bundle.mlp = std::move(model);
    return {std::move(bundle), std::move(report)};
}

std::vector<std::vector<int>> predict_dataset(const ModelBundle& bundle, const Dataset& dataset,
                                              const std::vector<std::size_t>& indices, int k) {
    check_compatible(bundle, dataset);
    const Eigen::MatrixXd raw = dataset.feature_matrix(bundle.options.cbs_indices);
    Eigen::MatrixXd sub(static_cast<Eigen::Index>(indices.size()), raw.cols());
    for (std::size_t i = 0; i < indices.size(); ++i)
        sub.row(static_cast<Eigen::Index>(i)) = raw.row(static_cast<Eigen::Index>(indices[i]));
    const Eigen::MatrixXd inputs = transform_features(bundle, sub).transpose();
    const Eigen::MatrixXd probs = mlp_forward_batch(bundle.mlp, inputs);

    std::vector<std::vector<int>> ranked(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const Eigen::VectorXd r = probs.col(static_cast<Eigen::Index>(i));
        std::vector<int> order(bundle.mlp.num_labels());
        for (int j = 0; j < bundle.mlp.num_labels(); ++j) order[j] = j;
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return r(a) > r(b); });
        order.resize(k);
        ranked[i] = std::move(order);
    }
    return ranked;
}

void check_compatible(const ModelBundle& bundle, const Dataset& dataset) {
    if (bundle.codebook_id != dataset.codebook.id())
        throw std::invalid_argument("model/dataset codebook mismatch: " + bundle.codebook_id +
                                    " vs " + dataset.codebook.id());
    if (dataset.samples.empty()) throw std::invalid_argument("empty dataset");
    int total = 0;
    for (std::size_t i = 0; i < bundle.options.cbs_indices.size(); ++i) {
        const int c = bundle.options.cbs_indices[i];
        if (c < 0 || c >= static_cast<int>(dataset.samples.front().cbs_channels.size()))
            throw std::invalid_argument("model expects CBS " + std::to_string(c) +
                                        " which the dataset lacks");
        if (static_cast<int>(dataset.samples.front().cbs_channels[c].size()) !=
            bundle.cbs_antennas[i])
            throw std::invalid_argument("model/dataset CBS antenna count mismatch");
        total += bundle.cbs_antennas[i];
    }
    if (total != bundle.input_dim())
        throw std::invalid_argument("model input dimension inconsistent");
}

}  // namespace rbfi
