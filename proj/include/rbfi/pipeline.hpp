// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the rbfi authors

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rbfi/dataset.hpp"
#include "rbfi/features.hpp"
#include "rbfi/learner.hpp"

namespace rbfi {

/// Feature-pipeline configuration. The classifier consumes per-CBS angular
/// log-amplitudes, Lloyd-quantized per dimension (centroid reconstructions
/// by default, cell indices behind the flag) and standardized with
/// statistics fitted on the training split only.
struct FeatureOptions {
    std::vector<int> cbs_indices{0};
    int quant_levels = 8;
    bool use_quantizer = true;
    bool quantizer_indices = false;  // feed cell indices instead of reconstructions
    bool standardize = true;
};

/// Everything needed to run inference: the trained network plus the fitted
/// preprocessing models and the codebook identity it was trained against.
struct ModelBundle {
    MlpModel mlp;
    FeatureOptions options;
    QuantizerModel quantizer;           // empty when use_quantizer is false
    Standardizer standardizer;          // unused when standardize is false
    std::optional<PcaModel> pca;        // analysis models ride along when fitted
    std::string codebook_id;
    std::vector<int> cbs_antennas;      // per selected CBS, for dimension checks

    int input_dim() const { return mlp.input_dim(); }
};

/// Transform raw angular features (rows = samples) through the bundle's
/// quantizer and standardizer.
Eigen::MatrixXd transform_features(const ModelBundle& bundle, const Eigen::MatrixXd& raw);

/// Fit the full pipeline on a dataset: quantizer and standardizer on the
/// training split, then the classifier. Hidden size defaults to the total
/// input dimension.
std::pair<ModelBundle, TrainReport> fit_pipeline(const Dataset& dataset,
                                                 const FeatureOptions& options,
                                                 const TrainHyper& hyper);

/// Ranked top-k predictions for the given sample indices.
std::vector<std::vector<int>> predict_dataset(const ModelBundle& bundle, const Dataset& dataset,
                                              const std::vector<std::size_t>& indices, int k);

/// Throws (std::invalid_argument) when the bundle does not match the
/// dataset's codebook or feature dimensions.
void check_compatible(const ModelBundle& bundle, const Dataset& dataset);

}  // namespace rbfi
