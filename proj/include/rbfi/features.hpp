// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the rbfi authors

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "rbfi/channel.hpp"

namespace rbfi {

/// Learning feature for one UE: concatenated per-CBS angular log-amplitudes,
/// optionally with quantizer cell indices alongside.
struct FeatureVector {
    Eigen::VectorXd values;
    std::optional<Eigen::VectorXi> quantized;
};

/// log10(|F h| + eps) with unitary DFT F and eps = 1e-12 guarding log(0).
Eigen::VectorXd angular_transform(const Eigen::VectorXcd& h);

/// Column-batched version: input dim x N matrix of channels, output dim x N.
Eigen::MatrixXd angular_transform_batch(const Eigen::MatrixXcd& channels);

/// Scalar quantizer for one feature dimension: sorted centroids plus the
/// midpoint decision boundaries between them.
struct ScalarQuantizer {
    Eigen::VectorXd centroids;
    Eigen::VectorXd boundaries;  // centroids.size() - 1 entries
    bool degenerate = false;     // fewer distinct samples than requested levels

    int levels() const { return static_cast<int>(centroids.size()); }
    int cell(double x) const;
    double reconstruct(double x) const { return centroids(cell(x)); }
};

/// Per-dimension bank of scalar quantizers.
struct QuantizerModel {
    std::vector<ScalarQuantizer> dims;
    int levels = 0;

    int dimension() const { return static_cast<int>(dims.size()); }
};

/// Lloyd's algorithm on one dimension: alternate nearest-centroid partition
/// and centroid-mean update until the distortion improvement drops below
/// tol or max_iter is reached. Distortion is non-increasing per iteration.
/// Fewer distinct values than levels reduces the effective level count and
/// flags the result as degenerate.
ScalarQuantizer fit_lloyd(std::span<const double> samples, int levels, int max_iter = 200,
                          double tol = 1e-10);

/// Fit one quantizer per column of data (rows = samples).
QuantizerModel fit_quantizer(const Eigen::MatrixXd& data, int levels);

/// Nearest-centroid lookup per dimension; boundary ties go to the lower
/// index. Returns cell indices and centroid reconstructions.
std::pair<Eigen::VectorXi, Eigen::VectorXd> quantize(const Eigen::VectorXd& x,
                                                     const QuantizerModel& q);

/// PCA model: mean, orthonormal components (columns), explained variances
/// in descending order.
struct PcaModel {
    Eigen::VectorXd mean;
    Eigen::MatrixXd components;  // dim x k
    Eigen::VectorXd explained_variance;

    Eigen::VectorXd project(const Eigen::VectorXd& x) const {
        return components.transpose() * (x - mean);
    }
};

/// Top-k eigenvectors of the sample covariance of data (rows = samples).
/// Sign convention: the largest-magnitude entry of each component is
/// positive. Throws if k exceeds the numerical rank.
PcaModel fit_pca(const Eigen::MatrixXd& data, int k);

/// Per-dimension affine normalization fitted on the training split.
struct Standardizer {
    Eigen::VectorXd mean;
    Eigen::VectorXd scale;  // standard deviation; constant dims get 1

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
        return (x - mean).cwiseQuotient(scale);
    }
};

Standardizer fit_standardizer(const Eigen::MatrixXd& data);

/// Concatenated angular features of one UE over the selected CBS indices
/// (in index order), quantized when a model is supplied.
FeatureVector build_features(const Scenario& scenario, Vec2 ue_pos,
                             std::span<const int> cbs_indices,
                             const QuantizerModel* quantizer = nullptr);

}  // namespace rbfi
