// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the rbfi authors

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace rbfi {

struct Dataset;

/// Empirical joint distribution over (feature symbol, label) pairs.
struct DiscreteJoint {
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t n = 0;

    void add(std::uint64_t key) {
        ++counts[key];
        ++n;
    }
    double entropy_bits() const;
};

/// Plug-in entropy estimate of a label sequence, in bits.
double entropy_bits(std::span<const int> labels);

/// Plug-in mutual information I = H(sym) + H(label) - H(sym, label) in bits,
/// clamped at zero from below. Symbols are small discrete tuples.
double mutual_information_bits(const std::vector<std::vector<int>>& symbols,
                               std::span<const int> labels);

/// Max over feature dimensions of |Pearson correlation(dim, label index)|.
/// Constant dimensions contribute zero. Rows of features are samples.
double max_abs_linear_correlation(const Eigen::MatrixXd& features, std::span<const int> labels);

/// One row of the feasibility analysis for a dataset labeled under a
/// sinusoidal codebook of a given size.
struct FeasibilityRow {
    int codebook_size = 0;
    double h_label_bits = 0.0;
    double mi_bits = 0.0;
    double max_abs_corr = 0.0;
    std::size_t n_samples = 0;
    bool adequate = true;  // n >= 100 x joint-alphabet size
};

/// Pipeline: angular features -> PCA(pca_k) -> per-component Lloyd(levels)
/// -> plug-in mutual information against the dataset labels. The plug-in
/// estimate is a conservative lower bound of the underlying dependence
/// (data processing); the adequacy flag warns when the sample budget is
/// small relative to the joint alphabet. max_abs_corr is computed on the
/// raw channel real/imag parts against the label.
FeasibilityRow feasibility_report(const Dataset& dataset, int pca_k, int levels);

}  // namespace rbfi
