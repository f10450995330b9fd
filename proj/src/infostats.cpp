// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the rbfi authors

#include "rbfi/infostats.hpp"

#include <cmath>
#include <stdexcept>

#include "rbfi/dataset.hpp"
#include "rbfi/features.hpp"

namespace rbfi {

double DiscreteJoint::entropy_bits() const {
    if (n == 0) return 0.0;
    double h = 0.0;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (const auto& [key, count] : counts) {
        const double p = static_cast<double>(count) * inv_n;
        h -= p * std::log2(p);
    }
    return h;
}

double entropy_bits(std::span<const int> labels) {
    if (labels.empty()) throw std::invalid_argument("entropy_bits: empty input");
    DiscreteJoint joint;
    for (const int l : labels) joint.add(static_cast<std::uint64_t>(static_cast<std::int64_t>(l)));
    return joint.entropy_bits();
}

namespace {

// Exact injective packing of a small tuple into 40 bits (8 bits per
// component, at most 5 components). Leaves room for a 16-bit label in the
// joint key, so joint counting is collision-free.
std::uint64_t pack_symbol(const std::vector<int>& sym) {
    if (sym.size() > 5)
        throw std::invalid_argument("mutual_information_bits: symbol tuples limited to 5 components");
    std::uint64_t key = 0;
    for (const int v : sym) {
        if (v < 0 || v > 255)
            throw std::invalid_argument("mutual_information_bits: symbol values limited to [0, 255]");
        key = (key << 8) | static_cast<std::uint64_t>(v);
    }
    return key;
}

}  // namespace

double mutual_information_bits(const std::vector<std::vector<int>>& symbols,
                               std::span<const int> labels) {
    if (symbols.size() != labels.size())
        throw std::invalid_argument("mutual_information_bits: length mismatch");
    if (symbols.empty()) throw std::invalid_argument("mutual_information_bits: empty input");

    DiscreteJoint sym, lab, joint;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        const std::uint64_t s = pack_symbol(symbols[i]);
        const std::uint64_t l = static_cast<std::uint64_t>(static_cast<std::uint32_t>(labels[i]));
        if (l > 0xffff) throw std::invalid_argument("mutual_information_bits: label out of range");
        sym.add(s);
        lab.add(l);
        joint.add((s << 16) | l);
    }
    const double mi = sym.entropy_bits() + lab.entropy_bits() - joint.entropy_bits();
    return std::max(mi, 0.0);
}

double max_abs_linear_correlation(const Eigen::MatrixXd& features, std::span<const int> labels) {
    const Eigen::Index n = features.rows();
    if (n < 2) throw std::invalid_argument("max_abs_linear_correlation: need >= 2 samples");
    if (static_cast<std::size_t>(n) != labels.size())
        throw std::invalid_argument("max_abs_linear_correlation: length mismatch");

    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y(i) = static_cast<double>(labels[i]);
    y.array() -= y.mean();
    const double sy = y.norm();
    if (sy <= 0.0) return 0.0;

    double best = 0.0;
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
        Eigen::VectorXd x = features.col(j);
        x.array() -= x.mean();
        const double sx = x.norm();
        if (sx <= 0.0) continue;
        best = std::max(best, std::abs(x.dot(y)) / (sx * sy));
    }
    return best;
}

FeasibilityRow feasibility_report(const Dataset& dataset, int pca_k, int levels) {
    if (dataset.samples.empty()) throw std::invalid_argument("feasibility_report: empty dataset");

    FeasibilityRow row;
    row.codebook_size = dataset.codebook.size;
    row.n_samples = dataset.size();

    const std::vector<int> labels = dataset.labels();
    row.h_label_bits = entropy_bits(labels);

    std::vector<int> all_cbs(dataset.samples.front().cbs_channels.size());
    for (std::size_t i = 0; i < all_cbs.size(); ++i) all_cbs[i] = static_cast<int>(i);

    const Eigen::MatrixXd feats = dataset.feature_matrix(all_cbs);
    const PcaModel pca = fit_pca(feats, pca_k);
    const Eigen::MatrixXd projected =
        (feats.rowwise() - pca.mean.transpose()) * pca.components;

    std::vector<std::vector<int>> symbols(dataset.size(), std::vector<int>(pca_k));
    for (int j = 0; j < pca_k; ++j) {
        const Eigen::VectorXd col = projected.col(j);
        const ScalarQuantizer q =
            fit_lloyd(std::span<const double>(col.data(), col.size()), levels);
        for (std::size_t i = 0; i < dataset.size(); ++i)
            symbols[i][j] = q.cell(col(static_cast<Eigen::Index>(i)));
    }
    row.mi_bits = mutual_information_bits(symbols, labels);

    row.max_abs_corr = max_abs_linear_correlation(dataset.raw_channel_matrix(all_cbs), labels);

    double joint_alphabet = static_cast<double>(dataset.codebook.size);
    for (int j = 0; j < pca_k; ++j) joint_alphabet *= levels;
    row.adequate = static_cast<double>(row.n_samples) >= 100.0 * joint_alphabet;
    return row;
}

}  // namespace rbfi
