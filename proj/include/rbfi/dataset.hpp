// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the rbfi authors

#pragma once

#include <cstdint>
#include <vector>

#include "rbfi/beamforming.hpp"
#include "rbfi/channel.hpp"
#include "rbfi/scenario.hpp"

namespace rbfi {

enum class Split : std::uint8_t { Train = 0, Validation = 1, Test = 2 };

/// One labeled sample: UE position, per-CBS channels, TBS channel, the
/// optimal-beam label and the per-codeword received powers. Features are
/// angular log-amplitudes derived from the CBS channels.
struct Sample {
    Vec2 ue_pos;
    std::vector<Eigen::VectorXcd> cbs_channels;
    Eigen::VectorXcd tbs_channel;
    int label = 0;
    Eigen::VectorXd scores;
};

/// Codebook construction parameters (kept instead of the matrix so files
/// stay small and models can be matched against datasets).
struct CodebookSpec {
    CodebookKind kind = CodebookKind::Dft;
    int size = 0;  // 0 = same as TBS antenna count
    int dim = 0;

    Codebook build() const;
    std::string id() const { return build().id(); }
};

/// Labeled sample collection plus the deterministic 70/15/15 split.
struct Dataset {
    ScenarioConfig scenario_config;
    CodebookSpec codebook;
    std::uint64_t seed = 0;
    std::vector<Sample> samples;
    std::vector<Split> split;

    std::size_t size() const { return samples.size(); }
    std::vector<std::size_t> indices_of(Split s) const;

    /// Raw angular features (rows = samples) over the given CBS subset,
    /// in CBS index order.
    Eigen::MatrixXd feature_matrix(const std::vector<int>& cbs_indices) const;

    /// Re/Im parts of the raw CBS channels, rows = samples.
    Eigen::MatrixXd raw_channel_matrix(const std::vector<int>& cbs_indices) const;

    std::vector<int> labels() const;
};

/// Generate a labeled dataset: sample UE positions, compute all CBS and TBS
/// channels, label each sample by exhaustive codeword scan, and assign the
/// 70/15/15 split by a seeded shuffle. Deterministic per seed; channel
/// computation is parallel over samples with ordered output.
Dataset generate_dataset(const Scenario& scenario, const CodebookSpec& codebook,
                         std::size_t n_samples, std::uint64_t seed);

/// Recompute labels and scores under a different codebook (TBS channels are
/// kept). Used by the codebook sweeps and the feasibility analysis.
void relabel(Dataset& dataset, const CodebookSpec& codebook);

/// Per-label occurrence counts.
std::vector<std::size_t> label_histogram(const Dataset& dataset);

}  // namespace rbfi
