// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the rbfi authors

#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rbfi/channel.hpp"

namespace rbfi {

enum class CodebookKind : std::uint8_t { Dft = 0, Sinusoidal = 1 };

/// Matrix of unit-norm candidate beamforming vectors, one per column.
struct Codebook {
    Eigen::MatrixXcd vectors;  // dim x size
    CodebookKind kind = CodebookKind::Dft;

    int size() const { return static_cast<int>(vectors.cols()); }
    int dim() const { return static_cast<int>(vectors.rows()); }

    /// Stable identifier used to match models against datasets.
    std::string id() const;
};

/// Orthonormal DFT codebook: codeword k, element m = exp(j 2 pi k m / n) / sqrt(n).
Codebook dft_codebook(int n);

/// Steering-vector codebook on a uniform spatial-frequency grid
/// u_k = -1 + 2k/size; codeword element m = exp(j pi m u_k) / sqrt(n).
/// The grid resolution is independent of the antenna count.
Codebook sinusoidal_codebook(int size, int n);

/// Maximum ratio transmission weights, h / |h|.
Eigen::VectorXcd mrt_weights(const ChannelVector& h);

/// Result of scanning a codebook against a channel.
struct BeamDecision {
    int label = 0;                    // argmax codeword index
    std::vector<int> ranked_indices;  // all indices, best first
    Eigen::VectorXd scores;           // received power |h^H w_k|^2 per codeword
};

/// Exhaustive codeword scan; ties broken towards the lower index.
BeamDecision select_optimal_beam(const ChannelVector& h, const Codebook& cb);

/// Multi-user MMSE precoder W = H (H^H H + sigma^2 I)^-1, one column per UE.
/// Columns are normalized to unit norm (per-UE power constraint) unless
/// total_power_constraint is set, which scales the whole matrix instead.
Eigen::MatrixXcd mmse_precoder(const std::vector<Eigen::VectorXcd>& h_hat, double noise_power,
                               bool total_power_constraint = false);

/// Per-UE SINR under precoder w: |h_u^H w_u|^2 / (sum_{v!=u} |h_u^H w_v|^2 + sigma^2).
std::vector<double> multiuser_sinr(const std::vector<Eigen::VectorXcd>& h_true,
                                   const Eigen::MatrixXcd& w, double noise_power);

}  // namespace rbfi
