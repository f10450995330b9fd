// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the rbfi authors

#pragma once

#include <vector>

#include "rbfi/dataset.hpp"
#include "rbfi/pipeline.hpp"

namespace rbfi {

/// Received-power ratio |h^H w_selected|^2 / |h^H w_optimal|^2 in [0, 1]
/// when `optimal` is the true argmax codeword. The ratio switches to
/// amplitudes when power_ratio is false.
double normalized_strength(const ChannelVector& h, const Eigen::VectorXcd& selected,
                           const Eigen::VectorXcd& optimal, bool power_ratio = true);

/// Evaluation summary over a test split.
struct EvalReport {
    std::size_t n = 0;
    int topk = 1;
    double top1_accuracy = 0.0;
    double topk_accuracy = 0.0;
    /// Also counts a prediction as correct when its best-candidate
    /// normalized strength is >= 0.99 (near-tie tolerance).
    double tie_tolerant_accuracy = 0.0;
    double mean_normalized_strength_top1 = 0.0;
    double mean_normalized_strength = 0.0;  // best of the k candidates
    std::vector<double> normalized_strength;  // per sample, best of k
    std::vector<double> cdf_grid;   // 1000 points spanning [0, 1]
    std::vector<double> cdf_value;  // empirical CDF at the grid
};

/// Evaluate ranked predictions (one list per entry of `indices`) against
/// the dataset's stored labels and per-codeword scores.
EvalReport evaluate_predictions(const std::vector<std::vector<int>>& ranked,
                                const Dataset& dataset,
                                const std::vector<std::size_t>& indices, int topk,
                                bool power_ratio = true);

/// Evaluate a trained bundle on the dataset's test split.
EvalReport evaluate(const ModelBundle& model, const Dataset& dataset, int topk,
                    bool power_ratio = true);

/// Genie location-based beam: unit-norm conjugate steering vector matched
/// to the modeled direct-path response at the exact UE position (spherical
/// wavefront). Coincides with MRT when the channel is pure LoS.
Eigen::VectorXcd location_baseline(const Scenario& scenario, Vec2 ue_pos);

/// One grid cell of the location-baseline comparison. Means are taken over
/// the same test UEs; both normalizations are reported: against MRT
/// (unconstrained steering for LO) and against the codebook optimum (LO
/// constrained to the best codeword for the modeled LoS response).
struct BaselineRow {
    double rician_k_linear = 0.0;
    int num_cbs = 1;
    double nn_mean_vs_mrt = 0.0;
    double lo_mean_vs_mrt = 0.0;
    double nn_mean_vs_opt = 0.0;
    double lo_codeword_mean_vs_opt = 0.0;
    double nn_top1_accuracy = 0.0;
};

/// Train and evaluate the inference scheme against the location bound over
/// a (Rician factor x CBS count) grid. One model is trained per cell.
std::vector<BaselineRow> compare_baseline(const ScenarioConfig& base_config,
                                          const std::vector<double>& rician_k_values,
                                          const std::vector<int>& cbs_counts,
                                          const CodebookSpec& codebook, std::size_t n_samples,
                                          const FeatureOptions& feature_options,
                                          const TrainHyper& hyper, std::uint64_t seed);

/// Two-UE MMSE study: per random pair, SINR under (a) perfect-CSI MMSE,
/// (b) MMSE on the true optimal codewords, (c) MMSE on the predicted
/// codewords. Values are per-UE SINRs normalized by (a).
struct MmseStudyReport {
    double noise_power = 0.0;
    std::vector<double> normalized_quantized;  // (b)/(a) per UE
    std::vector<double> normalized_inferred;   // (c)/(a) per UE
    double median_quantized = 0.0;
    double median_inferred = 0.0;
};

/// noise_power <= 0 calibrates sigma^2 so the median single-UE SNR is 10 dB.
MmseStudyReport mmse_study(const ModelBundle& model, const Scenario& scenario,
                           const CodebookSpec& codebook, std::size_t n_pairs,
                           double noise_power, std::uint64_t seed);

struct CodebookSweepRow {
    int size = 0;
    double top1_accuracy = 0.0;
    double topk_accuracy = 0.0;
    double mean_normalized_strength = 0.0;  // vs codebook optimum, top-1
    double mean_vs_mrt = 0.0;               // selected beam vs MRT
    double quantization_loss = 0.0;         // 1 - mean(|h^H w_opt|^2 / |h|^2)
};

/// Train one model per sinusoidal codebook size over a shared sample set.
std::vector<CodebookSweepRow> sweep_codebook(const Scenario& scenario,
                                             const std::vector<int>& sizes,
                                             std::size_t n_samples,
                                             const FeatureOptions& feature_options,
                                             const TrainHyper& hyper, std::uint64_t seed,
                                             int topk = 1);

struct ScattererSweepRow {
    int num_scatterers = 0;
    int num_cbs = 1;
    int topk = 1;
    double accuracy = 0.0;
    double mean_normalized_strength = 0.0;  // best of k vs codebook optimum
};

/// Regenerate the scenario per scatterer count (same seed otherwise), train
/// and evaluate the 1-CBS/2-CBS and top-1/top-2 variants.
std::vector<ScattererSweepRow> sweep_scatterers(const ScenarioConfig& base_config,
                                                const std::vector<int>& counts,
                                                const CodebookSpec& codebook,
                                                std::size_t n_samples,
                                                const FeatureOptions& feature_options,
                                                const TrainHyper& hyper, std::uint64_t seed);

}  // namespace rbfi
