// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the rbfi authors

#include "rbfi/dataset.hpp"

#include <algorithm>
#include <stdexcept>

#include "rbfi/features.hpp"
#include "rbfi/parallel.hpp"
#include "rbfi/rng.hpp"

namespace rbfi {

Codebook CodebookSpec::build() const {
    if (dim < 1) throw std::invalid_argument("CodebookSpec: dim not set");
    if (kind == CodebookKind::Dft) {
        const int n = size > 0 ? size : dim;
        if (n != dim)
            throw std::invalid_argument("CodebookSpec: DFT codebook size must equal the dimension");
        return dft_codebook(dim);
    }
    const int n = size > 0 ? size : dim;
    return sinusoidal_codebook(n, dim);
}

std::vector<std::size_t> Dataset::indices_of(Split s) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < split.size(); ++i)
        if (split[i] == s) out.push_back(i);
    return out;
}

Eigen::MatrixXd Dataset::feature_matrix(const std::vector<int>& cbs_indices) const {
    if (samples.empty()) throw std::invalid_argument("feature_matrix: empty dataset");
    Eigen::Index total = 0;
    for (const int c : cbs_indices) {
        if (c < 0 || c >= static_cast<int>(samples.front().cbs_channels.size()))
            throw std::invalid_argument("feature_matrix: CBS index out of range");
        total += samples.front().cbs_channels[c].size();
    }
    Eigen::MatrixXd out(static_cast<Eigen::Index>(samples.size()), total);
    parallel_for(samples.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            Eigen::Index offset = 0;
            for (const int c : cbs_indices) {
                const auto& h = samples[i].cbs_channels[c];
                out.row(static_cast<Eigen::Index>(i)).segment(offset, h.size()) =
                    angular_transform(h).transpose();
                offset += h.size();
            }
        }
    });
    return out;
}

Eigen::MatrixXd Dataset::raw_channel_matrix(const std::vector<int>& cbs_indices) const {
    if (samples.empty()) throw std::invalid_argument("raw_channel_matrix: empty dataset");
    Eigen::Index total = 0;
    for (const int c : cbs_indices) total += samples.front().cbs_channels[c].size();
    Eigen::MatrixXd out(static_cast<Eigen::Index>(samples.size()), 2 * total);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        Eigen::Index offset = 0;
        for (const int c : cbs_indices) {
            const auto& h = samples[i].cbs_channels[c];
            out.row(static_cast<Eigen::Index>(i)).segment(offset, h.size()) = h.real().transpose();
            out.row(static_cast<Eigen::Index>(i)).segment(offset + total, h.size()) =
                h.imag().transpose();
            offset += h.size();
        }
    }
    return out;
}

std::vector<int> Dataset::labels() const {
    std::vector<int> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) out[i] = samples[i].label;
    return out;
}

Dataset generate_dataset(const Scenario& scenario, const CodebookSpec& codebook,
                         std::size_t n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("generate_dataset: need at least one sample");

    Dataset ds;
    ds.scenario_config = scenario.config;
    ds.codebook = codebook;
    if (ds.codebook.dim == 0) ds.codebook.dim = scenario.tbs.array.num_elements;
    if (ds.codebook.size == 0) ds.codebook.size = ds.codebook.dim;
    ds.seed = seed;

    const Codebook cb = ds.codebook.build();
    if (cb.dim() != scenario.tbs.array.num_elements)
        throw std::invalid_argument("generate_dataset: codebook dimension != TBS antennas");

    const std::vector<Vec2> positions =
        sample_ue_positions(scenario, n_samples, Rng::derive(seed, 1));

    ds.samples.resize(n_samples);
    parallel_for(n_samples, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            Sample& s = ds.samples[i];
            s.ue_pos = positions[i];
            s.cbs_channels.reserve(scenario.cbs.size());
            for (int c = 0; c < static_cast<int>(scenario.cbs.size()); ++c) {
                ChannelVector h = channel_vector(scenario, s.ue_pos, BsSelector::cbs(c));
                s.cbs_channels.push_back(std::move(h.coefficients));
            }
            ChannelVector ht = channel_vector(scenario, s.ue_pos, BsSelector::tbs());
            ht.ue_index = static_cast<int>(i);
            const BeamDecision d = select_optimal_beam(ht, cb);
            s.tbs_channel = std::move(ht.coefficients);
            s.label = d.label;
            s.scores = d.scores;
        }
    });

    // seeded 70/15/15 partition
    std::vector<std::size_t> order(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) order[i] = i;
    Rng rng(Rng::derive(seed, 2));
    for (std::size_t i = n_samples - 1; i > 0; --i)
        std::swap(order[i], order[rng.uniform_index(i + 1)]);
    const std::size_t n_train = static_cast<std::size_t>(0.70 * static_cast<double>(n_samples));
    const std::size_t n_val = static_cast<std::size_t>(0.15 * static_cast<double>(n_samples));
    ds.split.assign(n_samples, Split::Test);
    for (std::size_t i = 0; i < n_train; ++i) ds.split[order[i]] = Split::Train;
    for (std::size_t i = n_train; i < n_train + n_val && i < n_samples; ++i)
        ds.split[order[i]] = Split::Validation;
    return ds;
}

void relabel(Dataset& dataset, const CodebookSpec& codebook) {
    dataset.codebook = codebook;
    if (dataset.codebook.dim == 0 && !dataset.samples.empty())
        dataset.codebook.dim = static_cast<int>(dataset.samples.front().tbs_channel.size());
    if (dataset.codebook.size == 0) dataset.codebook.size = dataset.codebook.dim;
    const Codebook cb = dataset.codebook.build();
    parallel_for(dataset.samples.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            Sample& s = dataset.samples[i];
            ChannelVector h;
            h.coefficients = s.tbs_channel;
            const BeamDecision d = select_optimal_beam(h, cb);
            s.label = d.label;
            s.scores = d.scores;
        }
    });
}

std::vector<std::size_t> label_histogram(const Dataset& dataset) {
    std::vector<std::size_t> hist(static_cast<std::size_t>(dataset.codebook.size), 0);
    for (const Sample& s : dataset.samples) {
        if (s.label >= 0 && static_cast<std::size_t>(s.label) < hist.size()) ++hist[s.label];
    }
    return hist;
}

}  // namespace rbfi
