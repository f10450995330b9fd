// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the rbfi authors

#include "rbfi/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace rbfi {

namespace {

constexpr double kLogGuard = 1e-12;

// Unitary DFT matrix, cached per size. Channel lengths are small, so the
// direct matrix product is both fast enough and exactly reproducible.
const Eigen::MatrixXcd& dft_matrix(Eigen::Index n) {
    static std::map<Eigen::Index, Eigen::MatrixXcd> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Eigen::MatrixXcd f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index m = 0; m < n; ++m) {
            const long r = static_cast<long>(k) * m % n;
            f(k, m) = std::polar(scale, -kTwoPi * static_cast<double>(r) / n);
        }
    return cache.emplace(n, std::move(f)).first->second;
}

}  // namespace

Eigen::VectorXd angular_transform(const Eigen::VectorXcd& h) {
    if (h.size() < 1) throw std::invalid_argument("angular_transform: empty channel");
    const Eigen::VectorXd mag = (dft_matrix(h.size()) * h).cwiseAbs();
    return (mag.array() + kLogGuard).log10();
}

Eigen::MatrixXd angular_transform_batch(const Eigen::MatrixXcd& channels) {
    if (channels.rows() < 1) throw std::invalid_argument("angular_transform_batch: empty");
    const Eigen::MatrixXd mag = (dft_matrix(channels.rows()) * channels).cwiseAbs();
    return (mag.array() + kLogGuard).log10();
}

int ScalarQuantizer::cell(double x) const {
    // count of boundaries strictly below x; ties at a boundary go down
    const double* begin = boundaries.data();
    const double* end = begin + boundaries.size();
    return static_cast<int>(std::lower_bound(begin, end, x) - begin);
}

ScalarQuantizer fit_lloyd(std::span<const double> samples, int levels, int max_iter, double tol) {
    if (levels < 1) throw std::invalid_argument("fit_lloyd: levels must be >= 1");
    if (samples.empty()) throw std::invalid_argument("fit_lloyd: no samples");

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> distinct(sorted);
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    ScalarQuantizer q;
    if (static_cast<int>(distinct.size()) < levels) {
        q.degenerate = true;
        levels = static_cast<int>(distinct.size());
        q.centroids = Eigen::Map<const Eigen::VectorXd>(distinct.data(), levels);
    } else {
        // quantile initialization
        q.centroids.resize(levels);
        const std::size_t n = sorted.size();
        for (int j = 0; j < levels; ++j) {
            const double pos = (j + 0.5) / levels * (n - 1);
            const std::size_t lo = static_cast<std::size_t>(pos);
            const double frac = pos - static_cast<double>(lo);
            q.centroids(j) =
                sorted[lo] + frac * (sorted[std::min(lo + 1, n - 1)] - sorted[lo]);
        }
        // collapse accidental duplicates from quantile init
        for (int j = 1; j < levels; ++j)
            if (q.centroids(j) <= q.centroids(j - 1))
                q.centroids(j) = std::nextafter(q.centroids(j - 1), 1e300);

        double prev_distortion = std::numeric_limits<double>::infinity();
        std::vector<double> sums(levels);
        std::vector<std::size_t> counts(levels);
        for (int iter = 0; iter < max_iter; ++iter) {
            std::fill(sums.begin(), sums.end(), 0.0);
            std::fill(counts.begin(), counts.end(), std::size_t{0});
            double distortion = 0.0;
            int j = 0;
            for (const double x : sorted) {
                // sorted input: advance the cell pointer monotonically
                while (j + 1 < levels && x > 0.5 * (q.centroids(j) + q.centroids(j + 1))) ++j;
                const double d = x - q.centroids(j);
                distortion += d * d;
                sums[j] += x;
                ++counts[j];
            }
            distortion /= static_cast<double>(sorted.size());
            for (int c = 0; c < levels; ++c)
                if (counts[c] > 0) q.centroids(c) = sums[c] / static_cast<double>(counts[c]);
            if (prev_distortion - distortion < tol) break;
            prev_distortion = distortion;
        }
    }

    q.boundaries.resize(std::max(levels - 1, 0));
    for (int j = 0; j + 1 < levels; ++j)
        q.boundaries(j) = 0.5 * (q.centroids(j) + q.centroids(j + 1));
    return q;
}

QuantizerModel fit_quantizer(const Eigen::MatrixXd& data, int levels) {
    QuantizerModel model;
    model.levels = levels;
    model.dims.reserve(data.cols());
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
        const Eigen::VectorXd col = data.col(j);
        model.dims.push_back(fit_lloyd(std::span<const double>(col.data(), col.size()), levels));
    }
    return model;
}

std::pair<Eigen::VectorXi, Eigen::VectorXd> quantize(const Eigen::VectorXd& x,
                                                     const QuantizerModel& q) {
    if (x.size() != q.dimension())
        throw std::invalid_argument("quantize: dimension mismatch");
    Eigen::VectorXi idx(x.size());
    Eigen::VectorXd rec(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const int c = q.dims[j].cell(x(j));
        idx(j) = c;
        rec(j) = q.dims[j].centroids(c);
    }
    return {idx, rec};
}

PcaModel fit_pca(const Eigen::MatrixXd& data, int k) {
    const Eigen::Index n = data.rows();
    const Eigen::Index dim = data.cols();
    if (k < 1 || k > dim) throw std::invalid_argument("fit_pca: bad component count");
    if (n < k) throw std::invalid_argument("fit_pca: need at least k samples");

    PcaModel model;
    model.mean = data.colwise().mean();
    const Eigen::MatrixXd centered = data.rowwise() - model.mean.transpose();
    const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw std::runtime_error("fit_pca: eigensolver failed");

    // eigenvalues ascend; take the top k in descending order
    const Eigen::VectorXd evals = solver.eigenvalues();
    const double rank_tol = std::max(evals(dim - 1), 0.0) * 1e-12;
    model.components.resize(dim, k);
    model.explained_variance.resize(k);
    for (int j = 0; j < k; ++j) {
        const Eigen::Index src = dim - 1 - j;
        if (evals(src) <= rank_tol)
            throw std::invalid_argument("fit_pca: k exceeds data rank");
        Eigen::VectorXd v = solver.eigenvectors().col(src);
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        if (v(imax) < 0.0) v = -v;
        model.components.col(j) = v;
        model.explained_variance(j) = std::max(evals(src), 0.0);
    }
    return model;
}

Standardizer fit_standardizer(const Eigen::MatrixXd& data) {
    if (data.rows() < 1) throw std::invalid_argument("fit_standardizer: no samples");
    Standardizer s;
    s.mean = data.colwise().mean();
    const Eigen::MatrixXd centered = data.rowwise() - s.mean.transpose();
    s.scale = (centered.cwiseAbs2().colwise().sum() / static_cast<double>(data.rows()))
                  .cwiseSqrt()
                  .transpose();
    for (Eigen::Index j = 0; j < s.scale.size(); ++j)
        if (s.scale(j) <= 0.0) s.scale(j) = 1.0;
    return s;
}

FeatureVector build_features(const Scenario& scenario, Vec2 ue_pos,
                             std::span<const int> cbs_indices, const QuantizerModel* quantizer) {
    if (cbs_indices.empty()) throw std::invalid_argument("build_features: no CBS selected");

    Eigen::Index total = 0;
    for (const int i : cbs_indices) {
        if (i < 0 || i >= static_cast<int>(scenario.cbs.size()))
            throw std::invalid_argument("build_features: CBS index out of range");
        total += scenario.cbs[i].array.num_elements;
    }

    FeatureVector out;
    out.values.resize(total);
    Eigen::Index offset = 0;
    for (const int i : cbs_indices) {
        const ChannelVector h = channel_vector(scenario, ue_pos, BsSelector::cbs(i));
        out.values.segment(offset, h.size()) = angular_transform(h.coefficients);
        offset += h.size();
    }
    if (quantizer != nullptr) {
        auto [idx, rec] = quantize(out.values, *quantizer);
        out.quantized = idx;
        out.values = rec;
    }
    return out;
}

}  // namespace rbfi
