// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the rbfi authors

#include "rbfi/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rbfi {

std::string Codebook::id() const {
    const char* k = kind == CodebookKind::Dft ? "dft" : "sin";
    return std::string(k) + ":" + std::to_string(size()) + "x" + std::to_string(dim());
}

Codebook dft_codebook(int n) {
    if (n < 1) throw std::invalid_argument("dft_codebook: n must be >= 1");
    Codebook cb;
    cb.kind = CodebookKind::Dft;
    cb.vectors.resize(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
            // k*m reduced mod n keeps the phase argument small and exact
            const long r = static_cast<long>(k) * m % n;
            cb.vectors(m, k) = std::polar(scale, kTwoPi * static_cast<double>(r) / n);
        }
    return cb;
}

Codebook sinusoidal_codebook(int size, int n) {
    if (size < 1) throw std::invalid_argument("sinusoidal_codebook: size must be >= 1");
    if (n < 1) throw std::invalid_argument("sinusoidal_codebook: n must be >= 1");
    Codebook cb;
    cb.kind = CodebookKind::Sinusoidal;
    cb.vectors.resize(n, size);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < size; ++k) {
        const double u = -1.0 + 2.0 * k / size;
        for (int m = 0; m < n; ++m)
            cb.vectors(m, k) = std::polar(scale, kTwoPi / 2.0 * m * u);
    }
    return cb;
}

Eigen::VectorXcd mrt_weights(const ChannelVector& h) {
    const double norm = h.coefficients.norm();
    if (norm <= 0.0) throw std::invalid_argument("mrt_weights: zero channel");
    return h.coefficients / norm;
}

BeamDecision select_optimal_beam(const ChannelVector& h, const Codebook& cb) {
    if (h.coefficients.size() != cb.vectors.rows())
        throw std::invalid_argument("select_optimal_beam: dimension mismatch");
    BeamDecision d;
    d.scores = (h.coefficients.adjoint() * cb.vectors).cwiseAbs2().transpose();
    d.ranked_indices.resize(cb.size());
    std::iota(d.ranked_indices.begin(), d.ranked_indices.end(), 0);
    std::stable_sort(d.ranked_indices.begin(), d.ranked_indices.end(),
                     [&](int a, int b) { return d.scores(a) > d.scores(b); });
    d.label = d.ranked_indices.front();
    return d;
}

Eigen::MatrixXcd mmse_precoder(const std::vector<Eigen::VectorXcd>& h_hat, double noise_power,
                               bool total_power_constraint) {
    if (h_hat.empty()) throw std::invalid_argument("mmse_precoder: need at least one UE");
    if (noise_power < 0.0) throw std::invalid_argument("mmse_precoder: negative noise power");
    const Eigen::Index dim = h_hat.front().size();
    const Eigen::Index users = static_cast<Eigen::Index>(h_hat.size());
    Eigen::MatrixXcd H(dim, users);
    for (Eigen::Index u = 0; u < users; ++u) {
        if (h_hat[u].size() != dim) throw std::invalid_argument("mmse_precoder: dim mismatch");
        H.col(u) = h_hat[u];
    }

    Eigen::MatrixXcd gram = H.adjoint() * H;
    gram.diagonal().array() += noise_power;
    const Eigen::FullPivLU<Eigen::MatrixXcd> lu(gram);
    if (!lu.isInvertible())
        throw std::invalid_argument("mmse_precoder: singular system (rank-deficient at zero noise)");
    Eigen::MatrixXcd W = H * lu.inverse();

    if (total_power_constraint) {
        const double norm = W.norm();
        if (norm <= 0.0) throw std::invalid_argument("mmse_precoder: zero precoder");
        W *= std::sqrt(static_cast<double>(users)) / norm;
    } else {
        for (Eigen::Index u = 0; u < users; ++u) {
            const double norm = W.col(u).norm();
            if (norm <= 0.0) throw std::invalid_argument("mmse_precoder: zero precoder column");
            W.col(u) /= norm;
        }
    }
    return W;
}

std::vector<double> multiuser_sinr(const std::vector<Eigen::VectorXcd>& h_true,
                                   const Eigen::MatrixXcd& w, double noise_power) {
    const Eigen::Index users = static_cast<Eigen::Index>(h_true.size());
    if (w.cols() != users) throw std::invalid_argument("multiuser_sinr: user count mismatch");
    std::vector<double> out(users);
    for (Eigen::Index u = 0; u < users; ++u) {
        if (h_true[u].size() != w.rows())
            throw std::invalid_argument("multiuser_sinr: dimension mismatch");
        double signal = 0.0, interference = 0.0;
        for (Eigen::Index v = 0; v < users; ++v) {
            const double p = std::norm(h_true[u].dot(w.col(v)));
            if (v == u)
                signal = p;
            else
                interference += p;
        }
        out[u] = signal / (interference + noise_power);
    }
    return out;
}

}  // namespace rbfi
