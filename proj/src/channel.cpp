// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the rbfi authors

#include "rbfi/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace rbfi {

namespace {

// exp(-j 2 pi d / lambda + j extra_phase), with the path length reduced
// modulo lambda first. fmod is exact on IEEE doubles, so the reduced phase
// carries no large-argument cancellation.
cplx path_phasor(double path_length, double wavelength, double extra_phase) {
    const double frac = std::fmod(path_length, wavelength) / wavelength;
    return std::polar(1.0, -kTwoPi * frac + extra_phase);
}

double leg(Vec2 a, Vec2 b) { return distance(a, b); }

}  // namespace

cplx los_response(Vec2 ue_pos, Vec2 antenna_pos, double wavelength, double beta0) {
    const double d0 = leg(ue_pos, antenna_pos);
    if (d0 <= 0.0) throw std::invalid_argument("LoS path length must be positive");
    const double amp = wavelength / (kTwoPi * d0) * beta0;
    return amp * path_phasor(d0, wavelength, 0.0);
}

cplx nlos_response(Vec2 ue_pos, Vec2 antenna_pos, std::span<const Scatterer> scatterers,
                   double wavelength) {
    cplx sum{0.0, 0.0};
    for (const Scatterer& sc : scatterers) {
        const double di = leg(ue_pos, sc.position) + leg(sc.position, antenna_pos);
        if (di <= 0.0) throw std::invalid_argument("scatterer path length must be positive");
        const double amp = wavelength / (kTwoPi * di) * sc.amplitude;
        sum += amp * path_phasor(di, wavelength, sc.phase_shift);
    }
    return sum;
}

Eigen::VectorXcd rician_combine(const Eigen::VectorXcd& h_los, const Eigen::VectorXcd& h_nlos,
                                double k) {
    if (h_los.size() != h_nlos.size())
        throw std::invalid_argument("rician_combine: length mismatch");
    if (k < 0.0) throw std::invalid_argument("rician_combine: k must be >= 0");
    const double w_los = std::sqrt(k / (k + 1.0));
    const double w_nlos = std::sqrt(1.0 / (k + 1.0));
    return w_los * h_los + w_nlos * h_nlos;
}

ChannelVector channel_vector(const Scenario& scenario, Vec2 ue_pos, BsSelector bs) {
    const BsSite* site = nullptr;
    int bs_index = 0;
    if (bs.kind == BsSelector::Kind::Tbs) {
        site = &scenario.tbs;
        bs_index = -1;
    } else {
        if (bs.index < 0 || bs.index >= static_cast<int>(scenario.cbs.size()))
            throw std::invalid_argument("channel_vector: CBS index out of range");
        site = &scenario.cbs[bs.index];
        bs_index = bs.index;
    }

    const auto& elements = site->array.element_positions;
    const Eigen::Index n = static_cast<Eigen::Index>(elements.size());
    const double lambda = scenario.wavelength;

    Eigen::VectorXcd h_los(n), h_nlos(n);

    if (!scenario.planar_wave) {
        // UE-side legs of the scatterer paths are element-independent.
        std::vector<double> ue_leg(scenario.scatterers.size());
        for (std::size_t i = 0; i < scenario.scatterers.size(); ++i)
            ue_leg[i] = leg(ue_pos, scenario.scatterers[i].position);

        for (Eigen::Index m = 0; m < n; ++m) {
            h_los(m) = los_response(ue_pos, elements[m], lambda, scenario.los_amplitude);
            cplx sum{0.0, 0.0};
            for (std::size_t i = 0; i < scenario.scatterers.size(); ++i) {
                const Scatterer& sc = scenario.scatterers[i];
                const double di = ue_leg[i] + leg(sc.position, elements[m]);
                const double amp = lambda / (kTwoPi * di) * sc.amplitude;
                sum += amp * path_phasor(di, lambda, sc.phase_shift);
            }
            h_nlos(m) = sum;
        }
    } else {
        // Planar approximation: per-element path lengths are extrapolated
        // from the array center along the arrival direction.
        const Vec2 center = site->position;
        const auto planar_length = [&](Vec2 source, Vec2 element) {
            const double dc = leg(source, center);
            const Vec2 u = (1.0 / dc) * (source - center);
            const Vec2 off = element - center;
            return dc - (off.x * u.x + off.y * u.y);
        };
        std::vector<double> ue_leg(scenario.scatterers.size());
        for (std::size_t i = 0; i < scenario.scatterers.size(); ++i)
            ue_leg[i] = leg(ue_pos, scenario.scatterers[i].position);

        const double d_center = leg(ue_pos, center);
        for (Eigen::Index m = 0; m < n; ++m) {
            const double d0 = planar_length(ue_pos, elements[m]);
            const double amp0 = lambda / (kTwoPi * d_center) * scenario.los_amplitude;
            h_los(m) = amp0 * path_phasor(d0, lambda, 0.0);
            cplx sum{0.0, 0.0};
            for (std::size_t i = 0; i < scenario.scatterers.size(); ++i) {
                const Scatterer& sc = scenario.scatterers[i];
                const double di = ue_leg[i] + planar_length(sc.position, elements[m]);
                const double amp =
                    lambda / (kTwoPi * (ue_leg[i] + leg(sc.position, center))) * sc.amplitude;
                sum += amp * path_phasor(di, lambda, sc.phase_shift);
            }
            h_nlos(m) = sum;
        }
    }

    ChannelVector out;
    out.coefficients = rician_combine(h_los, h_nlos, scenario.rician_k);
    out.bs_index = bs_index;
    return out;
}

cplx receive_signal(const ChannelVector& h, const Eigen::VectorXcd& w, cplx x, cplx noise) {
    if (h.coefficients.size() != w.size())
        throw std::invalid_argument("receive_signal: dimension mismatch");
    if (std::abs(w.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("receive_signal: beam vector must be unit norm");
    return h.coefficients.dot(w) * x + noise;
}

}  // namespace rbfi
