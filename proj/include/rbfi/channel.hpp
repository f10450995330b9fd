// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the rbfi authors

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>

#include "rbfi/scenario.hpp"

namespace rbfi {

using cplx = std::complex<double>;

/// Complex per-antenna response of one UE-BS link. Coefficients are
/// dimensionless voltage gains; powers are |.|^2.
struct ChannelVector {
    Eigen::VectorXcd coefficients;
    int ue_index = -1;
    int bs_index = -1;

    Eigen::Index size() const { return coefficients.size(); }
};

/// Selects which station of a scenario a link refers to.
struct BsSelector {
    enum class Kind { Cbs, Tbs };
    Kind kind = Kind::Tbs;
    int index = 0;

    static BsSelector cbs(int i) { return {Kind::Cbs, i}; }
    static BsSelector tbs() { return {Kind::Tbs, 0}; }
};

/// Direct-path response: (lambda / (2 pi d0)) * beta0 * exp(-j 2 pi d0 / lambda).
/// The phase is reduced modulo one wavelength before the complex exponential;
/// fmod on doubles is exact, which keeps the phase accurate at long ranges.
cplx los_response(Vec2 ue_pos, Vec2 antenna_pos, double wavelength, double beta0);

/// Sum of single-bounce responses over the scatterer field:
/// sum_i (lambda / (2 pi d_i)) * beta_i * exp(-j 2 pi d_i / lambda + j phi_i)
/// with d_i = |ue - scatterer_i| + |scatterer_i - antenna|.
cplx nlos_response(Vec2 ue_pos, Vec2 antenna_pos, std::span<const Scatterer> scatterers,
                   double wavelength);

/// Rician mix: sqrt(k/(k+1)) h_los + sqrt(1/(k+1)) h_nlos, elementwise.
Eigen::VectorXcd rician_combine(const Eigen::VectorXcd& h_los, const Eigen::VectorXcd& h_nlos,
                                double k);

/// Full per-element channel of one UE-BS link, using exact per-element
/// path lengths (spherical wavefront) unless the scenario requests the
/// planar approximation.
ChannelVector channel_vector(const Scenario& scenario, Vec2 ue_pos, BsSelector bs);

/// Receive symbol of a single link: h^H w x + noise. Requires |w| = 1.
cplx receive_signal(const ChannelVector& h, const Eigen::VectorXcd& w, cplx x, cplx noise);

}  // namespace rbfi
