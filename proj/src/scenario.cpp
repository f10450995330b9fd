// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the rbfi authors

#include "rbfi/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "rbfi/rng.hpp"

namespace rbfi {

ArrayGeometry ArrayGeometry::ula(Vec2 center, int num_elements, double spacing,
                                 double orientation) {
    if (num_elements < 1) throw std::invalid_argument("ULA needs at least one element");
    if (spacing <= 0.0) throw std::invalid_argument("ULA spacing must be positive");
    ArrayGeometry g;
    g.num_elements = num_elements;
    g.element_spacing = spacing;
    g.orientation = orientation;
    g.element_positions.reserve(num_elements);
    const Vec2 axis{std::cos(orientation), std::sin(orientation)};
    for (int m = 0; m < num_elements; ++m) {
        const double offset = (m - 0.5 * (num_elements - 1)) * spacing;
        g.element_positions.push_back(center + offset * axis);
    }
    return g;
}

double ScenarioConfig::rician_k() const {
    if (rician_k_linear >= 0.0) return rician_k_linear;
    return std::pow(10.0, rician_k_db / 10.0);
}

namespace {

// Array axis perpendicular to the line towards the served area, so the
// broadside faces it.
double broadside_orientation(Vec2 from, Vec2 towards) {
    const Vec2 d = towards - from;
    return std::atan2(d.y, d.x) + kTwoPi / 4.0;
}

void validate(const ScenarioConfig& c) {
    if (c.carrier_frequency_ghz <= 0.0) throw std::invalid_argument("carrier frequency must be positive");
    if (c.cbs_antennas < 1 || c.tbs_antennas < 1) throw std::invalid_argument("antenna counts must be at least 1");
    if (c.tbs_radius_m <= 0.0) throw std::invalid_argument("tbs_radius_m must be positive");
    if (c.cbs_radius_m < c.tbs_radius_m) throw std::invalid_argument("cbs_radius_m must be >= tbs_radius_m");
    if (c.num_scatterers < 0) throw std::invalid_argument("num_scatterers must be >= 0");
    if (c.num_cbs < 1 || c.num_cbs > 2) throw std::invalid_argument("num_cbs must be 1 or 2");
    if (c.scatterer_amp_min <= 0.0 || c.scatterer_amp_max > 1.0 ||
        c.scatterer_amp_min > c.scatterer_amp_max)
        throw std::invalid_argument("scatterer amplitude bounds must satisfy 0 < min <= max <= 1");
    if (c.los_amplitude <= 0.0) throw std::invalid_argument("los_amplitude must be positive");
    if (c.rician_k() < 0.0) throw std::invalid_argument("Rician factor must be >= 0");
    if (c.array_spacing_m < 0.0) throw std::invalid_argument("array_spacing_m must be >= 0");
    if (c.tbs_position.norm() > c.cbs_radius_m)
        throw std::invalid_argument("TBS must lie within the first CBS coverage disk");
}

}  // namespace

Scenario build_scenario(const ScenarioConfig& config) {
    validate(config);

    Scenario s;
    s.config = config;
    s.carrier_frequency_hz = config.carrier_frequency_hz();
    s.wavelength = kSpeedOfLight / s.carrier_frequency_hz;
    s.cbs_radius = config.cbs_radius_m;
    s.tbs_radius = config.tbs_radius_m;
    s.rician_k = config.rician_k();
    s.los_amplitude = config.los_amplitude;
    s.planar_wave = config.planar_wave;
    s.seed = config.seed;

    const double spacing =
        config.array_spacing_m > 0.0 ? config.array_spacing_m : s.wavelength / 2.0;

    // Scatterer field first: shared by every link and independent of the
    // number of stations.
    Rng rng(Rng::derive(config.seed, 0x5CA));
    s.scatterers.reserve(config.num_scatterers);
    for (int i = 0; i < config.num_scatterers; ++i) {
        const double r = s.cbs_radius * std::sqrt(rng.uniform());
        const double theta = rng.uniform(0.0, kTwoPi);
        Scatterer sc;
        sc.position = {r * std::cos(theta), r * std::sin(theta)};
        sc.amplitude = rng.uniform(config.scatterer_amp_min, config.scatterer_amp_max);
        sc.phase_shift = rng.uniform(0.0, kTwoPi);
        s.scatterers.push_back(sc);
    }

    const Vec2 origin{0.0, 0.0};
    std::vector<Vec2> cbs_positions{origin};
    if (config.num_cbs == 2) cbs_positions.push_back(config.cbs2_position);
    for (const Vec2 p : cbs_positions) {
        BsSite site;
        site.position = p;
        site.array = ArrayGeometry::ula(p, config.cbs_antennas, spacing,
                                        broadside_orientation(p, config.tbs_position));
        s.cbs.push_back(site);
    }
    s.tbs.position = config.tbs_position;
    s.tbs.array = ArrayGeometry::ula(config.tbs_position, config.tbs_antennas, spacing,
                                     broadside_orientation(config.tbs_position, origin));
    return s;
}

std::vector<Vec2> sample_ue_positions(const Scenario& scenario, std::size_t count,
                                      std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("UE count must be >= 1");

    constexpr double kMinClearance = 0.5;  // meters
    const auto too_close = [&](Vec2 p) {
        for (const auto& sc : scenario.scatterers)
            if (distance(p, sc.position) < kMinClearance) return true;
        for (const auto& e : scenario.tbs.array.element_positions)
            if (distance(p, e) < kMinClearance) return true;
        for (const auto& site : scenario.cbs)
            for (const auto& e : site.array.element_positions)
                if (distance(p, e) < kMinClearance) return true;
        return false;
    };

    Rng rng(Rng::derive(seed, 0x0E5));
    std::vector<Vec2> out;
    out.reserve(count);
    while (out.size() < count) {
        const double r = scenario.tbs_radius * std::sqrt(rng.uniform());
        const double theta = rng.uniform(0.0, kTwoPi);
        const Vec2 p = scenario.tbs.position + Vec2{r * std::cos(theta), r * std::sin(theta)};
        if (too_close(p)) continue;
        out.push_back(p);
    }
    return out;
}

}  // namespace rbfi
