// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the rbfi authors

#pragma once

#include <cstdint>
#include <vector>

#include "rbfi/geometry.hpp"

namespace rbfi {

/// Uniform linear array in the plane. Element positions are derived from
/// the center, spacing and axis orientation and are exactly collinear.
struct ArrayGeometry {
    int num_elements = 1;
    double element_spacing = 0.0;  // meters
    double orientation = 0.0;      // radians, direction of the array axis
    std::vector<Vec2> element_positions;

    static ArrayGeometry ula(Vec2 center, int num_elements, double spacing, double orientation);
};

/// Single-bounce reflector. The phase shift models the reflection and is
/// fixed per scatterer for the lifetime of a scenario (quasi-static field).
struct Scatterer {
    Vec2 position;
    double amplitude = 1.0;    // dimensionless gain in (0, 1]
    double phase_shift = 0.0;  // radians in [0, 2pi)
};

struct BsSite {
    Vec2 position;
    ArrayGeometry array;
};

/// Physical configuration knobs. Field names follow the config-file keys.
struct ScenarioConfig {
    double carrier_frequency_ghz = 3.5;
    int cbs_antennas = 64;
    int tbs_antennas = 20;
    double array_spacing_m = 0.0;  // 0 = half wavelength
    double cbs_radius_m = 700.0;
    double tbs_radius_m = 200.0;
    double rician_k_db = 10.0;
    double rician_k_linear = -1.0;  // >= 0 overrides rician_k_db (allows K = 0)
    int num_scatterers = 10;
    double scatterer_amp_min = 0.3;
    double scatterer_amp_max = 1.0;
    double los_amplitude = 1.0;
    int num_cbs = 1;
    Vec2 tbs_position{400.0, 0.0};
    Vec2 cbs2_position{0.0, 500.0};
    bool planar_wave = false;
    std::uint64_t seed = 1;

    double carrier_frequency_hz() const { return carrier_frequency_ghz * 1e9; }
    double rician_k() const;
};

/// Immutable physical layout: base stations, arrays and the shared
/// scatterer field. Safe to share across threads once built.
struct Scenario {
    ScenarioConfig config;
    double carrier_frequency_hz = 0.0;
    double wavelength = 0.0;
    std::vector<BsSite> cbs;
    BsSite tbs;
    double cbs_radius = 0.0;
    double tbs_radius = 0.0;
    double rician_k = 0.0;  // linear power ratio
    double los_amplitude = 1.0;
    std::vector<Scatterer> scatterers;
    bool planar_wave = false;
    std::uint64_t seed = 0;
};

/// Deterministically construct the layout from a config. Scatterers are
/// drawn uniformly over the CBS coverage disk before any station-dependent
/// state, so the field is identical across CBS-count variations of the
/// same seed.
Scenario build_scenario(const ScenarioConfig& config);

/// I.i.d. uniform positions over the TBS coverage disk. Positions closer
/// than 0.5 m to any antenna element or scatterer are resampled.
std::vector<Vec2> sample_ue_positions(const Scenario& scenario, std::size_t count,
                                      std::uint64_t seed);

}  // namespace rbfi
