// Copyright (c) 2026 gridpop contributors.
// All rights reserved.
//
// This software is licensed under the Apache License, Version 2.0 (the "License").
// You may not use this file except in compliance with the License. You may
// obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0.
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gridpop/feature.h"
#include "gridpop/raster.h"

namespace gridpop {

inline constexpr const char* kSyntheticPlanar = "synthetic-planar";

/// Parameters of a synthetic scenario. Lengths are in CRS units (metres).
/// Defaults give a 5 km square at 10 m truth resolution, a 100 m "fine" grid
/// and a 1 km "coarse" grid, with settlements 300 m to 1 km across.
struct ScenarioConfig {
    std::size_t truth_cells = 500;     // per side
    double truth_cell_size = 10.0;
    std::size_t fine_factor = 10;
    std::size_t coarse_factor = 100;
    double x_origin = 0.0;
    double y_origin = 0.0;

    double min_diameter = 300.0;
    double max_diameter = 1000.0;

    // Density field: background plus Gaussian bumps, in persons per truth cell.
    double background_density = 0.3;
    std::size_t n_bumps = 40;
    double bump_peak_min = 1.0;
    double bump_peak_max = 6.0;
    double bump_sigma_min = 150.0;
    double bump_sigma_max = 600.0;
    // Per-cell multiplicative log-normal noise (sigma of the log), mean 1.
    double cell_noise_sigma = 0.5;

    std::size_t gt_subdiv = 8;
    std::string crs_tag = kSyntheticPlanar;

    bool operator==(const ScenarioConfig&) const = default;
};

struct SyntheticScenario {
    RasterGrid truth_field;
    RasterGrid fine_grid;
    RasterGrid coarse_grid;
    std::vector<PolygonFeature> features;
    std::uint64_t seed = 0;
    ScenarioConfig config;
};

/// Sums each factor x factor block. The extent is unchanged and the cell size
/// grows by `factor`. Throws InputError if factor does not divide both
/// dimensions or the grid contains nodata.
RasterGrid aggregate_grid(const RasterGrid& truth, std::size_t factor);

/// Brute-force reference population: each cell is split into subdiv x subdiv
/// sub-cells, and a sub-cell contributes value / subdiv^2 when its center is
/// inside the feature. Nodata cells contribute nothing.
double oracle_population(const RasterGrid& truth, const PolygonFeature& f, std::size_t subdiv);

/// Convex hull (Andrew's monotone chain), counter-clockwise, collinear points dropped.
Ring convex_hull(std::vector<Point> points);

/// Deterministic for a given seed and config. Throws InputError for an
/// infeasible config.
SyntheticScenario generate_scenario(std::uint64_t seed, std::size_t n_features, const ScenarioConfig& config = {});

/// Largest distance between two vertices of the feature.
double feature_diameter(const PolygonFeature& f);

}
