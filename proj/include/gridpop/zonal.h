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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridpop/feature.h"
#include "gridpop/raster.h"

namespace gridpop {

/**
 * Rule deciding how much of a cell's population is attributed to a polygon.
 *
 *  - centroid:      weight 1 iff the cell center lies inside the polygon.
 *                   Polygons smaller than a cell often select nothing.
 *  - any_overlap:   weight 1 iff the intersection area exceeds
 *                   overlap_epsilon. Partial cells count in full, so small
 *                   polygons are overestimated.
 *  - area_weighted: weight = intersection area / cell area.
 */
struct ExtractionStrategy {
    enum class Kind { centroid, any_overlap, area_weighted };

    Kind kind = Kind::area_weighted;
    double overlap_epsilon = 1e-12;

    bool operator==(const ExtractionStrategy&) const = default;
};

/// Accepts "centroid", "any_overlap", "area_weighted" (hyphens also accepted).
ExtractionStrategy::Kind parse_strategy_kind(std::string_view name);

std::string to_string(ExtractionStrategy::Kind kind);

struct ExtractionResult {
    std::string feature_id;
    /// Absent when no cell received a positive weight.
    std::optional<double> estimate;
    /// Cells in the window meeting the feature's bounding box.
    std::size_t cells_touched = 0;
    /// Cells with positive weight, nodata cells included.
    std::size_t cells_counted = 0;
    /// Cells with positive weight holding nodata; they add nothing to the estimate.
    std::size_t nodata_cells = 0;

    bool operator==(const ExtractionResult&) const = default;
};

/// Weight in [0, 1] that `s` assigns to one cell of `grid` for feature `f`.
double cell_weight(const RasterGrid& grid, const PolygonFeature& f, const ExtractionStrategy& s,
                   std::size_t row, std::size_t col);

/// Population estimate of one feature. The sum runs over the bbox window in
/// row-major order, so results are reproducible bit for bit. Throws
/// InputError on CRS mismatch or an invalid feature.
ExtractionResult extract(const RasterGrid& grid, const PolygonFeature& f, const ExtractionStrategy& s);

/// extract() over every feature, results in input order. With workers > 1
/// features are spread across threads; the output is identical to the serial
/// run. workers == 0 means hardware concurrency. All features are validated
/// before any extraction, and the first invalid one aborts the call.
std::vector<ExtractionResult> extract_all(const RasterGrid& grid, std::span<const PolygonFeature> features,
                                          const ExtractionStrategy& s, std::size_t workers = 1);

}
