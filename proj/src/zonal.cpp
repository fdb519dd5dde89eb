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

#include "gridpop/zonal.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "gridpop/error.h"
#include "gridpop/geometry.h"

namespace gridpop {

ExtractionStrategy::Kind parse_strategy_kind(std::string_view name) {
    std::string n(name);
    std::replace(n.begin(), n.end(), '-', '_');
    if (n == "centroid") {
        return ExtractionStrategy::Kind::centroid;
    }
    if (n == "any_overlap") {
        return ExtractionStrategy::Kind::any_overlap;
    }
    if (n == "area_weighted") {
        return ExtractionStrategy::Kind::area_weighted;
    }
    throw InputError("unknown strategy '" + std::string(name) +
                     "' (expected centroid, any_overlap or area_weighted)");
}

std::string to_string(ExtractionStrategy::Kind kind) {
    switch (kind) {
        case ExtractionStrategy::Kind::centroid: return "centroid";
        case ExtractionStrategy::Kind::any_overlap: return "any_overlap";
        case ExtractionStrategy::Kind::area_weighted: return "area_weighted";
    }
    return "area_weighted";
}

double cell_weight(const RasterGrid& grid, const PolygonFeature& f, const ExtractionStrategy& s,
                   std::size_t row, std::size_t col) {
    switch (s.kind) {
        case ExtractionStrategy::Kind::centroid:
            return point_in_feature(cell_center(grid, row, col), f) ? 1.0 : 0.0;
        case ExtractionStrategy::Kind::any_overlap:
            return feature_rect_overlap_area(f, cell_box(grid, row, col)) > s.overlap_epsilon ? 1.0 : 0.0;
        case ExtractionStrategy::Kind::area_weighted: {
            double w = feature_rect_overlap_area(f, cell_box(grid, row, col)) / grid.cell_area();
            return std::clamp(w, 0.0, 1.0);
        }
    }
    throw InvariantError("unhandled strategy kind");
}

namespace {

void check_inputs(const RasterGrid& grid, const PolygonFeature& f, const ExtractionStrategy& s) {
    if (grid.crs_tag() != f.crs_tag) {
        throw InputError("feature '" + f.id + "' is in CRS '" + f.crs_tag + "' but the raster is in '" +
                         grid.crs_tag() + "'");
    }
    if (!(s.overlap_epsilon >= 0)) {
        throw InputError("overlap epsilon must be non-negative");
    }
    validate_feature(f);
}

ExtractionResult extract_unchecked(const RasterGrid& grid, const PolygonFeature& f, const ExtractionStrategy& s) {
    ExtractionResult result;
    result.feature_id = f.id;

    CellWindow window = cells_intersecting(grid, feature_bbox(f));
    result.cells_touched = window.size();

    double sum = 0.0;
    for (CellIndex cell : window) {
        double w = cell_weight(grid, f, s, cell.row, cell.col);
        if (!(w > 0)) {
            continue;
        }
        result.cells_counted++;
        double v = grid(cell.row, cell.col);
        if (grid.is_nodata(v)) {
            result.nodata_cells++;
            continue;
        }
        sum += w * v;
    }
    if (result.cells_counted > 0) {
        result.estimate = sum;
    }
    return result;
}

}

ExtractionResult extract(const RasterGrid& grid, const PolygonFeature& f, const ExtractionStrategy& s) {
    check_inputs(grid, f, s);
    return extract_unchecked(grid, f, s);
}

std::vector<ExtractionResult> extract_all(const RasterGrid& grid, std::span<const PolygonFeature> features,
                                          const ExtractionStrategy& s, std::size_t workers) {
    for (const auto& f : features) {
        check_inputs(grid, f, s);
    }

    std::vector<ExtractionResult> results(features.size());
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = std::min(workers, features.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < features.size(); i++) {
            results[i] = extract_unchecked(grid, features[i], s);
        }
        return results;
    }

    // Each feature is computed entirely by one thread, so the per-feature sum
    // order matches the serial run. Errors are rethrown for the lowest index.
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(features.size());
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; w++) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < features.size(); i = next++) {
                    try {
                        results[i] = extract_unchecked(grid, features[i], s);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return results;
}

}
