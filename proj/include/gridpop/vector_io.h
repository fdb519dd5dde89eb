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

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridpop/feature.h"
#include "gridpop/metrics.h"

namespace gridpop {

inline constexpr const char* kDefaultPopProperty = "population";

/// Column order of the per-polygon estimate table.
inline constexpr std::array<const char*, 9> kEstimateColumns = {
    "id", "name", "gt_pop", "cells_touched", "cells_counted", "nodata_cells", "estimate", "rel_error", "bucket"};

/**
 * Reads a GeoJSON FeatureCollection of Polygon / MultiPolygon features.
 *
 * The first ring of each polygon is the outer ring and the rest are holes;
 * winding order is ignored. A closing vertex equal to the first is dropped.
 * The population comes from `pop_property` (a JSON number or a numeric
 * string). Features without an `id` get their 0-based index as id; the
 * settlement name is taken from a "name" property when present. Every
 * feature is tagged with `crs_tag`.
 *
 * Throws InputError naming the feature index for non-polygonal geometries,
 * missing or non-numeric populations, rings with fewer than 4 positions and
 * duplicate ids.
 */
std::vector<PolygonFeature> parse_feature_collection(std::string_view text, const std::string& pop_property,
                                                     const std::string& crs_tag = kGeographicWgs84);

std::vector<PolygonFeature> read_feature_collection(const std::string& path, const std::string& pop_property,
                                                    const std::string& crs_tag = kGeographicWgs84);

/// Serializes features back to GeoJSON, closing every ring and writing the
/// population under `pop_property`. Coordinates use shortest round-trip form.
std::string write_feature_collection(std::span<const PolygonFeature> features, const std::string& pop_property);

/// CSV with the kEstimateColumns header, one row per record in input order.
/// Reals carry 6 significant digits; an absent estimate or undefined relative
/// error is written as an empty field.
std::string write_estimates_csv(std::span<const EstimateRecord> records);

/// Reads a table written by write_estimates_csv(). Throws InputError naming
/// the offending column on a header mismatch, and the line on bad rows.
std::vector<EstimateRecord> parse_estimates_csv(std::string_view text);

}
