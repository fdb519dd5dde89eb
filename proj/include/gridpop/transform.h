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

#include <string>
#include <string_view>

#include "gridpop/feature.h"

namespace gridpop {

inline constexpr double kWgs84SemiMajorAxis = 6378137.0;

/// Maps polygon vertices into the raster's coordinate system. Only spherical
/// Mercator is provided; vertices are mapped one by one without densifying
/// edges, which is fine for settlement-sized polygons.
struct CoordinateTransform {
    enum class Kind { identity, lonlat_to_mercator, mercator_to_lonlat };

    Kind kind = Kind::identity;
    double sphere_radius = kWgs84SemiMajorAxis;

    bool operator==(const CoordinateTransform&) const = default;
};

/// Accepts "identity", "lonlat-to-mercator", "mercator-to-lonlat" (underscores
/// also accepted). Throws InputError otherwise.
CoordinateTransform::Kind parse_transform_kind(std::string_view name);

std::string to_string(CoordinateTransform::Kind kind);

/// Lon/lat are in degrees, Mercator in units of the sphere radius (metres by
/// default). Throws InputError for points outside the transform's domain,
/// including latitudes of +-90 where Mercator diverges.
Point apply(const CoordinateTransform& t, const Point& p);

/// Vertex-wise apply(). Ring structure, id, name and population are kept;
/// the CRS tag is set to the transform's target. A feature whose tag names
/// the wrong source system is rejected.
PolygonFeature transform_feature(const CoordinateTransform& t, const PolygonFeature& f);

}
