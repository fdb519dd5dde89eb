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
#include <vector>

namespace gridpop {

inline constexpr const char* kGeographicWgs84 = "geographic-wgs84";
inline constexpr const char* kMercatorSpherical = "mercator-spherical";

struct Point {
    double x;
    double y;

    bool operator==(const Point&) const = default;
};

/// Ordered vertices of a closed ring. The closing vertex is implicit: the
/// last element is not a repeat of the first.
using Ring = std::vector<Point>;

struct PolygonPart {
    Ring outer;
    std::vector<Ring> holes;

    bool operator==(const PolygonPart&) const = default;
};

/// A surveyed settlement polygon with its ground-truth population.
struct PolygonFeature {
    std::string id;
    std::string name;
    double ground_truth_pop = 0.0;
    std::vector<PolygonPart> parts;
    std::string crs_tag = kGeographicWgs84;

    bool operator==(const PolygonFeature&) const = default;
};

/// Checks the structural invariants of a feature: at least one part, every
/// ring with three or more distinct vertices, finite coordinates, positive
/// part area and non-negative population. Throws InputError naming the
/// feature id.
void validate_feature(const PolygonFeature& f);

}
