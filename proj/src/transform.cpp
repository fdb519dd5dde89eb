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

#include "gridpop/transform.h"

#include <cmath>
#include <numbers>

#include "gridpop/error.h"

namespace gridpop {

namespace {

std::string normalized(std::string_view name) {
    std::string s(name);
    for (char& c : s) {
        if (c == '_') {
            c = '-';
        }
    }
    return s;
}

constexpr double kDegToRad = std::numbers::pi / 180.0;

}

CoordinateTransform::Kind parse_transform_kind(std::string_view name) {
    std::string n = normalized(name);
    if (n == "identity") {
        return CoordinateTransform::Kind::identity;
    }
    if (n == "lonlat-to-mercator") {
        return CoordinateTransform::Kind::lonlat_to_mercator;
    }
    if (n == "mercator-to-lonlat") {
        return CoordinateTransform::Kind::mercator_to_lonlat;
    }
    throw InputError("unknown transform '" + std::string(name) +
                     "' (expected identity, lonlat-to-mercator or mercator-to-lonlat)");
}

std::string to_string(CoordinateTransform::Kind kind) {
    switch (kind) {
        case CoordinateTransform::Kind::identity: return "identity";
        case CoordinateTransform::Kind::lonlat_to_mercator: return "lonlat-to-mercator";
        case CoordinateTransform::Kind::mercator_to_lonlat: return "mercator-to-lonlat";
    }
    return "identity";
}

Point apply(const CoordinateTransform& t, const Point& p) {
    const double r = t.sphere_radius;
    switch (t.kind) {
        case CoordinateTransform::Kind::identity:
            return p;
        case CoordinateTransform::Kind::lonlat_to_mercator: {
            if (!(std::abs(p.x) <= 180.0)) {
                throw InputError("longitude " + std::to_string(p.x) + " outside [-180, 180]");
            }
            if (!(std::abs(p.y) < 90.0)) {
                throw InputError("latitude " + std::to_string(p.y) + " outside (-90, 90), Mercator is undefined there");
            }
            const double lon = p.x * kDegToRad;
            const double lat = p.y * kDegToRad;
            // ln(tan(pi/4 + lat/2)) written as atanh(sin(lat)): same function, exact at the equator.
            return {r * lon, r * std::atanh(std::sin(lat))};
        }
        case CoordinateTransform::Kind::mercator_to_lonlat: {
            if (!std::isfinite(p.x) || !std::isfinite(p.y) || !(std::abs(p.x) <= std::numbers::pi * r * (1 + 1e-12))) {
                throw InputError("Mercator x " + std::to_string(p.x) + " outside the projected world");
            }
            const double lon = p.x / r;
            const double lat = std::atan(std::sinh(p.y / r));
            return {lon / kDegToRad, lat / kDegToRad};
        }
    }
    throw InvariantError("unhandled transform kind");
}

PolygonFeature transform_feature(const CoordinateTransform& t, const PolygonFeature& f) {
    if (t.kind == CoordinateTransform::Kind::identity) {
        return f;
    }
    const char* source = t.kind == CoordinateTransform::Kind::lonlat_to_mercator ? kGeographicWgs84 : kMercatorSpherical;
    const char* target = t.kind == CoordinateTransform::Kind::lonlat_to_mercator ? kMercatorSpherical : kGeographicWgs84;
    if (f.crs_tag != source) {
        throw InputError("feature '" + f.id + "' is tagged '" + f.crs_tag + "', but " + to_string(t.kind) +
                         " expects '" + source + "'");
    }

    PolygonFeature out = f;
    out.crs_tag = target;
    auto map_ring = [&](Ring& ring) {
        for (Point& p : ring) {
            p = apply(t, p);
        }
    };
    try {
        for (auto& part : out.parts) {
            map_ring(part.outer);
            for (auto& hole : part.holes) {
                map_ring(hole);
            }
        }
    } catch (const InputError& e) {
        throw InputError("feature '" + f.id + "': " + e.what());
    }
    return out;
}

}
