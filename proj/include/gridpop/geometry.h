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

#include <span>

#include "gridpop/feature.h"

namespace gridpop {

/// Closed axis-aligned rectangle, x_min <= x_max and y_min <= y_max.
struct Rectangle {
    double x_min;
    double y_min;
    double x_max;
    double y_max;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }

    /// Closed-set intersection test; touching edges count.
    bool intersects(const Rectangle& o) const {
        return x_min <= o.x_max && o.x_min <= x_max && y_min <= o.y_max && o.y_min <= y_max;
    }

    bool contains(const Rectangle& o) const {
        return x_min <= o.x_min && o.x_max <= x_max && y_min <= o.y_min && o.y_max <= y_max;
    }

    bool contains(const Point& p) const {
        return x_min <= p.x && p.x <= x_max && y_min <= p.y && p.y <= y_max;
    }

    bool operator==(const Rectangle&) const = default;
};

/// Shoelace area, positive for counter-clockwise rings. Fewer than three
/// vertices gives 0.
double ring_area_signed(std::span<const Point> ring);

/// Sum over parts of |outer| minus the hole areas, each part clamped at 0.
double feature_area(const PolygonFeature& f);

/// Even-odd ray crossing over every ring of every part. A vertex lying at the
/// ray height counts when the other endpoint of its edge is strictly above,
/// so boundary points resolve consistently but not symmetrically.
bool point_in_feature(const Point& p, const PolygonFeature& f);

/// Sutherland-Hodgman clip against the left, right, bottom and top edges of
/// `rect`, in that order. Concave input may produce zero-width bridges along
/// the rectangle boundary; those contribute nothing to the shoelace area.
Ring clip_ring_to_rect(std::span<const Point> ring, const Rectangle& rect);

/// Area of the intersection of a feature with a rectangle.
double feature_rect_overlap_area(const PolygonFeature& f, const Rectangle& rect);

Rectangle feature_bbox(const PolygonFeature& f);

}
