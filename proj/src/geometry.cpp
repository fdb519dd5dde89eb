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

#include "gridpop/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gridpop {

double ring_area_signed(std::span<const Point> ring) {
    const std::size_t n = ring.size();
    if (n < 3) {
        return 0.0;
    }
    // Coordinates are taken relative to the first vertex. The shoelace sum is
    // translation invariant, and this keeps the cross products small for
    // projected coordinates in the millions.
    const Point o = ring[0];
    double twice = 0.0;
    for (std::size_t i = 0; i < n; i++) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        twice += (a.x - o.x) * (b.y - o.y) - (b.x - o.x) * (a.y - o.y);
    }
    return 0.5 * twice;
}

double feature_area(const PolygonFeature& f) {
    double total = 0.0;
    for (const auto& part : f.parts) {
        double a = std::abs(ring_area_signed(part.outer));
        for (const auto& hole : part.holes) {
            a -= std::abs(ring_area_signed(hole));
        }
        total += std::max(a, 0.0);
    }
    return total;
}

namespace {

bool ring_crossings_odd(const Point& p, std::span<const Point> ring) {
    bool inside = false;
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& a = ring[i];
        const Point& b = ring[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x_cross) {
                inside = !inside;
            }
        }
    }
    return inside;
}

}

bool point_in_feature(const Point& p, const PolygonFeature& f) {
    bool inside = false;
    for (const auto& part : f.parts) {
        if (part.outer.size() >= 3 && ring_crossings_odd(p, part.outer)) {
            inside = !inside;
        }
        for (const auto& hole : part.holes) {
            if (hole.size() >= 3 && ring_crossings_odd(p, hole)) {
                inside = !inside;
            }
        }
    }
    return inside;
}

namespace {

enum class Edge { left, right, bottom, top };

bool keeps(const Point& p, Edge e, const Rectangle& r) {
    switch (e) {
        case Edge::left: return p.x >= r.x_min;
        case Edge::right: return p.x <= r.x_max;
        case Edge::bottom: return p.y >= r.y_min;
        case Edge::top: return p.y <= r.y_max;
    }
    return false;
}

// Intersection of segment ab with the clip line. The coordinate on the clip
// line is assigned exactly so output vertices never stray outside `r`.
Point crossing(const Point& a, const Point& b, Edge e, const Rectangle& r) {
    switch (e) {
        case Edge::left:
        case Edge::right: {
            double x = e == Edge::left ? r.x_min : r.x_max;
            double t = (x - a.x) / (b.x - a.x);
            double y = a.y + t * (b.y - a.y);
            return {x, std::clamp(y, std::min(a.y, b.y), std::max(a.y, b.y))};
        }
        case Edge::bottom:
        case Edge::top: {
            double y = e == Edge::bottom ? r.y_min : r.y_max;
            double t = (y - a.y) / (b.y - a.y);
            double x = a.x + t * (b.x - a.x);
            return {std::clamp(x, std::min(a.x, b.x), std::max(a.x, b.x)), y};
        }
    }
    return a;
}

void clip_against(const Ring& in, Ring& out, Edge e, const Rectangle& r) {
    out.clear();
    const std::size_t n = in.size();
    if (n == 0) {
        return;
    }
    Point prev = in[n - 1];
    bool prev_in = keeps(prev, e, r);
    for (const Point& cur : in) {
        bool cur_in = keeps(cur, e, r);
        if (cur_in) {
            if (!prev_in) {
                out.push_back(crossing(prev, cur, e, r));
            }
            out.push_back(cur);
        } else if (prev_in) {
            out.push_back(crossing(prev, cur, e, r));
        }
        prev = cur;
        prev_in = cur_in;
    }
}

}

Ring clip_ring_to_rect(std::span<const Point> ring, const Rectangle& rect) {
    Ring a(ring.begin(), ring.end());
    Ring b;
    b.reserve(a.size() + 8);
    for (Edge e : {Edge::left, Edge::right, Edge::bottom, Edge::top}) {
        clip_against(a, b, e, rect);
        std::swap(a, b);
        if (a.empty()) {
            break;
        }
    }
    return a;
}

double feature_rect_overlap_area(const PolygonFeature& f, const Rectangle& rect) {
    double total = 0.0;
    for (const auto& part : f.parts) {
        double a = std::abs(ring_area_signed(clip_ring_to_rect(part.outer, rect)));
        if (a == 0.0) {
            continue;
        }
        for (const auto& hole : part.holes) {
            a -= std::abs(ring_area_signed(clip_ring_to_rect(hole, rect)));
        }
        total += std::max(a, 0.0);
    }
    return total;
}

Rectangle feature_bbox(const PolygonFeature& f) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    Rectangle box{inf, inf, -inf, -inf};
    auto extend = [&box](const Ring& ring) {
        for (const Point& p : ring) {
            box.x_min = std::min(box.x_min, p.x);
            box.y_min = std::min(box.y_min, p.y);
            box.x_max = std::max(box.x_max, p.x);
            box.y_max = std::max(box.y_max, p.y);
        }
    };
    for (const auto& part : f.parts) {
        extend(part.outer);
        for (const auto& hole : part.holes) {
            extend(hole);
        }
    }
    return box;
}

}
