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

#include "gridpop/feature.h"

#include <algorithm>
#include <cmath>

#include "gridpop/error.h"
#include "gridpop/geometry.h"

namespace gridpop {

namespace {

std::size_t distinct_vertices(const Ring& ring) {
    Ring sorted = ring;
    std::sort(sorted.begin(), sorted.end(), [](const Point& a, const Point& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

void check_ring(const PolygonFeature& f, const Ring& ring) {
    for (const Point& p : ring) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw InputError("feature '" + f.id + "': non-finite coordinate");
        }
    }
    if (distinct_vertices(ring) < 3) {
        throw InputError("feature '" + f.id + "': ring has fewer than 3 distinct vertices");
    }
}

}

void validate_feature(const PolygonFeature& f) {
    if (!std::isfinite(f.ground_truth_pop) || f.ground_truth_pop < 0) {
        throw InputError("feature '" + f.id + "': ground-truth population must be a non-negative number");
    }
    if (f.parts.empty()) {
        throw InputError("feature '" + f.id + "': no polygon parts");
    }
    for (const auto& part : f.parts) {
        check_ring(f, part.outer);
        for (const auto& hole : part.holes) {
            check_ring(f, hole);
        }
        double area = std::abs(ring_area_signed(part.outer));
        for (const auto& hole : part.holes) {
            area -= std::abs(ring_area_signed(hole));
        }
        if (!(area > 0)) {
            throw InputError("feature '" + f.id + "': polygon part has zero area");
        }
    }
}

}
