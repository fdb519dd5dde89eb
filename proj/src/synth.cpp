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

#include "gridpop/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <random>

#include "gridpop/error.h"
#include "gridpop/geometry.h"

namespace gridpop {

namespace {

// The standard distributions are implementation-defined; these draw directly
// from the engine's bits so scenarios are identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : m_engine{seed} {}

    double uniform() { return static_cast<double>(m_engine() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

    double normal() {
        if (m_spare) {
            double v = *m_spare;
            m_spare.reset();
            return v;
        }
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        m_spare = r * std::sin(2 * std::numbers::pi * u2);
        return r * std::cos(2 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 m_engine;
    std::optional<double> m_spare;
};

struct Bump {
    double x;
    double y;
    double peak;
    double sigma;
};

void check_config(const ScenarioConfig& c) {
    if (c.truth_cells == 0 || !(c.truth_cell_size > 0)) {
        throw InputError("scenario truth grid must be non-empty with a positive cell size");
    }
    if (c.fine_factor == 0 || c.coarse_factor == 0 || c.truth_cells % c.fine_factor != 0 ||
        c.truth_cells % c.coarse_factor != 0) {
        throw InputError("fine and coarse factors must divide the truth grid size " + std::to_string(c.truth_cells));
    }
    if (!(c.min_diameter > 0) || !(c.min_diameter <= c.max_diameter)) {
        throw InputError("feature diameters must satisfy 0 < min <= max");
    }
    double side = static_cast<double>(c.truth_cells) * c.truth_cell_size;
    if (c.max_diameter > side) {
        throw InputError("feature diameter " + std::to_string(c.max_diameter) + " exceeds the scenario extent " +
                         std::to_string(side));
    }
    if (!(c.background_density > 0) || c.bump_peak_min < 0 || !(c.bump_peak_min <= c.bump_peak_max) ||
        !(c.bump_sigma_min > 0) || !(c.bump_sigma_min <= c.bump_sigma_max) || c.cell_noise_sigma < 0) {
        throw InputError("invalid density field parameters");
    }
    if (c.gt_subdiv == 0) {
        throw InputError("ground-truth subdivision must be positive");
    }
}

RasterGrid make_truth_field(Rng& rng, const ScenarioConfig& c) {
    const double side = static_cast<double>(c.truth_cells) * c.truth_cell_size;
    std::vector<Bump> bumps;
    bumps.reserve(c.n_bumps);
    for (std::size_t i = 0; i < c.n_bumps; i++) {
        Bump b;
        b.x = c.x_origin + rng.uniform(0, side);
        b.y = c.y_origin + rng.uniform(0, side);
        b.peak = rng.uniform(c.bump_peak_min, c.bump_peak_max);
        b.sigma = rng.uniform(c.bump_sigma_min, c.bump_sigma_max);
        bumps.push_back(b);
    }

    const std::size_t n = c.truth_cells;
    const double s = c.truth_cell_size;
    const double noise_mean_shift = 0.5 * c.cell_noise_sigma * c.cell_noise_sigma;
    std::vector<double> values(n * n);
    for (std::size_t r = 0; r < n; r++) {
        double y = c.y_origin + (static_cast<double>(n - 1 - r) + 0.5) * s;
        for (std::size_t col = 0; col < n; col++) {
            double x = c.x_origin + (static_cast<double>(col) + 0.5) * s;
            double density = c.background_density;
            for (const Bump& b : bumps) {
                double d2 = (x - b.x) * (x - b.x) + (y - b.y) * (y - b.y);
                density += b.peak * std::exp(-d2 / (2 * b.sigma * b.sigma));
            }
            double noise = std::exp(c.cell_noise_sigma * rng.normal() - noise_mean_shift);
            values[r * n + col] = density * noise;
        }
    }
    return RasterGrid(n, n, c.x_origin, c.y_origin, s, kDefaultNodata, std::move(values), c.crs_tag);
}

PolygonFeature make_feature(Rng& rng, const ScenarioConfig& c, std::size_t index) {
    const double side = static_cast<double>(c.truth_cells) * c.truth_cell_size;
    const double diameter = rng.uniform(c.min_diameter, c.max_diameter);
    const double radius = diameter / 2;
    const double cx = c.x_origin + rng.uniform(radius, side - radius);
    const double cy = c.y_origin + rng.uniform(radius, side - radius);

    // An antipodal pair on the circle pins the hull diameter to `diameter`;
    // the other points fall inside the circle.
    std::vector<Point> pts;
    const double theta0 = rng.uniform(0, 2 * std::numbers::pi);
    pts.push_back({cx + radius * std::cos(theta0), cy + radius * std::sin(theta0)});
    pts.push_back({cx - radius * std::cos(theta0), cy - radius * std::sin(theta0)});
    const std::size_t extra = 4 + rng.index(7);
    for (std::size_t k = 0; k < extra; k++) {
        double theta = rng.uniform(0, 2 * std::numbers::pi);
        double rho = radius * rng.uniform(0.6, 1.0);
        pts.push_back({cx + rho * std::cos(theta), cy + rho * std::sin(theta)});
    }

    char id[32];
    std::snprintf(id, sizeof id, "syn-%04zu", index);
    PolygonFeature f;
    f.id = id;
    f.name = "synthetic settlement " + std::to_string(index);
    f.parts.push_back({convex_hull(std::move(pts)), {}});
    f.crs_tag = c.crs_tag;
    return f;
}

double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}

RasterGrid aggregate_grid(const RasterGrid& truth, std::size_t factor) {
    if (factor == 0 || truth.n_cols() % factor != 0 || truth.n_rows() % factor != 0) {
        throw InputError("aggregation factor " + std::to_string(factor) + " does not divide a " +
                         std::to_string(truth.n_rows()) + "x" + std::to_string(truth.n_cols()) + " grid");
    }
    const std::size_t out_cols = truth.n_cols() / factor;
    const std::size_t out_rows = truth.n_rows() / factor;
    std::vector<double> values(out_cols * out_rows, 0.0);
    for (std::size_t r = 0; r < out_rows; r++) {
        for (std::size_t c = 0; c < out_cols; c++) {
            double sum = 0.0;
            for (std::size_t i = 0; i < factor; i++) {
                for (std::size_t j = 0; j < factor; j++) {
                    double v = truth(r * factor + i, c * factor + j);
                    if (truth.is_nodata(v)) {
                        throw InputError("cannot aggregate a grid containing nodata");
                    }
                    sum += v;
                }
            }
            values[r * out_cols + c] = sum;
        }
    }
    return RasterGrid(out_cols, out_rows, truth.x_ll(), truth.y_ll(),
                      truth.cell_size() * static_cast<double>(factor), truth.nodata(), std::move(values),
                      truth.crs_tag());
}

double oracle_population(const RasterGrid& truth, const PolygonFeature& f, std::size_t subdiv) {
    if (subdiv == 0) {
        throw InputError("subdivision must be positive");
    }
    const double step = truth.cell_size() / static_cast<double>(subdiv);
    const double share = 1.0 / static_cast<double>(subdiv * subdiv);
    double total = 0.0;
    for (CellIndex cell : cells_intersecting(truth, feature_bbox(f))) {
        double v = truth(cell.row, cell.col);
        if (truth.is_nodata(v) || v == 0) {
            continue;
        }
        Rectangle box = cell_box(truth, cell.row, cell.col);
        std::size_t inside = 0;
        for (std::size_t i = 0; i < subdiv; i++) {
            double y = box.y_min + (static_cast<double>(i) + 0.5) * step;
            for (std::size_t j = 0; j < subdiv; j++) {
                double x = box.x_min + (static_cast<double>(j) + 0.5) * step;
                if (point_in_feature({x, y}, f)) {
                    inside++;
                }
            }
        }
        total += v * static_cast<double>(inside) * share;
    }
    return total;
}

Ring convex_hull(std::vector<Point> points) {
    std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 3) {
        return points;
    }
    Ring hull(2 * points.size());
    std::size_t k = 0;
    for (const Point& p : points) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) {
            k--;
        }
        hull[k++] = p;
    }
    for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) {
            k--;
        }
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    return hull;
}

double feature_diameter(const PolygonFeature& f) {
    std::vector<Point> all;
    for (const auto& part : f.parts) {
        all.insert(all.end(), part.outer.begin(), part.outer.end());
    }
    double best = 0.0;
    for (std::size_t i = 0; i < all.size(); i++) {
        for (std::size_t j = i + 1; j < all.size(); j++) {
            best = std::max(best, std::hypot(all[i].x - all[j].x, all[i].y - all[j].y));
        }
    }
    return best;
}

SyntheticScenario generate_scenario(std::uint64_t seed, std::size_t n_features, const ScenarioConfig& config) {
    check_config(config);
    Rng rng(seed);

    RasterGrid truth = make_truth_field(rng, config);
    RasterGrid fine = aggregate_grid(truth, config.fine_factor);
    RasterGrid coarse = aggregate_grid(truth, config.coarse_factor);

    std::vector<PolygonFeature> features;
    features.reserve(n_features);
    for (std::size_t i = 0; i < n_features; i++) {
        PolygonFeature f = make_feature(rng, config, i);
        f.ground_truth_pop = oracle_population(truth, f, config.gt_subdiv);
        features.push_back(std::move(f));
    }

    return SyntheticScenario{std::move(truth), std::move(fine), std::move(coarse), std::move(features), seed, config};
}

}
