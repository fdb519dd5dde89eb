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

#include <doctest.h>

#include "gridpop/error.h"
#include "gridpop/geometry.h"
#include "gridpop/synth.h"
#include "gridpop/zonal.h"
#include "oracles.h"

using namespace gridpop;
using namespace gridpop::testing;

namespace {

ScenarioConfig small_config() {
    ScenarioConfig c;
    c.truth_cells = 60;
    c.truth_cell_size = 10;
    c.fine_factor = 3;
    c.coarse_factor = 30;
    c.min_diameter = 40;
    c.max_diameter = 150;
    c.n_bumps = 5;
    c.bump_sigma_min = 30;
    c.bump_sigma_max = 100;
    return c;
}

}

TEST_CASE("aggregate_grid") {
    RasterGrid g(2, 2, 5, 7, 1, kDefaultNodata, {1, 2, 3, 4});
    RasterGrid a = aggregate_grid(g, 2);
    CHECK(a.n_cols() == 1);
    CHECK(a.n_rows() == 1);
    CHECK(a(0, 0) == 10);
    CHECK(a.cell_size() == 2);
    CHECK(a.x_ll() == 5);
    CHECK(a.y_ll() == 7);
    CHECK(aggregate_grid(g, 1) == g);
    CHECK_THROWS_AS(aggregate_grid(g, 3), InputError);
    CHECK_THROWS_AS(aggregate_grid(g, 0), InputError);
    CHECK_THROWS_AS(aggregate_grid(RasterGrid(2, 1, 0, 0, 1, -1, {-1, 2}), 1), InputError);
}

TEST_CASE("aggregate_grid keeps block sums and the total exactly on integer grids") {
    Rand rng(41);
    for (int trial = 0; trial < 20; trial++) {
        RasterGrid g = random_integer_grid(rng, 64, 64);
        for (std::size_t k : {2u, 4u, 8u, 16u, 64u}) {
            RasterGrid a = aggregate_grid(g, k);
            CHECK(a.total() == g.total());
            std::size_t r = static_cast<std::size_t>(uniform(rng, 0, static_cast<double>(a.n_rows())));
            std::size_t c = static_cast<std::size_t>(uniform(rng, 0, static_cast<double>(a.n_cols())));
            double block = 0;
            for (std::size_t i = 0; i < k; i++) {
                for (std::size_t j = 0; j < k; j++) {
                    block += g(r * k + i, c * k + j);
                }
            }
            CHECK(a(r, c) == block);
            CHECK(a.extent() == g.extent());
        }
    }
}

TEST_CASE("oracle_population") {
    Rand rng(42);
    RasterGrid g = random_grid(rng, 16, 16, 0, 0, 1);
    PolygonFeature whole = make_feature({{rect_ring(-1, -1, 17, 17), {}}});
    CHECK(oracle_population(g, whole, 4) == doctest::Approx(g.total()).epsilon(1e-12));
    PolygonFeature far = make_feature({{rect_ring(100, 100, 101, 101), {}}});
    CHECK(oracle_population(g, far, 8) == 0.0);
    CHECK_THROWS_AS(oracle_population(g, whole, 0), InputError);

    // A union of whole cells is counted exactly at any subdivision.
    PolygonFeature block = make_feature({{rect_ring(3, 2, 7, 9), {}}});
    double expected = 0;
    for (std::size_t r = 0; r < 16; r++) {
        for (std::size_t c = 0; c < 16; c++) {
            Point p = cell_center(g, r, c);
            if (p.x > 3 && p.x < 7 && p.y > 2 && p.y < 9) {
                expected += g(r, c);
            }
        }
    }
    for (std::size_t s : {1u, 3u, 8u}) {
        CHECK(oracle_population(g, block, s) == doctest::Approx(expected).epsilon(1e-9));
    }

    for (int trial = 0; trial < 10; trial++) {
        PolygonFeature f = make_feature({{random_star_ring(rng, {8, 8}, 2, 7), {}}});
        double a = oracle_population(g, f, 16);
        double b = oracle_population(g, f, 32);
        CHECK(a == doctest::Approx(b).epsilon(0.005));
    }
}

TEST_CASE("convex_hull") {
    Ring hull = convex_hull({{0, 0}, {2, 0}, {1, 1}, {2, 2}, {0, 2}, {1, 0}});
    CHECK(hull.size() == 4);
    CHECK(ring_area_signed(hull) == 4.0);

    Rand rng(43);
    for (int trial = 0; trial < 50; trial++) {
        std::vector<Point> pts;
        for (int i = 0; i < 30; i++) {
            pts.push_back({uniform(rng, -5, 5), uniform(rng, -5, 5)});
        }
        Ring h = convex_hull(pts);
        CHECK(ring_area_signed(h) > 0);
        PolygonFeature f = make_feature({{h, {}}});
        for (const Point& p : pts) {
            bool on_hull = std::find(h.begin(), h.end(), p) != h.end();
            CHECK((on_hull || point_in_feature(p, f)));
        }
    }
}

TEST_CASE("generate_scenario is deterministic in the seed") {
    ScenarioConfig c = small_config();
    SyntheticScenario a = generate_scenario(7, 20, c);
    SyntheticScenario b = generate_scenario(7, 20, c);
    CHECK(a.truth_field == b.truth_field);
    CHECK(a.fine_grid == b.fine_grid);
    CHECK(a.coarse_grid == b.coarse_grid);
    CHECK(a.features == b.features);
    SyntheticScenario d = generate_scenario(8, 20, c);
    CHECK_FALSE(a.truth_field == d.truth_field);

    SyntheticScenario empty = generate_scenario(7, 0, c);
    CHECK(empty.features.empty());
    CHECK(empty.truth_field == a.truth_field);
}

TEST_CASE("generated scenarios satisfy their invariants") {
    ScenarioConfig c = small_config();
    SyntheticScenario s = generate_scenario(11, 50, c);
    CHECK(s.truth_field.n_cols() == 60);
    CHECK(s.fine_grid.n_cols() == 20);
    CHECK(s.coarse_grid.n_cols() == 2);
    CHECK(s.truth_field.crs_tag() == kSyntheticPlanar);
    CHECK(s.fine_grid.total() == doctest::Approx(s.truth_field.total()).epsilon(1e-12));
    CHECK(s.coarse_grid.total() == doctest::Approx(s.truth_field.total()).epsilon(1e-12));
    for (double v : s.truth_field.values()) {
        CHECK(v > 0);
    }
    for (const auto& f : s.features) {
        CHECK_NOTHROW(validate_feature(f));
        CHECK(f.crs_tag == kSyntheticPlanar);
        CHECK(f.ground_truth_pop > 0);
        CHECK(f.ground_truth_pop == oracle_population(s.truth_field, f, c.gt_subdiv));
        double d = feature_diameter(f);
        CHECK(d >= c.min_diameter - 1e-9);
        CHECK(d <= c.max_diameter + 1e-9);
        CHECK(s.truth_field.extent().contains(feature_bbox(f)));
    }
}

TEST_CASE("area-weighted extraction on the fine grid equals the oracle for unions of fine cells") {
    ScenarioConfig c = small_config();
    SyntheticScenario s = generate_scenario(12, 0, c);
    const RasterGrid& fine = s.fine_grid;
    Rand rng(44);
    for (int trial = 0; trial < 30; trial++) {
        auto pick = [&](std::size_t n) { return static_cast<std::size_t>(uniform(rng, 0, static_cast<double>(n))); };
        std::size_t c0 = pick(fine.n_cols()), c1 = pick(fine.n_cols());
        std::size_t r0 = pick(fine.n_rows()), r1 = pick(fine.n_rows());
        Rectangle a = cell_box(fine, std::min(r0, r1), std::min(c0, c1));
        Rectangle b = cell_box(fine, std::max(r0, r1), std::max(c0, c1));
        PolygonFeature block = make_feature({{rect_ring(a.x_min, b.y_min, b.x_max, a.y_max), {}}}, "b",
                                            kSyntheticPlanar);
        double est = *extract(fine, block, ExtractionStrategy{}).estimate;
        CHECK(est == doctest::Approx(oracle_population(s.truth_field, block, c.gt_subdiv)).epsilon(1e-9));
    }
}

TEST_CASE("default scenario") {
    SyntheticScenario s = generate_scenario(2024, 200);
    REQUIRE(s.features.size() == 200);
    CHECK(s.truth_field.n_cols() == 500);
    CHECK(s.fine_grid.cell_size() == 100);
    CHECK(s.coarse_grid.cell_size() == 1000);
    for (const auto& f : s.features) {
        CHECK(f.ground_truth_pop > 0);
        double d = feature_diameter(f);
        CHECK(d >= 300 - 1e-9);
        CHECK(d <= 1000 + 1e-9);
    }
}

TEST_CASE("infeasible configurations are rejected") {
    ScenarioConfig c = small_config();
    c.fine_factor = 7;
    CHECK_THROWS_AS(generate_scenario(1, 1, c), InputError);
    c = small_config();
    c.max_diameter = 10000;
    CHECK_THROWS_AS(generate_scenario(1, 1, c), InputError);
    c = small_config();
    c.min_diameter = 200;
    CHECK_THROWS_AS(generate_scenario(1, 1, c), InputError);
    c = small_config();
    c.gt_subdiv = 0;
    CHECK_THROWS_AS(generate_scenario(1, 1, c), InputError);
}
