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

#include <algorithm>

#include "gridpop/metrics.h"
#include "oracles.h"

using namespace gridpop;
using namespace gridpop::testing;

namespace {

std::vector<EstimateRecord> records_with_counts(const std::array<std::size_t, 5>& counts) {
    std::vector<EstimateRecord> out;
    for (std::size_t b = 0; b < counts.size(); b++) {
        for (std::size_t i = 0; i < counts[b]; i++) {
            EstimateRecord r;
            r.feature_id = std::to_string(out.size());
            r.gt_pop = 100;
            r.bucket = kAllBuckets[b];
            out.push_back(r);
        }
    }
    return out;
}

}

TEST_CASE("relative_error") {
    CHECK(*relative_error(80, 100) == doctest::Approx(-0.20));
    CHECK(*relative_error(100, 100) == 0.0);
    CHECK(std::abs(*relative_error(2035866, 2162368) - (-0.0585)) <= 1e-4);
    CHECK(format_percent(*relative_error(2035866, 2162368)) == "-5.9%");
    CHECK_FALSE(relative_error(5, 0).has_value());
}

TEST_CASE("classify") {
    CHECK(classify(95.0, 100) == Bucket::within_20);
    CHECK(classify(std::nullopt, 100) == Bucket::non_applicable);
    CHECK(classify(250.0, 100) == Bucket::over_100);
    CHECK(classify(150.0, 100) == Bucket::plus_20_100);
    CHECK(classify(50.0, 100) == Bucket::minus_20_100);
    CHECK(classify(0.0, 100) == Bucket::minus_20_100);
    CHECK(classify(10.0, 0) == Bucket::non_applicable);
    CHECK(classify(200.0, 100) == Bucket::plus_20_100);
    CHECK(classify(80.0, 100) == Bucket::within_20);
}

TEST_CASE("bucket edges are closed at 0.20 and 1.00") {
    Rand rng(13);
    for (int i = 0; i < 10000; i++) {
        double gt = std::exp(uniform(rng, -5, 15));
        CHECK(classify(gt * 1.2, gt) == Bucket::within_20);
        CHECK(classify(gt * 0.8, gt) == Bucket::within_20);
        CHECK(classify(gt * (1.2 + 1e-9), gt) == Bucket::plus_20_100);
        CHECK(classify(gt * (0.8 - 1e-9), gt) == Bucket::minus_20_100);
        CHECK(classify(gt * 2.0, gt) == Bucket::plus_20_100);
        CHECK(classify(gt * (2.0 + 1e-9), gt) == Bucket::over_100);
    }
}

TEST_CASE("classification is total and consistent with relative_error") {
    Rand rng(14);
    for (int i = 0; i < 10000; i++) {
        double gt = uniform(rng, 0, 1) < 0.05 ? 0.0 : uniform(rng, 0, 1000);
        std::optional<double> est;
        if (uniform(rng, 0, 1) > 0.05) {
            est = uniform(rng, 0, 3000);
        }
        Bucket b = classify(est, gt);
        CHECK(std::find(kAllBuckets.begin(), kAllBuckets.end(), b) != kAllBuckets.end());
        CHECK((b == Bucket::non_applicable) == (!est || gt <= 0));
        if (est && gt > 0) {
            CHECK(*relative_error(*est, gt) >= -1.0);
        }
    }
}

TEST_CASE("build_report reproduces the published bucket percentages") {
    SUBCASE("fine-resolution layer") {
        ErrorReport r = build_report(records_with_counts({1135, 138, 268, 22, 140}));
        CHECK(r.n_records == 1703);
        CHECK(r.bucket_percent == std::array<int, 5>{67, 8, 16, 1, 8});
    }
    SUBCASE("coarse-resolution layer") {
        ErrorReport r = build_report(records_with_counts({7, 12, 27, 50, 1607}));
        CHECK(r.n_records == 1703);
        CHECK(r.bucket_percent == std::array<int, 5>{0, 1, 2, 3, 94});
    }
}

TEST_CASE("build_report totals") {
    SUBCASE("single exact record") {
        EstimateRecord r{"a", "", 100, 100.0, 0.0, Bucket::within_20, 1, 1, 0};
        ErrorReport rep = build_report(std::vector{r});
        CHECK(rep.count(Bucket::within_20) == 1);
        CHECK(rep.percent(Bucket::within_20) == 100);
        CHECK(*rep.aggregate_rel_error == 0.0);
    }
    SUBCASE("absent estimates add nothing but their ground truth counts") {
        EstimateRecord a{"a", "", 100, 80.0, -0.2, Bucket::within_20, 1, 1, 0};
        EstimateRecord b{"b", "", 50, std::nullopt, std::nullopt, Bucket::non_applicable, 1, 0, 0};
        ErrorReport rep = build_report(std::vector{a, b});
        CHECK(rep.total_estimate == 80);
        CHECK(rep.total_gt == 150);
        CHECK(*rep.aggregate_rel_error == doctest::Approx(-70.0 / 150.0));
    }
    SUBCASE("empty input") {
        ErrorReport rep = build_report(std::vector<EstimateRecord>{});
        CHECK(rep.n_records == 0);
        CHECK_FALSE(rep.aggregate_rel_error.has_value());
        CHECK(format_report(rep).find("rel_error=NA") != std::string::npos);
    }
}

TEST_CASE("report percentages sum to 100 within rounding slack, and ignore order") {
    Rand rng(15);
    for (int trial = 0; trial < 500; trial++) {
        std::array<std::size_t, 5> counts{};
        for (auto& c : counts) {
            c = static_cast<std::size_t>(uniform(rng, 0, 400));
        }
        auto recs = records_with_counts(counts);
        if (recs.empty()) {
            continue;
        }
        for (auto& r : recs) {
            r.gt_pop = std::floor(uniform(rng, 0, 1000));
            if (r.bucket != Bucket::non_applicable) {
                r.estimate = std::floor(uniform(rng, 0, 1000));
            }
        }
        ErrorReport a = build_report(recs);
        int sum = 0;
        for (int p : a.bucket_percent) {
            sum += p;
        }
        CHECK(std::abs(sum - 100) <= 2);

        std::shuffle(recs.begin(), recs.end(), rng);
        ErrorReport b = build_report(recs);
        CHECK(a.bucket_counts == b.bucket_counts);
        CHECK(a.total_estimate == b.total_estimate);
        CHECK(a.total_gt == b.total_gt);
    }
}

TEST_CASE("whole_percent rounds half up") {
    CHECK(whole_percent(1, 200) == 1);  // 0.5%
    CHECK(whole_percent(1, 201) == 0);
    CHECK(whole_percent(0, 0) == 0);
    CHECK(whole_percent(3, 3) == 100);
}

TEST_CASE("report layout") {
    ErrorReport rep = build_report(records_with_counts({1135, 138, 268, 22, 140}));
    rep.total_estimate = 2035866;
    rep.total_gt = 2162368;
    rep.aggregate_rel_error = relative_error(rep.total_estimate, rep.total_gt);
    CHECK(format_report(rep) ==
          "WITHIN_20 1135 67%\n"
          "PLUS_20_100 138 8%\n"
          "MINUS_20_100 268 16%\n"
          "OVER_100 22 1%\n"
          "NON_APPLICABLE 140 8%\n"
          "TOTAL est=2035866.0 gt=2162368.0 rel_error=-0.0585016 (-5.9%)\n");
}

TEST_CASE("make_record") {
    PolygonFeature f;
    f.id = "a";
    f.ground_truth_pop = 100;
    ExtractionResult r{"a", 80.0, 4, 2, 0};
    EstimateRecord rec = make_record(f, r);
    CHECK(rec.bucket == Bucket::within_20);
    CHECK(*rec.rel_error == doctest::Approx(-0.2));

    f.ground_truth_pop = 0;
    rec = make_record(f, r);
    CHECK(rec.bucket == Bucket::non_applicable);
    CHECK_FALSE(rec.rel_error.has_value());
}
