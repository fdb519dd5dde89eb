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
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridpop/feature.h"
#include "gridpop/zonal.h"

namespace gridpop {

/// Error classes of the per-polygon accuracy table, in report order.
enum class Bucket { within_20, plus_20_100, minus_20_100, over_100, non_applicable };

inline constexpr std::array<Bucket, 5> kAllBuckets = {
    Bucket::within_20, Bucket::plus_20_100, Bucket::minus_20_100, Bucket::over_100, Bucket::non_applicable};

/// "WITHIN_20", "PLUS_20_100", "MINUS_20_100", "OVER_100", "NON_APPLICABLE".
std::string_view to_string(Bucket b);

/// Throws InputError for an unknown label.
Bucket parse_bucket(std::string_view label);

/// Slack applied at the 0.20 and 1.00 bucket edges so that values such as
/// 1.2*gt, which land a few ulps past 0.20 after rounding, stay in the
/// closed bucket.
inline constexpr double kBucketEdgeSlack = 1e-12;

/// (estimate - gt) / gt; nullopt when gt <= 0.
std::optional<double> relative_error(double estimate, double gt);

/// |e| <= 0.20 is WITHIN_20; 0.20 < e <= 1 is PLUS_20_100; -1 <= e < -0.20
/// is MINUS_20_100; e > 1 is OVER_100. An absent estimate or gt <= 0 is
/// NON_APPLICABLE.
Bucket classify(std::optional<double> estimate, double gt);

struct EstimateRecord {
    std::string feature_id;
    std::string name;
    double gt_pop = 0.0;
    std::optional<double> estimate;
    std::optional<double> rel_error;
    Bucket bucket = Bucket::non_applicable;
    std::size_t cells_touched = 0;
    std::size_t cells_counted = 0;
    std::size_t nodata_cells = 0;

    bool operator==(const EstimateRecord&) const = default;
};

/// Joins a feature with its extraction result and classifies it.
EstimateRecord make_record(const PolygonFeature& f, const ExtractionResult& r);

std::vector<EstimateRecord> make_records(std::span<const PolygonFeature> features,
                                         std::span<const ExtractionResult> results);

struct ErrorReport {
    std::array<std::size_t, 5> bucket_counts{};
    /// Whole percent of n_records, rounded half up.
    std::array<int, 5> bucket_percent{};
    double total_estimate = 0.0;
    double total_gt = 0.0;
    std::optional<double> aggregate_rel_error;
    std::size_t n_records = 0;

    std::size_t count(Bucket b) const { return bucket_counts[static_cast<std::size_t>(b)]; }
    int percent(Bucket b) const { return bucket_percent[static_cast<std::size_t>(b)]; }
};

/// Absent estimates add 0 to total_estimate; every record's gt is included
/// in total_gt, non-applicable ones too.
ErrorReport build_report(std::span<const EstimateRecord> records);

/// round-half-up(100 * count / n); 0 when n == 0.
int whole_percent(std::size_t count, std::size_t n);

/// Relative error as a percentage with one decimal, e.g. "-5.9%".
std::string format_percent(double rel_error);

/// One line per bucket "<label> <count> <percent>%", then
/// "TOTAL est=<v> gt=<v> rel_error=<v> (<pct>)", or "rel_error=NA" when the
/// ground-truth total is zero.
std::string format_report(const ErrorReport& report);

}
