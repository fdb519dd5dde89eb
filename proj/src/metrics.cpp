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

#include "gridpop/metrics.h"

#include <cmath>

#include "gridpop/error.h"
#include "text_util.h"

namespace gridpop {

std::string_view to_string(Bucket b) {
    switch (b) {
        case Bucket::within_20: return "WITHIN_20";
        case Bucket::plus_20_100: return "PLUS_20_100";
        case Bucket::minus_20_100: return "MINUS_20_100";
        case Bucket::over_100: return "OVER_100";
        case Bucket::non_applicable: return "NON_APPLICABLE";
    }
    return "NON_APPLICABLE";
}

Bucket parse_bucket(std::string_view label) {
    for (Bucket b : kAllBuckets) {
        if (to_string(b) == label) {
            return b;
        }
    }
    throw InputError("unknown bucket '" + std::string(label) + "'");
}

std::optional<double> relative_error(double estimate, double gt) {
    if (!(gt > 0)) {
        return std::nullopt;
    }
    return (estimate - gt) / gt;
}

Bucket classify(std::optional<double> estimate, double gt) {
    if (!estimate) {
        return Bucket::non_applicable;
    }
    auto e = relative_error(*estimate, gt);
    if (!e) {
        return Bucket::non_applicable;
    }
    if (std::abs(*e) <= 0.20 + kBucketEdgeSlack) {
        return Bucket::within_20;
    }
    if (*e > 1.00 + kBucketEdgeSlack) {
        return Bucket::over_100;
    }
    return *e > 0 ? Bucket::plus_20_100 : Bucket::minus_20_100;
}

EstimateRecord make_record(const PolygonFeature& f, const ExtractionResult& r) {
    if (f.id != r.feature_id) {
        throw InvariantError("result for '" + r.feature_id + "' paired with feature '" + f.id + "'");
    }
    EstimateRecord rec;
    rec.feature_id = f.id;
    rec.name = f.name;
    rec.gt_pop = f.ground_truth_pop;
    rec.estimate = r.estimate;
    rec.bucket = classify(r.estimate, f.ground_truth_pop);
    if (rec.bucket != Bucket::non_applicable) {
        rec.rel_error = relative_error(*r.estimate, f.ground_truth_pop);
    }
    rec.cells_touched = r.cells_touched;
    rec.cells_counted = r.cells_counted;
    rec.nodata_cells = r.nodata_cells;
    return rec;
}

std::vector<EstimateRecord> make_records(std::span<const PolygonFeature> features,
                                         std::span<const ExtractionResult> results) {
    if (features.size() != results.size()) {
        throw InvariantError("feature and result counts differ");
    }
    std::vector<EstimateRecord> out;
    out.reserve(features.size());
    for (std::size_t i = 0; i < features.size(); i++) {
        out.push_back(make_record(features[i], results[i]));
    }
    return out;
}

int whole_percent(std::size_t count, std::size_t n) {
    if (n == 0) {
        return 0;
    }
    // floor(100*count/n + 1/2) in integers.
    return static_cast<int>((200 * count + n) / (2 * n));
}

ErrorReport build_report(std::span<const EstimateRecord> records) {
    ErrorReport report;
    report.n_records = records.size();
    for (const auto& r : records) {
        report.bucket_counts[static_cast<std::size_t>(r.bucket)]++;
        if (r.estimate) {
            report.total_estimate += *r.estimate;
        }
        report.total_gt += r.gt_pop;
    }
    for (std::size_t i = 0; i < report.bucket_counts.size(); i++) {
        report.bucket_percent[i] = whole_percent(report.bucket_counts[i], report.n_records);
    }
    report.aggregate_rel_error = relative_error(report.total_estimate, report.total_gt);
    return report;
}

std::string format_percent(double rel_error) {
    std::string s = format_fixed(100.0 * rel_error, 1);
    if (s == "-0.0") {
        s = "0.0";
    }
    return s + "%";
}

std::string format_report(const ErrorReport& report) {
    std::string out;
    for (Bucket b : kAllBuckets) {
        out += to_string(b);
        out += ' ';
        out += std::to_string(report.count(b));
        out += ' ';
        out += std::to_string(report.percent(b));
        out += "%\n";
    }
    out += "TOTAL est=";
    out += format_fixed(report.total_estimate, 1);
    out += " gt=";
    out += format_fixed(report.total_gt, 1);
    out += " rel_error=";
    if (report.aggregate_rel_error) {
        out += format_significant(*report.aggregate_rel_error, 6);
        out += " (";
        out += format_percent(*report.aggregate_rel_error);
        out += ')';
    } else {
        out += "NA";
    }
    out += '\n';
    return out;
}

}
