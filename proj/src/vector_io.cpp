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

#include "gridpop/vector_io.h"

#include <charconv>
#include <cmath>
#include <unordered_set>

#include <json.hpp>

#include "gridpop/error.h"
#include "text_util.h"

using json = nlohmann::json;

namespace gridpop {

namespace {

[[noreturn]] void feature_error(std::size_t index, const std::string& msg) {
    throw InputError("feature " + std::to_string(index) + ": " + msg);
}

Ring parse_ring(const json& positions, std::size_t index) {
    if (!positions.is_array()) {
        feature_error(index, "ring is not an array of positions");
    }
    if (positions.size() < 4) {
        feature_error(index, "ring has " + std::to_string(positions.size()) + " positions, at least 4 are required");
    }
    Ring ring;
    ring.reserve(positions.size());
    for (const auto& pos : positions) {
        if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
            feature_error(index, "malformed position");
        }
        ring.push_back({pos[0].get<double>(), pos[1].get<double>()});
    }
    if (ring.front() == ring.back()) {
        ring.pop_back();
    }
    return ring;
}

PolygonPart parse_polygon(const json& rings, std::size_t index) {
    if (!rings.is_array() || rings.empty()) {
        feature_error(index, "polygon has no rings");
    }
    PolygonPart part;
    part.outer = parse_ring(rings[0], index);
    for (std::size_t i = 1; i < rings.size(); i++) {
        part.holes.push_back(parse_ring(rings[i], index));
    }
    return part;
}

std::string render_id(const json& id, std::size_t index) {
    if (id.is_string()) {
        return id.get<std::string>();
    }
    if (id.is_number_integer()) {
        return id.dump();
    }
    if (id.is_number()) {
        return format_shortest(id.get<double>());
    }
    feature_error(index, "id must be a string or a number");
}

double parse_population(const json& props, const std::string& key, std::size_t index) {
    if (!props.is_object() || !props.contains(key) || props[key].is_null()) {
        feature_error(index, "missing population property '" + key + "'");
    }
    const json& v = props[key];
    std::optional<double> pop;
    if (v.is_number()) {
        pop = v.get<double>();
    } else if (v.is_string()) {
        pop = parse_double(v.get<std::string>());
    }
    if (!pop || !std::isfinite(*pop)) {
        feature_error(index, "population property '" + key + "' is not numeric");
    }
    if (*pop < 0) {
        feature_error(index, "population property '" + key + "' is negative");
    }
    return *pop;
}

}

std::vector<PolygonFeature> parse_feature_collection(std::string_view text, const std::string& pop_property,
                                                     const std::string& crs_tag) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection") {
        throw InputError("top-level GeoJSON object is not a FeatureCollection");
    }
    if (!doc.contains("features") || !doc["features"].is_array()) {
        throw InputError("FeatureCollection has no 'features' array");
    }

    std::vector<PolygonFeature> out;
    std::unordered_set<std::string> seen;
    const json& features = doc["features"];
    out.reserve(features.size());
    for (std::size_t i = 0; i < features.size(); i++) {
        const json& feat = features[i];
        if (!feat.is_object()) {
            feature_error(i, "not a JSON object");
        }
        const json* geom = feat.contains("geometry") ? &feat["geometry"] : nullptr;
        if (!geom || !geom->is_object()) {
            feature_error(i, "missing geometry");
        }
        std::string type = geom->value("type", "");
        if (type != "Polygon" && type != "MultiPolygon") {
            feature_error(i, "geometry type '" + type + "' is not Polygon or MultiPolygon");
        }
        if (!geom->contains("coordinates")) {
            feature_error(i, "geometry has no coordinates");
        }

        PolygonFeature f;
        f.crs_tag = crs_tag;
        f.id = feat.contains("id") && !feat["id"].is_null() ? render_id(feat["id"], i) : std::to_string(i);

        const json& coords = (*geom)["coordinates"];
        if (type == "Polygon") {
            f.parts.push_back(parse_polygon(coords, i));
        } else {
            if (!coords.is_array() || coords.empty()) {
                feature_error(i, "MultiPolygon has no polygons");
            }
            for (const auto& poly : coords) {
                f.parts.push_back(parse_polygon(poly, i));
            }
        }

        const json empty = json::object();
        const json& props = feat.contains("properties") && feat["properties"].is_object() ? feat["properties"] : empty;
        f.ground_truth_pop = parse_population(props, pop_property, i);
        if (props.contains("name") && props["name"].is_string()) {
            f.name = props["name"].get<std::string>();
        }

        if (!seen.insert(f.id).second) {
            feature_error(i, "duplicate id '" + f.id + "'");
        }
        try {
            validate_feature(f);
        } catch (const InputError& e) {
            feature_error(i, e.what());
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<PolygonFeature> read_feature_collection(const std::string& path, const std::string& pop_property,
                                                    const std::string& crs_tag) {
    std::string text = read_file(path);
    try {
        return parse_feature_collection(text, pop_property, crs_tag);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

namespace {

json ring_json(const Ring& ring) {
    json arr = json::array();
    for (const Point& p : ring) {
        arr.push_back({p.x, p.y});
    }
    if (!ring.empty()) {
        arr.push_back({ring.front().x, ring.front().y});
    }
    return arr;
}

json part_json(const PolygonPart& part) {
    json rings = json::array();
    rings.push_back(ring_json(part.outer));
    for (const auto& hole : part.holes) {
        rings.push_back(ring_json(hole));
    }
    return rings;
}

}

std::string write_feature_collection(std::span<const PolygonFeature> features, const std::string& pop_property) {
    nlohmann::ordered_json doc;
    doc["type"] = "FeatureCollection";
    doc["features"] = nlohmann::ordered_json::array();
    for (const auto& f : features) {
        nlohmann::ordered_json feat;
        feat["type"] = "Feature";
        feat["id"] = f.id;
        feat["properties"]["name"] = f.name;
        feat["properties"][pop_property] = f.ground_truth_pop;
        if (f.parts.size() == 1) {
            feat["geometry"]["type"] = "Polygon";
            feat["geometry"]["coordinates"] = part_json(f.parts[0]);
        } else {
            json polys = json::array();
            for (const auto& part : f.parts) {
                polys.push_back(part_json(part));
            }
            feat["geometry"]["type"] = "MultiPolygon";
            feat["geometry"]["coordinates"] = polys;
        }
        doc["features"].push_back(std::move(feat));
    }
    return doc.dump() + "\n";
}

namespace {

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(s);
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_real(double v) {
    return format_significant(v, 6);
}

struct CsvRow {
    std::size_t line;
    std::vector<std::string> fields;
};

// RFC 4180 style: quoted fields may contain commas, doubled quotes and
// newlines. Blank lines are skipped.
std::vector<CsvRow> read_csv(std::string_view text) {
    std::vector<CsvRow> rows;
    std::size_t i = 0;
    std::size_t line = 1;
    while (i < text.size()) {
        CsvRow row{line, {}};
        std::string field;
        bool row_done = false;
        bool any = false;
        while (!row_done) {
            if (i < text.size() && text[i] == '"') {
                std::size_t start_line = line;
                i++;
                while (true) {
                    if (i >= text.size()) {
                        throw ParseError(start_line, "unterminated quoted field");
                    }
                    char c = text[i++];
                    if (c == '"') {
                        if (i < text.size() && text[i] == '"') {
                            field += '"';
                            i++;
                        } else {
                            break;
                        }
                    } else {
                        if (c == '\n') {
                            line++;
                        }
                        field += c;
                    }
                }
                any = true;
            }
            while (i < text.size() && text[i] != ',' && text[i] != '\n') {
                if (text[i] != '\r') {
                    field += text[i];
                    any = true;
                }
                i++;
            }
            if (i < text.size() && text[i] == ',') {
                row.fields.push_back(std::move(field));
                field.clear();
                any = true;
                i++;
                continue;
            }
            row.fields.push_back(std::move(field));
            field.clear();
            row_done = true;
            if (i < text.size()) {
                i++;
                line++;
            }
        }
        if (any) {
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

double csv_parse_real(const std::string& s, std::size_t line, const char* column) {
    auto v = parse_double(s);
    if (!v || !std::isfinite(*v)) {
        throw ParseError(line, std::string("column '") + column + "': '" + s + "' is not a number");
    }
    return *v;
}

std::size_t csv_parse_count(const std::string& s, std::size_t line, const char* column) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(line, std::string("column '") + column + "': '" + s + "' is not a count");
    }
    return v;
}

}

std::string write_estimates_csv(std::span<const EstimateRecord> records) {
    std::string out;
    for (std::size_t i = 0; i < kEstimateColumns.size(); i++) {
        if (i > 0) {
            out += ',';
        }
        out += kEstimateColumns[i];
    }
    out += '\n';
    for (const auto& r : records) {
        out += csv_field(r.feature_id);
        out += ',';
        out += csv_field(r.name);
        out += ',';
        out += csv_real(r.gt_pop);
        out += ',';
        out += std::to_string(r.cells_touched);
        out += ',';
        out += std::to_string(r.cells_counted);
        out += ',';
        out += std::to_string(r.nodata_cells);
        out += ',';
        if (r.estimate) {
            out += csv_real(*r.estimate);
        }
        out += ',';
        if (r.rel_error) {
            out += csv_real(*r.rel_error);
        }
        out += ',';
        out += to_string(r.bucket);
        out += '\n';
    }
    return out;
}

std::vector<EstimateRecord> parse_estimates_csv(std::string_view text) {
    auto rows = read_csv(text);
    if (rows.empty()) {
        throw InputError("estimates CSV is empty, expected a header row");
    }
    const auto& header = rows[0].fields;
    for (std::size_t i = 0; i < kEstimateColumns.size(); i++) {
        if (i >= header.size()) {
            throw InputError(std::string("estimates CSV is missing column '") + kEstimateColumns[i] + "'");
        }
        if (header[i] != kEstimateColumns[i]) {
            throw InputError(std::string("estimates CSV column ") + std::to_string(i + 1) + " is '" + header[i] +
                             "', expected '" + kEstimateColumns[i] + "'");
        }
    }
    if (header.size() > kEstimateColumns.size()) {
        throw InputError("estimates CSV has unexpected extra column '" + header[kEstimateColumns.size()] + "'");
    }

    std::vector<EstimateRecord> records;
    records.reserve(rows.size() - 1);
    for (std::size_t k = 1; k < rows.size(); k++) {
        const auto& [line, f] = rows[k];
        if (f.size() != kEstimateColumns.size()) {
            throw ParseError(line, "expected " + std::to_string(kEstimateColumns.size()) + " fields, found " +
                                       std::to_string(f.size()));
        }
        EstimateRecord r;
        r.feature_id = f[0];
        r.name = f[1];
        r.gt_pop = csv_parse_real(f[2], line, "gt_pop");
        r.cells_touched = csv_parse_count(f[3], line, "cells_touched");
        r.cells_counted = csv_parse_count(f[4], line, "cells_counted");
        r.nodata_cells = csv_parse_count(f[5], line, "nodata_cells");
        if (!f[6].empty()) {
            r.estimate = csv_parse_real(f[6], line, "estimate");
        }
        if (!f[7].empty()) {
            r.rel_error = csv_parse_real(f[7], line, "rel_error");
        }
        try {
            r.bucket = parse_bucket(f[8]);
        } catch (const InputError&) {
            throw ParseError(line, "column 'bucket': unknown bucket '" + f[8] + "'");
        }
        if (r.rel_error.has_value() != (r.bucket != Bucket::non_applicable)) {
            throw ParseError(line, "column 'rel_error' must be empty exactly when bucket is NON_APPLICABLE");
        }
        records.push_back(std::move(r));
    }
    return records;
}

}
