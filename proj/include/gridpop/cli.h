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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gridpop/feature.h"
#include "gridpop/synth.h"
#include "gridpop/transform.h"
#include "gridpop/vector_io.h"
#include "gridpop/zonal.h"

namespace gridpop::cli {

enum ExitCode : int { kSuccess = 0, kInputError = 1, kInternalError = 2 };

/// Settings of one extraction run. A JSON config file uses these field names
/// as keys; command-line flags use their kebab-case forms.
struct RunConfig {
    std::string raster_path;
    std::string polygons_path;
    std::string pop_property = kDefaultPopProperty;
    ExtractionStrategy::Kind strategy = ExtractionStrategy::Kind::area_weighted;
    CoordinateTransform::Kind transform = CoordinateTransform::Kind::identity;
    std::string output_csv_path;
    std::string output_report_path;
    double overlap_epsilon = 1e-12;
    std::string raster_crs = kGeographicWgs84;
    std::string polygons_crs = kGeographicWgs84;
    /// 0 = hardware concurrency.
    std::size_t workers = 0;

    bool operator==(const RunConfig&) const = default;
};

/// Overlays the keys present in a JSON object onto `cfg`. Unknown keys and
/// ill-typed values are InputErrors.
void apply_config_json(RunConfig& cfg, std::string_view json_text);

/// Throws InputError when a required path is empty.
void validate_run_config(const RunConfig& cfg);

struct ExtractOutputs {
    std::vector<EstimateRecord> records;
    std::string csv;
    std::string report;
};

/// The whole pipeline in memory: read inputs, transform polygons, extract,
/// classify, and render CSV and report. The report is computed from the
/// records as they read back from the CSV, so `gridpop report` on the saved
/// CSV reproduces it byte for byte. Errors are InputErrors prefixed with the
/// failing stage.
ExtractOutputs run_extraction(const RunConfig& cfg);

/// Report text for a saved estimates CSV.
std::string report_from_csv(const std::string& csv_path);

struct SynthOptions {
    std::uint64_t seed = 1;
    std::string out_dir;
    std::size_t n_features = 200;
    std::string pop_property = kDefaultPopProperty;
    ScenarioConfig config;
};

inline constexpr const char* kTruthFile = "truth.asc";
inline constexpr const char* kFineFile = "fine.asc";
inline constexpr const char* kCoarseFile = "coarse.asc";
inline constexpr const char* kFeaturesFile = "features.geojson";
inline constexpr const char* kManifestFile = "manifest.json";

/// Generates a scenario and writes the three grids, the features and a JSON
/// manifest of the seed and config into `out_dir` (created if missing).
void write_scenario(const SynthOptions& opts);

int cmd_extract(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_report(const std::string& csv_path, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err);

/// Entry point shared by the executable and the tests.
/// Resolves the arguments of `gridpop extract` (without the subcommand name)
/// into a RunConfig: flags, then the --config file, then defaults.
RunConfig resolve_extract_config(const std::vector<std::string>& args);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}
