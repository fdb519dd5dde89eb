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

#include "gridpop/cli.h"

#include <filesystem>
#include <functional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gridpop/error.h"
#include "gridpop/metrics.h"
#include "gridpop/raster.h"
#include "text_util.h"

namespace fs = std::filesystem;

namespace gridpop::cli {

namespace {

template <typename T>
T json_get(const nlohmann::json& v, const std::string& key) {
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InputError("config key '" + key + "' has the wrong type");
    }
}

// Runs `fn`, prefixing any InputError with the pipeline stage.
template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const InputError& e) {
        throw InputError(std::string(name) + ": " + e.what());
    }
}

}

void apply_config_json(RunConfig& cfg, std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("invalid config JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw InputError("config file must hold a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
        if (key == "raster_path") {
            cfg.raster_path = json_get<std::string>(value, key);
        } else if (key == "polygons_path") {
            cfg.polygons_path = json_get<std::string>(value, key);
        } else if (key == "pop_property") {
            cfg.pop_property = json_get<std::string>(value, key);
        } else if (key == "strategy") {
            cfg.strategy = parse_strategy_kind(json_get<std::string>(value, key));
        } else if (key == "transform") {
            cfg.transform = parse_transform_kind(json_get<std::string>(value, key));
        } else if (key == "output_csv_path") {
            cfg.output_csv_path = json_get<std::string>(value, key);
        } else if (key == "output_report_path") {
            cfg.output_report_path = json_get<std::string>(value, key);
        } else if (key == "overlap_epsilon") {
            cfg.overlap_epsilon = json_get<double>(value, key);
        } else if (key == "raster_crs") {
            cfg.raster_crs = json_get<std::string>(value, key);
        } else if (key == "polygons_crs") {
            cfg.polygons_crs = json_get<std::string>(value, key);
        } else if (key == "workers") {
            if (!value.is_number_unsigned()) {
                throw InputError("config key 'workers' must be a non-negative integer");
            }
            cfg.workers = value.get<std::size_t>();
        } else {
            throw InputError("unknown config key '" + key + "'");
        }
    }
}

void validate_run_config(const RunConfig& cfg) {
    auto require = [](const std::string& v, const char* what) {
        if (v.empty()) {
            throw InputError(std::string("missing ") + what);
        }
    };
    require(cfg.raster_path, "raster path (--raster)");
    require(cfg.polygons_path, "polygons path (--polygons)");
    require(cfg.output_csv_path, "output CSV path (--out-csv)");
    require(cfg.output_report_path, "output report path (--out-report)");
    require(cfg.pop_property, "population property name (--pop-property)");
    if (!(cfg.overlap_epsilon >= 0)) {
        throw InputError("overlap epsilon must be non-negative");
    }
}

ExtractOutputs run_extraction(const RunConfig& cfg) {
    stage("config", [&] { validate_run_config(cfg); });

    RasterGrid grid = stage("raster", [&] { return read_ascii_grid(cfg.raster_path, cfg.raster_crs); });
    std::vector<PolygonFeature> features = stage("polygons", [&] {
        return read_feature_collection(cfg.polygons_path, cfg.pop_property, cfg.polygons_crs);
    });

    stage("transform", [&] {
        CoordinateTransform t{cfg.transform};
        for (auto& f : features) {
            f = transform_feature(t, f);
        }
    });

    ExtractionStrategy strategy{cfg.strategy, cfg.overlap_epsilon};
    auto results = stage("extract", [&] { return extract_all(grid, features, strategy, cfg.workers); });

    ExtractOutputs out;
    out.records = make_records(features, results);
    out.csv = write_estimates_csv(out.records);
    auto persisted = parse_estimates_csv(out.csv);
    out.report = format_report(build_report(persisted));
    return out;
}

std::string report_from_csv(const std::string& csv_path) {
    std::string text = read_file(csv_path);
    try {
        auto records = parse_estimates_csv(text);
        return format_report(build_report(records));
    } catch (const InputError& e) {
        throw InputError(csv_path + ": " + e.what());
    }
}

void write_scenario(const SynthOptions& opts) {
    if (opts.out_dir.empty()) {
        throw InputError("missing output directory (--out-dir)");
    }
    SyntheticScenario sc = generate_scenario(opts.seed, opts.n_features, opts.config);

    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    if (ec) {
        throw InputError("cannot create directory '" + opts.out_dir + "': " + ec.message());
    }
    const fs::path dir(opts.out_dir);

    const ScenarioConfig& c = opts.config;
    nlohmann::ordered_json manifest;
    manifest["seed"] = opts.seed;
    manifest["n_features"] = opts.n_features;
    manifest["pop_property"] = opts.pop_property;
    manifest["crs_tag"] = c.crs_tag;
    auto& jc = manifest["config"];
    jc["truth_cells"] = c.truth_cells;
    jc["truth_cell_size"] = c.truth_cell_size;
    jc["fine_factor"] = c.fine_factor;
    jc["coarse_factor"] = c.coarse_factor;
    jc["x_origin"] = c.x_origin;
    jc["y_origin"] = c.y_origin;
    jc["min_diameter"] = c.min_diameter;
    jc["max_diameter"] = c.max_diameter;
    jc["background_density"] = c.background_density;
    jc["n_bumps"] = c.n_bumps;
    jc["bump_peak_min"] = c.bump_peak_min;
    jc["bump_peak_max"] = c.bump_peak_max;
    jc["bump_sigma_min"] = c.bump_sigma_min;
    jc["bump_sigma_max"] = c.bump_sigma_max;
    jc["cell_noise_sigma"] = c.cell_noise_sigma;
    jc["gt_subdiv"] = c.gt_subdiv;
    auto& files = manifest["files"];
    files["truth"] = kTruthFile;
    files["fine"] = kFineFile;
    files["coarse"] = kCoarseFile;
    files["features"] = kFeaturesFile;

    write_file((dir / kTruthFile).string(), write_ascii_grid(sc.truth_field));
    write_file((dir / kFineFile).string(), write_ascii_grid(sc.fine_grid));
    write_file((dir / kCoarseFile).string(), write_ascii_grid(sc.coarse_grid));
    write_file((dir / kFeaturesFile).string(), write_feature_collection(sc.features, opts.pop_property));
    write_file((dir / kManifestFile).string(), manifest.dump(2) + "\n");
}

namespace {

int guarded(const char* command, std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const InputError& e) {
        err << "gridpop " << command << ": " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "gridpop " << command << ": internal error: " << e.what() << '\n';
        return kInternalError;
    }
}

}

int cmd_extract(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<std::string> written;
    int code = guarded("extract", err, [&] {
        ExtractOutputs outputs = run_extraction(cfg);
        write_file(cfg.output_csv_path, outputs.csv);
        written.push_back(cfg.output_csv_path);
        write_file(cfg.output_report_path, outputs.report);
        written.push_back(cfg.output_report_path);
        out << outputs.report;
        return kSuccess;
    });
    if (code != kSuccess) {
        for (const auto& path : written) {
            std::error_code ignored;
            fs::remove(path, ignored);
        }
    }
    return code;
}

int cmd_report(const std::string& csv_path, std::ostream& out, std::ostream& err) {
    return guarded("report", err, [&] {
        out << report_from_csv(csv_path);
        return kSuccess;
    });
}

int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded("synth", err, [&] {
        write_scenario(opts);
        out << "wrote scenario (seed " << opts.seed << ", " << opts.n_features << " features) to " << opts.out_dir
            << '\n';
        return kSuccess;
    });
}

namespace {

// Options of the extract subcommand. Flags given on the command line override
// the config file, which overrides the RunConfig defaults.
class ExtractOptions {
public:
    explicit ExtractOptions(CLI::App* app) {
        app->add_option("--config", m_config_path, "JSON config with RunConfig field names as keys");
        m_raster = app->add_option("--raster,--raster-path", m_flags.raster_path, "Population grid (ESRI ASCII Grid)");
        m_polygons = app->add_option("--polygons,--polygons-path", m_flags.polygons_path,
                                     "Ground-truth polygons (GeoJSON)");
        m_pop = app->add_option("--pop-property", m_flags.pop_property, "Feature property holding the population");
        m_strategy = app->add_option("--strategy", m_strategy_name, "centroid | any_overlap | area_weighted");
        m_transform = app->add_option("--transform", m_transform_name,
                                      "identity | lonlat-to-mercator | mercator-to-lonlat");
        m_csv = app->add_option("--out-csv,--output-csv-path", m_flags.output_csv_path, "Per-polygon estimates CSV");
        m_report = app->add_option("--out-report,--output-report-path", m_flags.output_report_path,
                                   "Error report text");
        m_eps = app->add_option("--overlap-epsilon", m_flags.overlap_epsilon, "Minimum overlap area for any_overlap");
        m_raster_crs = app->add_option("--raster-crs", m_flags.raster_crs, "CRS tag of the raster");
        m_polygons_crs = app->add_option("--polygons-crs", m_flags.polygons_crs, "CRS tag of the polygons as read");
        m_workers = app->add_option("--workers", m_flags.workers, "Worker threads, 0 = all cores");
    }

    RunConfig resolve() const {
        RunConfig cfg;
        if (!m_config_path.empty()) {
            stage("config", [&] { apply_config_json(cfg, read_file(m_config_path)); });
        }
        if (m_raster->count()) cfg.raster_path = m_flags.raster_path;
        if (m_polygons->count()) cfg.polygons_path = m_flags.polygons_path;
        if (m_pop->count()) cfg.pop_property = m_flags.pop_property;
        if (m_strategy->count()) cfg.strategy = parse_strategy_kind(m_strategy_name);
        if (m_transform->count()) cfg.transform = parse_transform_kind(m_transform_name);
        if (m_csv->count()) cfg.output_csv_path = m_flags.output_csv_path;
        if (m_report->count()) cfg.output_report_path = m_flags.output_report_path;
        if (m_eps->count()) cfg.overlap_epsilon = m_flags.overlap_epsilon;
        if (m_raster_crs->count()) cfg.raster_crs = m_flags.raster_crs;
        if (m_polygons_crs->count()) cfg.polygons_crs = m_flags.polygons_crs;
        if (m_workers->count()) cfg.workers = m_flags.workers;
        return cfg;
    }

private:
    std::string m_config_path;
    std::string m_strategy_name;
    std::string m_transform_name;
    RunConfig m_flags;
    CLI::Option* m_raster;
    CLI::Option* m_polygons;
    CLI::Option* m_pop;
    CLI::Option* m_strategy;
    CLI::Option* m_transform;
    CLI::Option* m_csv;
    CLI::Option* m_report;
    CLI::Option* m_eps;
    CLI::Option* m_raster_crs;
    CLI::Option* m_polygons_crs;
    CLI::Option* m_workers;
};

std::vector<const char*> make_argv(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    if (args.empty()) {
        argv.push_back("gridpop");
    }
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    return argv;
}

}

RunConfig resolve_extract_config(const std::vector<std::string>& args) {
    CLI::App app{"extract"};
    ExtractOptions opts(&app);
    std::vector<std::string> full{"extract"};
    full.insert(full.end(), args.begin(), args.end());
    auto argv = make_argv(full);
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        throw InputError(e.what());
    }
    return opts.resolve();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"gridpop: population estimates for polygons from gridded population rasters"};
    app.name(args.empty() ? "gridpop" : args[0]);
    app.require_subcommand(1);

    auto* extract = app.add_subcommand("extract", "Estimate polygon populations and compare with ground truth");
    ExtractOptions extract_opts(extract);

    auto* report = app.add_subcommand("report", "Recompute the error report from an estimates CSV");
    std::string csv_path;
    report->add_option("--csv", csv_path, "Estimates CSV written by 'extract'")->required();

    auto* synth = app.add_subcommand("synth", "Write a synthetic validation scenario");
    SynthOptions so;
    synth->add_option("--seed", so.seed, "RNG seed")->required();
    synth->add_option("--out-dir", so.out_dir, "Output directory")->required();
    synth->add_option("--features", so.n_features, "Number of settlement polygons")->capture_default_str();
    synth->add_option("--pop-property", so.pop_property, "Population property name")->capture_default_str();
    synth->add_option("--truth-cells", so.config.truth_cells, "Truth grid cells per side")->capture_default_str();
    synth->add_option("--truth-cell-size", so.config.truth_cell_size, "Truth cell size")->capture_default_str();
    synth->add_option("--fine-factor", so.config.fine_factor, "Fine grid aggregation factor")->capture_default_str();
    synth->add_option("--coarse-factor", so.config.coarse_factor, "Coarse grid aggregation factor")
        ->capture_default_str();
    synth->add_option("--min-diameter", so.config.min_diameter, "Smallest polygon diameter")->capture_default_str();
    synth->add_option("--max-diameter", so.config.max_diameter, "Largest polygon diameter")->capture_default_str();
    synth->add_option("--bumps", so.config.n_bumps, "Number of density bumps")->capture_default_str();
    synth->add_option("--noise-sigma", so.config.cell_noise_sigma, "Per-cell log-normal noise")
        ->capture_default_str();
    synth->add_option("--crs-tag", so.config.crs_tag, "CRS tag for the scenario")->capture_default_str();

    auto argv = make_argv(args);
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }

    if (extract->parsed()) {
        RunConfig cfg;
        int code = guarded("extract", err, [&] {
            cfg = extract_opts.resolve();
            return kSuccess;
        });
        if (code != kSuccess) {
            return code;
        }
        return cmd_extract(cfg, out, err);
    }
    if (report->parsed()) {
        return cmd_report(csv_path, out, err);
    }
    if (synth->parsed()) {
        return cmd_synth(so, out, err);
    }
    return kInputError;
}

}
