#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "corrdyn/corresp.hpp"
#include "corrdyn/projpoint.hpp"

namespace corrdyn::cli {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv };

// Everything a run depends on. The thread count is deliberately absent:
// outputs do not depend on it.
struct RunConfig {
    std::string command;
    std::string f_path, g_path, points_path;
    std::vector<int> n_list;
    std::vector<double> eps_list;
    std::vector<double> r_list;
    long samples = 5000;       // orbit budget for entropy runs
    long starts = 50;          // spherical or band start count
    std::string design = "spherical";
    double band = 0.1;
    int bound_depth = 4;
    long degree_cap = kDefaultDegreeCap;
    std::string x = "0";
    long mc_points = 400, mc_branches = 8, mc_bootstrap = 50;
    std::vector<double> window = {-1.5, 1.5, -1.5, 1.5};
    std::vector<int> resolution = {64, 64};
    std::string quantity = "phi";
    std::string plot_path;
    double scale = 0.5;
    std::uint64_t seed = 1;
    std::string out_path;
    Format format = Format::Json;
};

// Thrown for bad flag values detected after parsing; exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json to_json(const RunConfig& c);

// Caps checked before any work starts.
void check_budgets(const RunConfig& c);

// `poly = "<polynomial>"` with an optional `label = "..."`; '#' starts a comment.
Correspondence read_correspondence_file(const std::string& path);

// "re,im", "re" or "inf".
ProjPoint parse_point(const std::string& text);

// One point per line in the syntax of parse_point; blank lines and '#' comments are skipped.
std::vector<ProjPoint> read_points_file(const std::string& path);

// Writes to a sibling temporary file and renames it over path.
void write_atomic(const std::string& path, const std::string& content);

// Sends content to path when one is given, otherwise to stdout.
void emit(const RunConfig& c, const std::string& content);

// "# key: value" lines carrying the config, for the head of CSV outputs.
std::string csv_preamble(const RunConfig& c, const Json& summary = {});

}  // namespace corrdyn::cli
