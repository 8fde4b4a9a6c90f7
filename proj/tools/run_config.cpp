#include "run_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "corrdyn/error.hpp"

namespace corrdyn::cli {

namespace {

constexpr long kMaxSamples = 50'000'000;
constexpr long kMaxMcDraws = 50'000'000;
constexpr int kMaxDepth = 100'000;

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("io_error", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

Json to_json(const RunConfig& c) {
    Json j;
    j["command"] = c.command;
    if (!c.f_path.empty()) j["f"] = c.f_path;
    if (!c.g_path.empty()) j["g"] = c.g_path;
    if (!c.points_path.empty()) j["points"] = c.points_path;
    const std::string& cmd = c.command;
    bool entropy = cmd == "entropy" || cmd == "entropy-from";
    bool local = cmd == "phi" || cmd == "psi" || cmd == "scan";
    if (!c.n_list.empty()) j["n"] = c.n_list;
    if (entropy) {
        j["eps"] = c.eps_list;
        j["samples"] = c.samples;
        if (cmd == "entropy") {
            j["design"] = c.design;
            j["starts"] = c.starts;
            if (c.design == "band") j["band"] = c.band;
        }
        j["bound_depth"] = c.bound_depth;
    }
    if (entropy || cmd == "iterate" || cmd == "degrees" || cmd == "fixed-points" || cmd == "lov") j["degree_cap"] = c.degree_cap;
    if (local) {
        if (cmd != "scan") j["x"] = c.x;
        j["r"] = c.r_list;
        j["mc_points"] = c.mc_points;
        j["mc_branches"] = c.mc_branches;
        j["mc_bootstrap"] = c.mc_bootstrap;
    }
    if (cmd == "scan") {
        j["window"] = c.window;
        j["resolution"] = c.resolution;
        j["quantity"] = c.quantity;
    }
    if (cmd == "selftest") j["scale"] = c.scale;
    j["seed"] = c.seed;
    if (!c.out_path.empty()) j["out"] = c.out_path;
    j["format"] = c.format == Format::Json ? "json" : "csv";
    return j;
}

void check_budgets(const RunConfig& c) {
    for (int n : c.n_list)
        if (n < 1 || n > kMaxDepth) throw UsageError("--n values must lie in [1, " + std::to_string(kMaxDepth) + "]");
    for (double e : c.eps_list)
        if (!(e > 0 && e <= 1)) throw UsageError("--eps values must lie in (0, 1]");
    for (double r : c.r_list)
        if (!(r > 0 && r <= 0.5)) throw UsageError("--r values must lie in (0, 0.5]");
    if (c.samples < 1 || c.samples > kMaxSamples) throw UsageError("--samples must lie in [1, " + std::to_string(kMaxSamples) + "]");
    if (c.starts < 1 || c.starts > c.samples) throw UsageError("--starts must lie in [1, samples]");
    if (c.mc_points < 1 || c.mc_branches < 1 || c.mc_bootstrap < 0 || c.mc_bootstrap > 10000)
        throw UsageError("Monte Carlo budgets must be positive (bootstrap at most 10000)");
    long draws = c.mc_points * c.mc_branches;
    if (c.command == "scan") draws *= static_cast<long>(c.resolution.at(0)) * c.resolution.at(1);
    if (draws > kMaxMcDraws) throw UsageError("Monte Carlo budget exceeds " + std::to_string(kMaxMcDraws) + " branch paths");
    if (c.degree_cap < 2) throw UsageError("--degree-cap must be at least 2");
    if (c.bound_depth < 1) throw UsageError("--bound-depth must be positive");
    if (!(c.band > 0 && c.band <= 1)) throw UsageError("--band must lie in (0, 1]");
    if (!(c.scale > 0 && c.scale <= 1)) throw UsageError("--scale must lie in (0, 1]");
    if (c.window.size() != 4 || !(c.window[1] > c.window[0] && c.window[3] > c.window[2]))
        throw UsageError("--window takes re_min,re_max,im_min,im_max with min < max");
    if (c.resolution.size() != 2 || c.resolution[0] < 1 || c.resolution[1] < 1 || c.resolution[0] > 2048 ||
        c.resolution[1] > 2048)
        throw UsageError("--resolution takes nx,ny between 1 and 2048");
}

Correspondence read_correspondence_file(const std::string& path) {
    std::istringstream in(slurp(path));
    std::string line, poly, label;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        auto eq = line.find('=');
        std::string key = eq == std::string::npos ? "" : trim(line.substr(0, eq));
        std::string val = eq == std::string::npos ? "" : trim(line.substr(eq + 1));
        if (key.empty() || val.size() < 2 || val.front() != '"' || val.back() != '"')
            throw DomainError("parse_error", path + ":" + std::to_string(lineno) + ": expected key = \"value\"");
        val = val.substr(1, val.size() - 2);
        if (key == "poly")
            poly = val;
        else if (key == "label")
            label = val;
        else
            throw DomainError("parse_error", path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (poly.empty()) throw DomainError("parse_error", path + ": missing poly = \"...\"");
    return parse_correspondence(poly, label);
}

ProjPoint parse_point(const std::string& text) {
    std::string t = trim(text);
    if (t == "inf" || t == "infinity") return ProjPoint::infinity();
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    double re = 0, im = 0;
    if (!(in >> re)) throw DomainError("parse_error", "bad point '" + text + "'");
    if (!(in >> im)) im = 0;
    std::string rest;
    if (in >> rest || !std::isfinite(re) || !std::isfinite(im)) throw DomainError("parse_error", "bad point '" + text + "'");
    return ProjPoint::affine({re, im});
}

std::vector<ProjPoint> read_points_file(const std::string& path) {
    std::istringstream in(slurp(path));
    std::vector<ProjPoint> out;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(strip_comment(line));
        if (!line.empty()) out.push_back(parse_point(line));
    }
    if (out.empty()) throw DomainError("parse_error", path + ": no points");
    return out;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DomainError("io_error", "cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw DomainError("io_error", "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw DomainError("io_error", "cannot rename onto " + path + ": " + ec.message());
    }
}

void emit(const RunConfig& c, const std::string& content) {
    if (c.out_path.empty())
        std::cout << content << std::flush;
    else
        write_atomic(c.out_path, content);
}

std::string csv_preamble(const RunConfig& c, const Json& summary) {
    std::string s = "# config: " + to_json(c).dump() + "\n";
    if (!summary.is_null()) s += "# summary: " + summary.dump() + "\n";
    return s;
}

}  // namespace corrdyn::cli
