#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "corrdyn/corresp.hpp"
#include "corrdyn/orbits.hpp"

namespace corrdyn {

// How orbit starting points are chosen.
struct StartDesign {
    enum class Kind { Spherical, Band, List };
    Kind kind = Kind::Spherical;
    long count = 1000;             // Spherical, Band
    double band = 0.1;             // Band: chordal half-width around the unit circle
    std::vector<ProjPoint> points; // List

    static StartDesign spherical(long count) { return {Kind::Spherical, count, 0, {}}; }
    static StartDesign unit_circle_band(long count, double band) { return {Kind::Band, count, band, {}}; }
    static StartDesign list(std::vector<ProjPoint> points) { return {Kind::List, 0, 0, std::move(points)}; }

    std::string describe() const;
};

// Uniform with respect to spherical area (restricted to the band for Kind::Band).
std::vector<ProjPoint> draw_starts(const StartDesign& design, std::uint64_t seed);

// Greedy maximal separated subfamily, scanned in (start_id, orbit_id) order.
// Two orbits are separated iff their index sequences differ or some step is
// more than epsilon apart in the chordal metric.
// Throws DomainError("invalid_argument") on mixed lengths or epsilon outside (0, 1].
long separated_count(const std::vector<Orbit>& orbits, double epsilon);

struct EntropyRow {
    int n = 0;
    double epsilon = 0;
    long separated_count = 0;
    double rate = 0;  // log(separated_count) / n
    long orbits = 0;  // size of the sampled family
};

struct EntropyTable {
    std::vector<EntropyRow> rows;
    std::uint64_t seed = 0;
    long budget = 0;
    std::string design;
    std::string estimator = "greedy";
    int n_max = 0;
    std::vector<double> eps_grid;
    double headline_rate = 0;  // max over epsilon of the rate at n_max
    double bound = 0;          // log max(d0_est, d1_est), or log d0_est for a fixed start set
    std::string bound_kind;    // "lov" or "lov_from"
    SampleDiagnostics diagnostics;
};

struct EntropyOptions {
    int bound_depth = 4;  // iterate order used for the degree estimates in the bound
    long degree_cap = kDefaultDegreeCap;
};

EntropyTable estimate_entropy(const Correspondence& f, const StartDesign& design, const std::vector<int>& n_list,
                              const std::vector<double>& eps_list, long budget, std::uint64_t seed,
                              const EntropyOptions& options = {});

// Orbits start only from Y; the reported bound is log d0.
EntropyTable estimate_entropy_from(const Correspondence& f, const std::vector<ProjPoint>& Y, const std::vector<int>& n_list,
                                   const std::vector<double>& eps_list, long budget, std::uint64_t seed,
                                   const EntropyOptions& options = {});

// CSV: n,epsilon,separated_count,rate,orbits
void write_entropy_csv(std::ostream& os, const EntropyTable& table);

struct LovRow {
    int n = 0;
    long lambda0 = 0;
    long lambda1 = 0;
    long mass_lower = 0;  // max lambda_p(f^n)
    long mass_upper = 0;  // 2 max lambda_p(f^n)
};

struct LovReport {
    std::vector<LovRow> rows;
    int n_max = 0;
    double d0_est = 0;  // lambda0(f^n_max)^(1/n_max)
    double d1_est = 0;
    double lov_value = 0;  // max(log d0_est, log d1_est)
};

// Propagates DegreeCapExceeded.
LovReport lov_report(const Correspondence& f, int n_max, long degree_cap = kDefaultDegreeCap);

}  // namespace corrdyn
