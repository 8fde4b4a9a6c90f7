#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "corrdyn/corresp.hpp"
#include "corrdyn/projpoint.hpp"

namespace corrdyn {

// Monte Carlo sizes for the local volume estimator.
struct McBudget {
    long points = 400;    // samples of the ball B_x(r)
    long branches = 8;    // branch paths per sampled point
    int bootstrap = 50;   // bootstrap replicates for standard errors
};

// Volume of Gamma_n over the chordal ball B_x(r), where Gamma_n is the graph
// of f^n and volume is the mass of pi_1^* omega + pi_2^* omega (sphere area 1):
//   area(B) lambda0^n (1 + E[D^2]),  area(B) = r^2,
// with D the product of spherical branch derivatives along a uniformly drawn
// branch path from a uniformly drawn point of B.
struct VolumeRow {
    double r = 0;
    int n = 0;
    double log_volume = 0;
    double volume_est = 0;      // exp(log_volume); may overflow to inf for large n
    double rate = 0;            // log_volume / n
    double mean_d2 = 0;         // E[D^2]
    double log_stderr = 0;      // bootstrap standard error of log_volume
    double effective_samples = 0;
};

struct PhiEstimate {
    ProjPoint x;
    std::vector<VolumeRow> rows;
    double phi_headline = 0;  // min over r of the rate at the largest n
    double stderr = 0;        // bootstrap standard error of the headline rate
    long critical_resamples = 0;
    std::uint64_t seed = 0;
};

// Throws DomainError("invalid_argument") on empty grids or r outside (0, 0.5].
PhiEstimate phi_estimate(const Correspondence& f, const ProjPoint& x, const std::vector<double>& r_list,
                         const std::vector<int>& n_list, const McBudget& budget, std::uint64_t seed);

struct PsiRow {
    double r = 0;
    int n = 0;
    double psi = 0;  // volume / (r^2 lambda0^n) = 1 + E[D^2]
    double stderr = 0;
};

struct PsiTable {
    ProjPoint x;
    std::vector<PsiRow> rows;
    double headline = 0;     // at the smallest r and largest n
    bool divergent = false;  // at the smallest r: non-decreasing in n (within 2 stderr) and last / first > 10
    long critical_resamples = 0;
    std::uint64_t seed = 0;
};

PsiTable psi_estimate(const Correspondence& f, const ProjPoint& x, const std::vector<double>& r_list,
                      const std::vector<int>& n_list, const McBudget& budget, std::uint64_t seed);

struct ScanWindow {
    double re_min = -1.5, re_max = 1.5, im_min = -1.5, im_max = 1.5;
    int nx = 64, ny = 64;
};

enum class ScanQuantity { Phi, Psi };

struct ScanPixel {
    double re = 0, im = 0;
    double value = 0;  // NaN when the pixel failed
};

// Per-pixel estimate at pixel centers; row-major from (re_min, im_min).
// Resolution is limited to 2048 x 2048.
std::vector<ScanPixel> scan(const Correspondence& f, const ScanWindow& window, double r, int n, const McBudget& budget,
                            std::uint64_t seed, ScanQuantity quantity = ScanQuantity::Phi);

// CSV: re,im,value
void write_scan_csv(std::ostream& os, const std::vector<ScanPixel>& pixels);

// gnuplot script rendering the CSV as a heat map.
void write_plot_script(std::ostream& os, const std::string& csv_path, const ScanWindow& window, const std::string& title);

// CSV: r,n,log_volume,volume_est,rate,mean_d2,log_stderr,effective_samples
void write_phi_csv(std::ostream& os, const PhiEstimate& est);
// CSV: r,n,psi,stderr
void write_psi_csv(std::ostream& os, const PsiTable& table);

}  // namespace corrdyn
