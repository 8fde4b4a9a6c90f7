#include "corrdyn/julia.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "corrdyn/numeric/parallel.hpp"
#include "corrdyn/numeric/rng.hpp"
#include "corrdyn/orbits.hpp"

namespace corrdyn {

namespace {

constexpr int kMaxRedraws = 16;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& v) {
    double m = kNegInf;
    for (double x : v) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    if (m == std::numeric_limits<double>::infinity()) return m;
    double s = 0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

// log(1 + e^t)
double softplus(double t) { return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

struct BallSamples {
    // log D^2 for every (point, branch) pair, one vector per depth in ns.
    std::vector<std::vector<double>> log_d2;
    long critical = 0;
};

BallSamples sample_ball(const FiberSolver& solver, const ProjPoint& x, double r, const std::vector<int>& ns,
                        const McBudget& budget, std::uint64_t seed, unsigned threads) {
    const auto npts = static_cast<std::size_t>(budget.points);
    const auto nbr = static_cast<std::size_t>(budget.branches);
    const int nmax = ns.back();
    const auto lam = static_cast<std::size_t>(solver.lambda0());
    BallSamples out;
    out.log_d2.assign(ns.size(), std::vector<double>(npts * nbr));
    std::vector<long> critical(npts, 0);

    auto draw_point = [&](std::mt19937_64& rng) {
        // Uniform in the chordal ball: P(rho <= s) = s^2 / r^2.
        double rho = r * std::sqrt(numeric::uniform01(rng));
        double theta = 2 * std::numbers::pi * numeric::uniform01(rng);
        return offset(x, rho, theta);
    };

    numeric::parallel_for(
        npts,
        [&](std::size_t p) {
            auto rng = numeric::stream(seed, p);
            const ProjPoint z0 = draw_point(rng);
            for (std::size_t b = 0; b < nbr; ++b) {
                ProjPoint start = z0;
                for (int attempt = 0;; ++attempt) {
                    ProjPoint cur = start;
                    double acc = 0;
                    std::size_t k = 0;
                    bool ok = true;
                    std::vector<double> rec(ns.size());
                    for (int step = 1; step <= nmax; ++step) {
                        auto imgs = solver.images(cur);
                        const BranchImage& img = imgs[numeric::uniform_index(rng, lam)];
                        if (!img.simple_in_w) {
                            ok = false;
                            break;
                        }
                        acc += 2 * std::log(img.deriv_sph);
                        cur = img.point;
                        if (step == ns[k]) rec[k++] = acc;
                    }
                    if (ok) {
                        for (std::size_t q = 0; q < ns.size(); ++q) out.log_d2[q][p * nbr + b] = rec[q];
                        break;
                    }
                    // A critical fiber has measure zero: redraw the start point.
                    ++critical[p];
                    if (attempt + 1 >= kMaxRedraws)
                        throw DomainError("fiber_solve_failed", "branch paths keep meeting critical fibers near the sampled ball");
                    start = draw_point(rng);
                }
            }
        },
        threads);
    for (long c : critical) out.critical += c;
    return out;
}

struct Summary {
    double log_volume, mean_d2, log_stderr, ess;
};

Summary summarize(const std::vector<double>& log_d2, double log_base, int bootstrap, std::uint64_t seed) {
    const double logn = std::log(static_cast<double>(log_d2.size()));
    const double log_e = log_sum_exp(log_d2) - logn;
    Summary s;
    s.log_volume = log_base + softplus(log_e);
    s.mean_d2 = std::exp(log_e);

    double m = kNegInf;
    for (double v : log_d2) m = std::max(m, v);
    if (m == kNegInf) {
        s.ess = static_cast<double>(log_d2.size());
    } else {
        double s1 = 0, s2 = 0;
        for (double v : log_d2) {
            double w = std::exp(v - m);
            s1 += w;
            s2 += w * w;
        }
        s.ess = s1 * s1 / s2;
    }

    auto rng = numeric::stream(seed, 0xB0075);
    std::vector<double> reps;
    std::vector<double> resample(log_d2.size());
    for (int b = 0; b < bootstrap; ++b) {
        for (auto& v : resample) v = log_d2[numeric::uniform_index(rng, log_d2.size())];
        reps.push_back(log_base + softplus(log_sum_exp(resample) - logn));
    }
    double mean = 0, var = 0;
    for (double v : reps) mean += v;
    if (!reps.empty()) mean /= static_cast<double>(reps.size());
    for (double v : reps) var += (v - mean) * (v - mean);
    s.log_stderr = reps.size() > 1 ? std::sqrt(var / static_cast<double>(reps.size() - 1)) : 0.0;
    return s;
}

void validate(const std::vector<double>& r_list, const std::vector<int>& n_list, const McBudget& budget) {
    if (r_list.empty() || n_list.empty()) throw DomainError("invalid_argument", "r and n grids must be non-empty");
    for (double r : r_list)
        if (!(r > 0 && r <= 0.5)) throw DomainError("invalid_argument", "radii must lie in (0, 0.5]");
    for (int n : n_list)
        if (n < 1) throw DomainError("invalid_argument", "depths must be positive");
    if (budget.points < 1 || budget.branches < 1 || budget.bootstrap < 0)
        throw DomainError("invalid_argument", "Monte Carlo budgets must be positive");
}

std::vector<VolumeRow> volume_rows(const Correspondence& f, const ProjPoint& x, const std::vector<double>& r_list,
                                   const std::vector<int>& n_list, const McBudget& budget, std::uint64_t seed,
                                   unsigned threads, long* critical) {
    validate(r_list, n_list, budget);
    const FiberSolver solver(f);
    std::vector<int> ns = n_list;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    std::vector<double> rs = r_list;
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());

    std::vector<VolumeRow> rows;
    long crit = 0;
    for (std::size_t ri = 0; ri < rs.size(); ++ri) {
        const std::uint64_t rseed = numeric::mix64(seed ^ numeric::mix64(ri + 1));
        BallSamples samples = sample_ball(solver, x, rs[ri], ns, budget, rseed, threads);
        crit += samples.critical;
        for (std::size_t k = 0; k < ns.size(); ++k) {
            const double log_base = 2 * std::log(rs[ri]) + ns[k] * std::log(static_cast<double>(solver.lambda0()));
            Summary s = summarize(samples.log_d2[k], log_base, budget.bootstrap, rseed + k);
            VolumeRow row;
            row.r = rs[ri];
            row.n = ns[k];
            row.log_volume = s.log_volume;
            row.volume_est = std::exp(s.log_volume);
            row.rate = s.log_volume / ns[k];
            row.mean_d2 = s.mean_d2;
            row.log_stderr = s.log_stderr;
            row.effective_samples = s.ess;
            rows.push_back(row);
        }
    }
    if (critical) *critical = crit;
    return rows;
}

PhiEstimate phi_from_rows(const ProjPoint& x, std::vector<VolumeRow> rows, long critical, std::uint64_t seed) {
    PhiEstimate est;
    est.x = x;
    est.seed = seed;
    est.critical_resamples = critical;
    int nmax = 0;
    for (const auto& r : rows) nmax = std::max(nmax, r.n);
    est.phi_headline = std::numeric_limits<double>::infinity();
    for (const auto& r : rows)
        if (r.n == nmax && r.rate < est.phi_headline) {
            est.phi_headline = r.rate;
            est.stderr = r.log_stderr / r.n;
        }
    est.rows = std::move(rows);
    return est;
}

PsiTable psi_from_rows(const Correspondence& f, const ProjPoint& x, const std::vector<VolumeRow>& rows, long critical,
                       std::uint64_t seed) {
    PsiTable t;
    t.x = x;
    t.seed = seed;
    t.critical_resamples = critical;
    const double loglam = std::log(static_cast<double>(f.lambda0()));
    for (const auto& r : rows) {
        PsiRow p;
        p.r = r.r;
        p.n = r.n;
        p.psi = std::exp(r.log_volume - 2 * std::log(r.r) - r.n * loglam);
        p.stderr = p.psi * r.log_stderr;
        t.rows.push_back(p);
    }
    // Rows are sorted by (r, n); the headline sequence is the smallest r.
    std::vector<PsiRow> seq;
    for (const auto& p : t.rows)
        if (p.r == t.rows.front().r) seq.push_back(p);
    t.headline = seq.back().psi;
    bool monotone = true;
    for (std::size_t k = 1; k < seq.size(); ++k)
        if (seq[k].psi < seq[k - 1].psi - 2 * std::max(seq[k].stderr, seq[k - 1].stderr)) monotone = false;
    t.divergent = seq.size() > 1 && monotone && seq.back().psi > 10 * seq.front().psi;
    return t;
}

}  // namespace

PhiEstimate phi_estimate(const Correspondence& f, const ProjPoint& x, const std::vector<double>& r_list,
                         const std::vector<int>& n_list, const McBudget& budget, std::uint64_t seed) {
    long critical = 0;
    auto rows = volume_rows(f, x, r_list, n_list, budget, seed, numeric::default_threads(), &critical);
    return phi_from_rows(x, std::move(rows), critical, seed);
}

PsiTable psi_estimate(const Correspondence& f, const ProjPoint& x, const std::vector<double>& r_list,
                      const std::vector<int>& n_list, const McBudget& budget, std::uint64_t seed) {
    long critical = 0;
    auto rows = volume_rows(f, x, r_list, n_list, budget, seed, numeric::default_threads(), &critical);
    return psi_from_rows(f, x, rows, critical, seed);
}

std::vector<ScanPixel> scan(const Correspondence& f, const ScanWindow& window, double r, int n, const McBudget& budget,
                            std::uint64_t seed, ScanQuantity quantity) {
    if (window.nx < 1 || window.ny < 1 || window.nx > 2048 || window.ny > 2048)
        throw DomainError("invalid_argument", "scan resolution must lie between 1 and 2048 per axis");
    if (!(window.re_max > window.re_min && window.im_max > window.im_min))
        throw DomainError("invalid_argument", "scan window is empty");
    validate({r}, {n}, budget);
    const std::size_t total = static_cast<std::size_t>(window.nx) * static_cast<std::size_t>(window.ny);
    std::vector<ScanPixel> out(total);
    const double dx = (window.re_max - window.re_min) / window.nx;
    const double dy = (window.im_max - window.im_min) / window.ny;
    numeric::parallel_for(total, [&](std::size_t k) {
        ScanPixel& px = out[k];
        px.re = window.re_min + (static_cast<double>(k % static_cast<std::size_t>(window.nx)) + 0.5) * dx;
        px.im = window.im_min + (static_cast<double>(k / static_cast<std::size_t>(window.nx)) + 0.5) * dy;
        const ProjPoint x = ProjPoint::affine({px.re, px.im});
        const std::uint64_t pseed = numeric::mix64(seed ^ numeric::mix64(k));
        try {
            long critical = 0;
            auto rows = volume_rows(f, x, {r}, {n}, budget, pseed, 1, &critical);
            px.value = quantity == ScanQuantity::Phi ? phi_from_rows(x, rows, critical, pseed).phi_headline
                                                     : psi_from_rows(f, x, rows, critical, pseed).headline;
        } catch (const DomainError&) {
            px.value = std::numeric_limits<double>::quiet_NaN();
        }
    });
    return out;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanPixel>& pixels) {
    os << "re,im,value\n";
    os.precision(17);
    for (const auto& p : pixels) {
        os << p.re << ',' << p.im << ',';
        if (std::isnan(p.value))
            os << "nan";
        else
            os << p.value;
        os << '\n';
    }
}

void write_plot_script(std::ostream& os, const std::string& csv_path, const ScanWindow& window, const std::string& title) {
    os << "# gnuplot script: heat map of " << csv_path << "\n"
       << "set datafile separator ','\n"
       << "set title '" << title << "'\n"
       << "set xrange [" << window.re_min << ":" << window.re_max << "]\n"
       << "set yrange [" << window.im_min << ":" << window.im_max << "]\n"
       << "set size ratio -1\n"
       << "set xlabel 'Re z'\nset ylabel 'Im z'\n"
       << "set palette rgbformulae 33,13,10\n"
       << "set view map\n"
       << "plot '" << csv_path << "' every ::1 using 1:2:3 with image notitle\n";
}

void write_phi_csv(std::ostream& os, const PhiEstimate& est) {
    os << "r,n,log_volume,volume_est,rate,mean_d2,log_stderr,effective_samples\n";
    os.precision(17);
    for (const auto& r : est.rows)
        os << r.r << ',' << r.n << ',' << r.log_volume << ',' << r.volume_est << ',' << r.rate << ',' << r.mean_d2 << ','
           << r.log_stderr << ',' << r.effective_samples << '\n';
}

void write_psi_csv(std::ostream& os, const PsiTable& table) {
    os << "r,n,psi,stderr\n";
    os.precision(17);
    for (const auto& r : table.rows) os << r.r << ',' << r.n << ',' << r.psi << ',' << r.stderr << '\n';
}

}  // namespace corrdyn
