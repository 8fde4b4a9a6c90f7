#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "acceptance/suite.hpp"
#include "corrdyn/algebra/text.hpp"
#include "corrdyn/entropy.hpp"
#include "corrdyn/error.hpp"
#include "corrdyn/julia.hpp"

namespace corrdyn::cli {

namespace {

Json report_json(const DegreeReport& r) {
    Json dropped = Json::array();
    for (const auto& d : r.dropped)
        dropped.push_back(d.factor + " (free of " + d.missing_variable +
                          (d.multiplicity > 1 ? ", multiplicity " + std::to_string(d.multiplicity) : std::string()) + ")");
    return Json{{"n", r.n}, {"lambda0", r.lambda0}, {"lambda1", r.lambda1}, {"d0_est", r.d0_est}, {"d1_est", r.d1_est},
                {"dropped", dropped}};
}

Json components_json(const Correspondence& f) {
    Json out = Json::array();
    for (const auto& c : f.components()) out.push_back({{"equation", algebra::to_string(c.equation)}, {"multiplicity", c.multiplicity}});
    return out;
}

Json point_json(const ProjPoint& p) {
    if (p.is_infinity()) return "inf";
    cplx z = p.to_affine();
    return Json::array({z.real(), z.imag()});
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int max_n(const RunConfig& c) { return *std::max_element(c.n_list.begin(), c.n_list.end()); }

void require_json(const RunConfig& c) {
    if (c.format != Format::Json) throw UsageError(c.command + " only writes JSON");
}

// Tables go to the output in the requested format. When the table lands in a
// file the summary is echoed on stdout.
void emit_table(const RunConfig& c, const Json& summary, const std::string& csv_body, const Json& rows) {
    if (c.format == Format::Csv) {
        emit(c, csv_preamble(c, summary) + csv_body);
    } else {
        Json j{{"config", to_json(c)}};
        for (auto it = summary.begin(); it != summary.end(); ++it) j[it.key()] = it.value();
        j["rows"] = rows;
        emit(c, dump(j));
    }
    if (!c.out_path.empty()) std::cout << dump(summary);
}

int cmd_compose(const RunConfig& c) {
    require_json(c);
    auto f = read_correspondence_file(c.f_path);
    auto g = c.g_path.empty() ? f : read_correspondence_file(c.g_path);
    auto comp = compose(f, g);
    Json j{{"config", to_json(c)},
           {"chain", comp.chain.to_string()},
           {"lambda0", comp.chain.lambda0()},
           {"lambda1", comp.chain.lambda1()},
           {"components", components_json(comp.chain)},
           {"report", report_json(comp.report)}};
    emit(c, dump(j));
    return 0;
}

int cmd_iterate(const RunConfig& c, bool with_chains) {
    auto f = read_correspondence_file(c.f_path);
    auto its = iterate(f, max_n(c), c.degree_cap);
    if (c.format == Format::Csv) {
        std::ostringstream os;
        os << "n,lambda0,lambda1,d0_est,d1_est,dropped" << (with_chains ? ",chain" : "") << "\n";
        os.precision(17);
        for (const auto& it : its) {
            os << it.report.n << ',' << it.report.lambda0 << ',' << it.report.lambda1 << ',' << it.report.d0_est << ','
               << it.report.d1_est << ',' << it.report.dropped.size();
            if (with_chains) os << ",\"" << it.chain.to_string() << "\"";
            os << "\n";
        }
        emit(c, csv_preamble(c) + os.str());
        return 0;
    }
    Json rows = Json::array();
    for (const auto& it : its) {
        Json r = report_json(it.report);
        if (with_chains) {
            r["chain"] = it.chain.to_string();
            r["components"] = components_json(it.chain);
        }
        rows.push_back(r);
    }
    emit(c, dump(Json{{"config", to_json(c)}, {"correspondence", f.to_string()}, {"iterates", rows}}));
    return 0;
}

int cmd_fixed_points(const RunConfig& c) {
    auto f = read_correspondence_file(c.f_path);
    Json rows = Json::array();
    std::ostringstream os;
    os << "n,lefschetz,affine_roots,at_infinity,projective_count,diagonal_component\n";
    for (int n = 1; n <= max_n(c); ++n) {
        auto fp = fixed_point_poly(f, n, c.degree_cap);
        rows.push_back({{"n", n},
                        {"lefschetz", fp.lefschetz},
                        {"affine_roots", fp.affine_roots},
                        {"at_infinity", fp.at_infinity},
                        {"projective_count", fp.projective_count()},
                        {"diagonal_component", fp.diagonal_component},
                        {"diagonal_poly", algebra::to_string(fp.diagonal_poly)}});
        os << n << ',' << fp.lefschetz << ',' << fp.affine_roots << ',' << fp.at_infinity << ',' << fp.projective_count()
           << ',' << (fp.diagonal_component ? 1 : 0) << "\n";
    }
    if (c.format == Format::Csv)
        emit(c, csv_preamble(c) + os.str());
    else
        emit(c, dump(Json{{"config", to_json(c)}, {"correspondence", f.to_string()}, {"rows", rows}}));
    return 0;
}

int cmd_lov(const RunConfig& c) {
    auto f = read_correspondence_file(c.f_path);
    auto rep = lov_report(f, max_n(c), c.degree_cap);
    Json rows = Json::array();
    std::ostringstream os;
    os << "n,lambda0,lambda1,mass_lower,mass_upper\n";
    for (const auto& r : rep.rows) {
        rows.push_back({{"n", r.n},
                        {"lambda0", r.lambda0},
                        {"lambda1", r.lambda1},
                        {"mass_lower", r.mass_lower},
                        {"mass_upper", r.mass_upper}});
        os << r.n << ',' << r.lambda0 << ',' << r.lambda1 << ',' << r.mass_lower << ',' << r.mass_upper << "\n";
    }
    Json summary{{"correspondence", f.to_string()},
                 {"n_max", rep.n_max},
                 {"d0_est", rep.d0_est},
                 {"d1_est", rep.d1_est},
                 {"lov_value", rep.lov_value}};
    emit_table(c, summary, os.str(), rows);
    return 0;
}

int cmd_entropy(const RunConfig& c, bool from_points) {
    auto f = read_correspondence_file(c.f_path);
    EntropyOptions opt;
    opt.bound_depth = c.bound_depth;
    opt.degree_cap = c.degree_cap;
    EntropyTable t;
    if (from_points) {
        auto ys = read_points_file(c.points_path);
        if (static_cast<long>(ys.size()) > c.samples) throw UsageError("--samples must be at least the number of points");
        t = estimate_entropy_from(f, ys, c.n_list, c.eps_list, c.samples, c.seed, opt);
    } else {
        StartDesign d;
        if (c.design == "spherical")
            d = StartDesign::spherical(c.starts);
        else if (c.design == "band")
            d = StartDesign::unit_circle_band(c.starts, c.band);
        else
            throw UsageError("--design must be spherical or band");
        t = estimate_entropy(f, d, c.n_list, c.eps_list, c.samples, c.seed, opt);
    }
    std::ostringstream os;
    write_entropy_csv(os, t);
    Json rows = Json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"n", r.n}, {"epsilon", r.epsilon}, {"separated_count", r.separated_count}, {"rate", r.rate},
                        {"orbits", r.orbits}});
    Json summary{{"correspondence", f.to_string()},
                 {"design", t.design},
                 {"estimator", t.estimator},
                 {"seed", t.seed},
                 {"budget", t.budget},
                 {"n_max", t.n_max},
                 {"headline_rate", t.headline_rate},
                 {"bound", t.bound},
                 {"bound_kind", t.bound_kind},
                 {"diagnostics",
                  {{"enumerated_starts", t.diagnostics.enumerated_starts},
                   {"sampled_starts", t.diagnostics.sampled_starts},
                   {"perturbed", t.diagnostics.perturbed},
                   {"dropped", t.diagnostics.dropped}}}};
    emit_table(c, summary, os.str(), rows);
    return 0;
}

McBudget mc_budget(const RunConfig& c) {
    return {c.mc_points, c.mc_branches, static_cast<int>(c.mc_bootstrap)};
}

ProjPoint flag_point(const std::string& text) {
    try {
        return parse_point(text);
    } catch (const DomainError& e) {
        throw UsageError(std::string("--x: ") + e.what());
    }
}

int cmd_phi(const RunConfig& c) {
    auto f = read_correspondence_file(c.f_path);
    auto est = phi_estimate(f, flag_point(c.x), c.r_list, c.n_list, mc_budget(c), c.seed);
    std::ostringstream os;
    write_phi_csv(os, est);
    Json rows = Json::array();
    for (const auto& r : est.rows)
        rows.push_back({{"r", r.r}, {"n", r.n}, {"log_volume", r.log_volume}, {"volume_est", r.volume_est}, {"rate", r.rate},
                        {"mean_d2", r.mean_d2}, {"log_stderr", r.log_stderr}, {"effective_samples", r.effective_samples}});
    Json summary{{"correspondence", f.to_string()},
                 {"x", point_json(est.x)},
                 {"phi_headline", est.phi_headline},
                 {"stderr", est.stderr},
                 {"critical_resamples", est.critical_resamples},
                 {"seed", est.seed}};
    emit_table(c, summary, os.str(), rows);
    return 0;
}

int cmd_psi(const RunConfig& c) {
    auto f = read_correspondence_file(c.f_path);
    auto t = psi_estimate(f, flag_point(c.x), c.r_list, c.n_list, mc_budget(c), c.seed);
    std::ostringstream os;
    write_psi_csv(os, t);
    Json rows = Json::array();
    for (const auto& r : t.rows) rows.push_back({{"r", r.r}, {"n", r.n}, {"psi", r.psi}, {"stderr", r.stderr}});
    Json summary{{"correspondence", f.to_string()},
                 {"x", point_json(t.x)},
                 {"headline", t.headline},
                 {"divergent", t.divergent},
                 {"critical_resamples", t.critical_resamples},
                 {"seed", t.seed}};
    emit_table(c, summary, os.str(), rows);
    return 0;
}

int cmd_scan(const RunConfig& c) {
    if (c.format != Format::Csv) throw UsageError("scan only writes CSV");
    if (c.r_list.size() != 1 || c.n_list.size() != 1) throw UsageError("scan takes a single --r and a single --n");
    if (c.quantity != "phi" && c.quantity != "psi") throw UsageError("--quantity must be phi or psi");
    auto f = read_correspondence_file(c.f_path);
    ScanWindow w{c.window[0], c.window[1], c.window[2], c.window[3], c.resolution[0], c.resolution[1]};
    auto pixels = scan(f, w, c.r_list[0], c.n_list[0], mc_budget(c), c.seed,
                       c.quantity == "phi" ? ScanQuantity::Phi : ScanQuantity::Psi);
    long failed = std::count_if(pixels.begin(), pixels.end(), [](const ScanPixel& p) { return std::isnan(p.value); });
    std::ostringstream os;
    write_scan_csv(os, pixels);
    Json summary{{"correspondence", f.to_string()}, {"pixels", pixels.size()}, {"failed_pixels", failed}};
    emit(c, csv_preamble(c, summary) + os.str());
    if (!c.plot_path.empty()) {
        std::ostringstream plot;
        write_plot_script(plot, c.out_path.empty() ? "scan.csv" : c.out_path, w, c.quantity + " of " + f.to_string());
        write_atomic(c.plot_path, plot.str());
    }
    if (!c.out_path.empty()) std::cout << dump(summary);
    return 0;
}

int cmd_selftest(const RunConfig& c) {
    acceptance::Options opt;
    opt.seed = c.seed;
    opt.scale = c.scale;
    auto results = acceptance::run(opt, [&](const acceptance::Result& r) {
        if (c.format == Format::Csv || c.out_path.empty()) std::cout << acceptance::format(r) << std::endl;
    });
    long failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.pass; });
    Json rows = Json::array();
    for (const auto& r : results)
        rows.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"seconds", r.seconds},
                        {"limit_seconds", r.limit_seconds}, {"detail", r.detail}});
    if (c.format == Format::Json && !c.out_path.empty())
        write_atomic(c.out_path, dump(Json{{"config", to_json(c)}, {"failed", failed}, {"criteria", rows}}));
    std::cout << results.size() - static_cast<std::size_t>(failed) << " of " << results.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

int run(const RunConfig& c) {
    check_budgets(c);
    const std::string& k = c.command;
    if (k == "compose") return cmd_compose(c);
    if (k == "iterate") return cmd_iterate(c, true);
    if (k == "degrees") return cmd_iterate(c, false);
    if (k == "fixed-points") return cmd_fixed_points(c);
    if (k == "lov") return cmd_lov(c);
    if (k == "entropy") return cmd_entropy(c, false);
    if (k == "entropy-from") return cmd_entropy(c, true);
    if (k == "phi") return cmd_phi(c);
    if (k == "psi") return cmd_psi(c);
    if (k == "scan") return cmd_scan(c);
    if (k == "selftest") return cmd_selftest(c);
    throw UsageError("unknown command " + k);
}

}  // namespace corrdyn::cli
