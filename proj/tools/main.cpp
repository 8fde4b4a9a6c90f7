#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "corrdyn/error.hpp"
#include "corrdyn/numeric/parallel.hpp"

using corrdyn::cli::Format;
using corrdyn::cli::Json;
using corrdyn::cli::RunConfig;

namespace {

void error_json(const std::string& code, const std::string& message, const Json& extra = {}) {
    Json j{{"error", code}, {"message", message}};
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    std::cerr << j.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamics of meromorphic correspondences on the Riemann sphere"};
    app.require_subcommand(1);
    RunConfig c;
    unsigned threads = 0;
    std::string format;
    app.add_option("--threads", threads, "worker threads (default: CORRDYN_THREADS, else all cores)")->check(CLI::NonNegativeNumber);

    auto add_f = [&](CLI::App* s) { s->add_option("-f,--f", c.f_path, "correspondence file")->required()->check(CLI::ExistingFile); };
    auto add_common = [&](CLI::App* s) {
        s->add_option("--seed", c.seed, "RNG seed");
        s->add_option("-o,--out", c.out_path, "output path (default: stdout)");
        s->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_n = [&](CLI::App* s, const char* help) { s->add_option("--n", c.n_list, help)->required()->delimiter(','); };
    auto add_cap = [&](CLI::App* s) { s->add_option("--degree-cap", c.degree_cap, "cap on lambda0 + lambda1 of iterates"); };
    auto add_mc = [&](CLI::App* s) {
        s->add_option("--r", c.r_list, "chordal radii in (0, 0.5]")->required()->delimiter(',');
        s->add_option("--points", c.mc_points, "ball samples per radius");
        s->add_option("--branches", c.mc_branches, "branch paths per ball sample");
        s->add_option("--bootstrap", c.mc_bootstrap, "bootstrap replicates");
    };

    auto* compose = app.add_subcommand("compose", "graph of f o g (g acts first)");
    add_f(compose);
    compose->add_option("-g,--g", c.g_path, "second correspondence file (default: f)")->check(CLI::ExistingFile);
    add_common(compose);

    for (const char* name : {"iterate", "degrees"}) {
        auto* s = app.add_subcommand(name, std::string(name) == "iterate" ? "iterates f^1 .. f^n with their chains"
                                                                          : "degree reports of f^1 .. f^n");
        add_f(s);
        add_n(s, "largest iterate order");
        add_cap(s);
        add_common(s);
    }

    auto* fixed = app.add_subcommand("fixed-points", "fixed points of f^1 .. f^n against the Lefschetz count");
    add_f(fixed);
    add_n(fixed, "largest iterate order");
    add_cap(fixed);
    add_common(fixed);

    auto* lov = app.add_subcommand("lov", "volume growth of the iterated graphs");
    add_f(lov);
    add_n(lov, "largest iterate order");
    add_cap(lov);
    add_common(lov);

    for (const char* name : {"entropy", "entropy-from"}) {
        bool from = std::string(name) == "entropy-from";
        auto* s = app.add_subcommand(name, from ? "separated orbit counts from a fixed start set"
                                                : "separated orbit counts from sampled starts");
        add_f(s);
        add_n(s, "orbit lengths");
        s->add_option("--eps", c.eps_list, "separation scales in (0, 1]")->required()->delimiter(',');
        s->add_option("--samples", c.samples, "orbit budget per length");
        if (from) {
            s->add_option("--points-file", c.points_path, "start points, one 're,im' or 'inf' per line")
                ->required()
                ->check(CLI::ExistingFile);
        } else {
            s->add_option("--starts", c.starts, "number of start points");
            s->add_option("--design", c.design, "spherical or band")->check(CLI::IsMember({"spherical", "band"}));
            s->add_option("--band", c.band, "chordal half-width of the unit-circle band");
        }
        s->add_option("--bound-depth", c.bound_depth, "iterate order for the degree bound");
        add_cap(s);
        add_common(s);
    }

    for (const char* name : {"phi", "psi"}) {
        auto* s = app.add_subcommand(name, std::string(name) == "phi" ? "local volume growth rate at a point"
                                                                      : "normalized local volume at a point");
        add_f(s);
        s->add_option("--x", c.x, "point 're,im' or 'inf'")->required();
        add_n(s, "iterate orders");
        add_mc(s);
        add_common(s);
    }

    auto* sc = app.add_subcommand("scan", "phi or psi over a grid of points");
    add_f(sc);
    add_n(sc, "iterate order");
    add_mc(sc);
    sc->add_option("--window", c.window, "re_min,re_max,im_min,im_max")->delimiter(',')->expected(4);
    sc->add_option("--resolution", c.resolution, "nx,ny")->delimiter(',')->expected(2);
    sc->add_option("--quantity", c.quantity, "phi or psi")->check(CLI::IsMember({"phi", "psi"}));
    sc->add_option("--plot", c.plot_path, "also write a gnuplot script here");
    add_common(sc);

    auto* self = app.add_subcommand("selftest", "acceptance criteria at reduced budgets");
    self->add_option("--scale", c.scale, "budget fraction in (0, 1]");
    add_common(self);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    c.command = app.get_subcommands().front()->get_name();
    bool tabular = c.command == "entropy" || c.command == "entropy-from" || c.command == "phi" || c.command == "psi" ||
                   c.command == "scan";
    c.format = format.empty() ? (tabular ? Format::Csv : Format::Json) : (format == "csv" ? Format::Csv : Format::Json);
    if (threads) corrdyn::numeric::set_default_threads(threads);

    try {
        return corrdyn::cli::run(c);
    } catch (const corrdyn::cli::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\nRun with --help for more information.\n";
        return 2;
    } catch (const corrdyn::DegreeCapExceeded& e) {
        Json partial = Json::array();
        for (const auto& p : e.partial()) partial.push_back({{"n", p.report.n}, {"lambda0", p.report.lambda0}, {"lambda1", p.report.lambda1}});
        error_json(e.code(), e.what(), Json{{"partial", partial}});
        return 1;
    } catch (const corrdyn::DomainError& e) {
        error_json(e.code(), e.what());
        return 1;
    } catch (const std::exception& e) {
        error_json("internal_error", e.what());
        return 1;
    }
}
