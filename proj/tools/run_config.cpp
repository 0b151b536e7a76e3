#include "run_config.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace sharpgap::cli {

double round12(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

template <class T>
std::string join(const std::vector<T>& values)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            os << ',';
        if constexpr (std::is_floating_point_v<T>) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", values[i]);
            os << buf;
        } else {
            os << values[i];
        }
    }
    return os.str();
}

std::string exact(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string RunConfig::canonical() const
{
    std::ostringstream os;
    os << subcommand << " --n " << join(n) << " --kappa " << join(kappa) << " --diameter " << join(diameter)
       << " --flux " << flux << " --tol " << exact(tol);
    if (grid)
        os << " --grid " << *grid;
    if (t_end)
        os << " --t-end " << exact(*t_end);
    os << " --cfl " << exact(cfl) << " --seed " << seed;
    if (a)
        os << " --a " << exact(*a);
    if (sphere_limit)
        os << " --sphere-limit";
    if (oracle)
        os << " --oracle";
    if (out)
        os << " --out " << *out;
    os << " --format " << format;
    return os.str();
}

ParseOutcome parse_run_config(int argc, const char* const* argv)
{
    CLI::App app{"Sharp spectral-gap bounds from diameter and Ricci curvature"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.set_help_all_flag("--help-all", "Show help for every subcommand");
    app.footer("Defaults: n=2 kappa=0 diameter=pi tol=1e-9 grid=4096 flux=heat cfl=0.4 format=json seed=1.\n"
               "grid counts oracle cells for eigen/bounds/sweep; evolve, decay and verify-moc default to 128\n"
               "cells on [0, D/2]. Exit codes: 0 ok, 1 I/O, 2 invalid parameters, 3 non-convergence.");

    RunConfig cfg;
    std::string grid_text;
    std::string t_end_text;
    std::string a_text;
    std::string out_text;

    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {
        {"eigen", "Sharp eigenvalue mu(D, kappa, n) by shooting"},
        {"bounds", "Classical bounds next to mu, with the Li-conjecture check"},
        {"evolve", "Evolve the comparison equation from seeded concave data"},
        {"decay", "Radial heat flow oscillation decay and fitted rate"},
        {"verify-moc", "Check the evolving modulus of continuity on the warped product"},
        {"ricci", "Ricci bounds of the warped-product metric"},
        {"sweep", "Bounds table over comma-separated n, kappa and diameter lists"},
    };
    CLI::Option* sweep_lists[3] = {nullptr, nullptr, nullptr};
    for (const Sub& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        const bool lists = std::string(s.name) == "sweep";
        if (lists) {
            sweep_lists[0] = sub->add_option("--n", cfg.n, "Dimensions (default 2,3,5)")->delimiter(',');
            sweep_lists[1] =
                sub->add_option("--kappa", cfg.kappa, "Curvature bounds (default -1,-0.25,0,0.25,0.5)")->delimiter(',');
            sweep_lists[2] = sub->add_option("--diameter", cfg.diameter, "Diameters (default 2)")->delimiter(',');
        } else {
            sub->add_option("--n", cfg.n, "Dimension n >= 2")->expected(1);
            sub->add_option("--kappa", cfg.kappa, "Ricci bound Ric >= (n-1) kappa")->expected(1);
            sub->add_option("--diameter", cfg.diameter, "Diameter D > 0")->expected(1);
        }
        sub->add_option("--flux", cfg.flux, "heat | plap:P[:EPS]");
        sub->add_option("--tol", cfg.tol, "Eigenvalue bracket tolerance");
        sub->add_option("--grid", grid_text, "Grid cells (4096 oracle, 128 PDE)")->type_name("INT");
        sub->add_option("--t-end", t_end_text, "Final time (evolve 1, decay 6/mu, verify-moc 0.1)")->type_name("REAL");
        sub->add_option("--cfl", cfg.cfl, "Explicit step factor");
        sub->add_option("--seed", cfg.seed, "Seed for generated initial data");
        sub->add_option("--out", out_text, "Output path (default: standard output)")->type_name("PATH");
        sub->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
        if (std::string(s.name) == "ricci" || std::string(s.name) == "verify-moc")
            sub->add_option("--a", a_text, "Warp amplitude a > 0 (default min(1, 1/(2 kappa)))")->type_name("REAL");
        if (std::string(s.name) == "eigen") {
            sub->add_flag("--sphere-limit", cfg.sphere_limit, "Return the analytic limit n*kappa");
            sub->add_flag("--oracle", cfg.oracle, "Also report the extrapolated finite-difference oracle");
        }
    }

    ParseOutcome outcome;
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream os;
        const int code = app.exit(e, os, os);
        outcome.exit_code = code == 0 ? 0 : 2;
        outcome.message = os.str();
        return outcome;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (cfg.subcommand == "sweep") {
        if (sweep_lists[0]->count() == 0)
            cfg.n = {2, 3, 5};
        if (sweep_lists[1]->count() == 0)
            cfg.kappa = {-1.0, -0.25, 0.0, 0.25, 0.5};
        if (sweep_lists[2]->count() == 0)
            cfg.diameter = {2.0};
    }
    try {
        if (!grid_text.empty()) {
            std::size_t used = 0;
            const long long g = std::stoll(grid_text, &used);
            if (used != grid_text.size() || g <= 0)
                throw std::invalid_argument(grid_text);
            cfg.grid = static_cast<std::size_t>(g);
        }
        if (!t_end_text.empty())
            cfg.t_end = std::stod(t_end_text);
        if (!a_text.empty())
            cfg.a = std::stod(a_text);
    } catch (const std::exception&) {
        outcome.exit_code = 2;
        outcome.message = "malformed numeric option";
        return outcome;
    }
    if (!out_text.empty())
        cfg.out = out_text;
    if (cfg.n.empty() || cfg.kappa.empty() || cfg.diameter.empty()) {
        outcome.exit_code = 2;
        outcome.message = "empty parameter list";
        return outcome;
    }
    outcome.config = cfg;
    return outcome;
}

} // namespace sharpgap::cli
