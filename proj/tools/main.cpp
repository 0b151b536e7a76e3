#include "run_config.hpp"

#include <sharpgap/sharpgap.h>

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace {

using sharpgap::cli::RunConfig;
using sharpgap::cli::format_real;
using sharpgap::cli::round12;
using Json = nlohmann::ordered_json;

// Failure carrying the library status and message.
struct Failure {
    sg_status status;
    std::string message;
};

void check(sg_status status)
{
    if (status != SG_OK)
        throw Failure{status, sg_last_error()};
}

int exit_code_for(sg_status status)
{
    switch (status) {
    case SG_OK:
        return 0;
    case SG_ERR_NONCONVERGENCE:
    case SG_ERR_CFL:
        return 3;
    case SG_ERR_IO:
    case SG_ERR_INTERNAL:
        return 1;
    default:
        return 2;
    }
}

// A flat table: JSON rows and CSV share the same key order.
struct Table {
    std::vector<std::string> columns;
    std::vector<Json> rows;
};

struct Report {
    Json json;
    Table csv;
};

Json real(double v) { return round12(v); }

sg_model model_of(const RunConfig& cfg, std::size_t i = 0, std::size_t j = 0, std::size_t k = 0)
{
    return sg_model{cfg.n.at(i), cfg.kappa.at(j), cfg.diameter.at(k)};
}

sg_flux flux_of(const RunConfig& cfg)
{
    sg_flux flux{};
    check(sg_flux_parse(cfg.flux.c_str(), &flux));
    return flux;
}

std::size_t pde_cells(const RunConfig& cfg) { return cfg.grid.value_or(sharpgap::cli::kDefaultPdeCells); }

void put_model(Json& j, const sg_model& m)
{
    j["n"] = m.n;
    j["kappa"] = real(m.kappa);
    j["diameter"] = real(m.diameter);
}

Table single_row(const Json& j)
{
    Table t;
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!it.value().is_structured())
            t.columns.push_back(it.key());
    Json row = Json::object();
    for (const auto& c : t.columns)
        row[c] = j[c];
    t.rows.push_back(row);
    return t;
}

Report run_eigen(const RunConfig& cfg)
{
    const sg_model m = model_of(cfg);
    check(sg_model_validate(&m));
    Json j;
    j["subcommand"] = "eigen";
    put_model(j, m);
    j["tol"] = real(cfg.tol);
    if (cfg.sphere_limit) {
        double mu = 0.0;
        check(sg_sphere_limit(m.n, m.kappa, &mu));
        j["mu"] = real(mu);
    } else {
        sg_eigen* raw = nullptr;
        check(sg_eigen_solve(&m, cfg.tol, &raw));
        std::unique_ptr<sg_eigen, void (*)(sg_eigen*)> eig(raw, sg_eigen_free);
        double lo = 0.0;
        double hi = 0.0;
        sg_eigen_bracket(eig.get(), &lo, &hi);
        j["mu"] = real(sg_eigen_mu(eig.get()));
        j["bracket_lo"] = real(lo);
        j["bracket_hi"] = real(hi);
        j["iterations"] = sg_eigen_iterations(eig.get());
        j["steps"] = sg_eigen_steps(eig.get());
    }
    if (cfg.oracle) {
        const std::size_t cells = cfg.grid.value_or(sharpgap::cli::kDefaultOracleCells);
        double oracle = 0.0;
        check(sg_fd_oracle_extrapolated(&m, cells, &oracle));
        j["oracle_cells"] = cells;
        j["oracle_mu"] = real(oracle);
    }
    return {j, single_row(j)};
}

Json bounds_row(const sg_model& m, double tol)
{
    sg_bounds b{};
    check(sg_classical_bounds(&m, tol, &b));
    Json j;
    put_model(j, m);
    j["sharp_mu"] = real(b.sharp_mu);
    if (b.has_lichnerowicz)
        j["lichnerowicz"] = real(b.lichnerowicz);
    j["zhong_yang"] = real(b.zhong_yang);
    j["li_conjecture"] = real(b.li_conjecture);
    j["shi_zhang"] = real(b.shi_zhang);
    j["shi_zhang_s"] = real(b.shi_zhang_s);
    j["li_violated"] = b.li_violated != 0;
    return j;
}

const std::vector<std::string> kBoundsColumns = {"n",          "kappa",       "diameter",      "sharp_mu",
                                                 "lichnerowicz", "zhong_yang", "li_conjecture", "shi_zhang",
                                                 "shi_zhang_s",  "li_violated"};

Report run_bounds(const RunConfig& cfg)
{
    const sg_model m = model_of(cfg);
    Json j;
    j["subcommand"] = "bounds";
    const Json row = bounds_row(m, cfg.tol);
    for (auto it = row.begin(); it != row.end(); ++it)
        j[it.key()] = it.value();
    j["tol"] = real(cfg.tol);
    return {j, single_row(j)};
}

Report run_sweep(const RunConfig& cfg)
{
    using Key = std::tuple<int, double, double>;
    std::vector<Key> keys;
    for (int n : cfg.n)
        for (double k : cfg.kappa)
            for (double d : cfg.diameter)
                keys.emplace_back(n, k, d);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    // Validate serially so the first bad tuple is reported deterministically.
    for (const auto& [n, k, d] : keys) {
        const sg_model m{n, k, d};
        check(sg_model_validate(&m));
    }

    std::vector<std::future<std::variant<Json, Failure>>> jobs;
    jobs.reserve(keys.size());
    for (const auto& [n, k, d] : keys) {
        const sg_model m{n, k, d};
        jobs.push_back(std::async(std::launch::async, [m, tol = cfg.tol]() -> std::variant<Json, Failure> {
            try {
                return bounds_row(m, tol);
            } catch (const Failure& f) {
                return f;
            }
        }));
    }

    Table table;
    table.columns = kBoundsColumns;
    Json rows = Json::array();
    for (auto& job : jobs) {
        auto result = job.get();
        if (auto* f = std::get_if<Failure>(&result))
            throw *f;
        Json& row = std::get<Json>(result);
        rows.push_back(row);
        table.rows.push_back(row);
    }
    Json j;
    j["subcommand"] = "sweep";
    j["tol"] = real(cfg.tol);
    j["rows"] = rows;
    return {j, table};
}

Report run_ricci(const RunConfig& cfg)
{
    const sg_model m = model_of(cfg);
    const double a = cfg.a.value_or(sg_default_warp(m.kappa));
    sg_ricci_report r{};
    check(sg_ricci_bounds(m.n, m.kappa, a, m.diameter, &r));
    Json j;
    j["subcommand"] = "ricci";
    put_model(j, m);
    j["a"] = real(a);
    j["radial"] = real(r.radial);
    j["tangential_min"] = real(r.tangential_min);
    j["admissible"] = r.admissible != 0;
    return {j, single_row(j)};
}

Report run_evolve(const RunConfig& cfg)
{
    const sg_model m = model_of(cfg);
    check(sg_model_validate(&m));
    const sg_flux flux = flux_of(cfg);
    const std::size_t cells = pde_cells(cfg);
    const double t_end = cfg.t_end.value_or(1.0);

    std::vector<double> phi0(cells + 1);
    check(sg_seeded_concave_profile(&m, cells, cfg.seed, phi0.data()));

    constexpr std::size_t kSamples = 10;
    std::vector<double> times;
    for (std::size_t k = 0; k < kSamples; ++k)
        times.push_back(t_end * static_cast<double>(k) / kSamples);
    sg_controls controls;
    sg_controls_default(&controls);
    controls.cfl = cfg.cfl;
    controls.output_times = times.data();
    controls.output_count = times.size();

    sg_series* raw = nullptr;
    check(sg_evolve(&flux, &m, phi0.data(), phi0.size(), t_end, &controls, &raw));
    std::unique_ptr<sg_series, void (*)(sg_series*)> series(raw, sg_series_free);

    Json j;
    j["subcommand"] = "evolve";
    put_model(j, m);
    j["flux"] = cfg.flux;
    j["grid"] = cells;
    j["t_end"] = real(t_end);
    j["seed"] = cfg.seed;
    const double origin = sg_series_origin(series.get());
    const double h = sg_series_spacing(series.get());
    Json s = Json::array();
    for (std::size_t i = 0; i <= cells; ++i)
        s.push_back(real(origin + static_cast<double>(i) * h));
    j["s"] = s;

    Table table;
    table.columns = {"t", "s", "phi"};
    Json profiles = Json::array();
    for (std::size_t k = 0; k < sg_series_count(series.get()); ++k) {
        const double* values = nullptr;
        const std::size_t count = sg_series_values(series.get(), k, &values);
        const double t = sg_series_time(series.get(), k);
        Json prof;
        prof["t"] = real(t);
        prof["osc"] = real(sg_series_oscillation(series.get(), k));
        Json vals = Json::array();
        for (std::size_t i = 0; i < count; ++i) {
            vals.push_back(real(values[i]));
            table.rows.push_back(Json{{"t", real(t)}, {"s", s[i]}, {"phi", real(values[i])}});
        }
        prof["phi"] = vals;
        profiles.push_back(prof);
    }
    j["profiles"] = profiles;
    return {j, table};
}

Report run_decay(const RunConfig& cfg)
{
    const sg_model m = model_of(cfg);
    check(sg_model_validate(&m));
    const sg_flux flux = flux_of(cfg);
    const std::size_t cells = pde_cells(cfg);
    constexpr std::size_t kSamples = 101;
    constexpr double kWindow = 0.5;

    sg_decay_run* raw = nullptr;
    check(sg_decay_run_execute(&m, &flux, cells, cfg.seed, cfg.t_end.value_or(0.0), cfg.cfl, kSamples, kWindow,
                               cfg.tol, &raw));
    std::unique_ptr<sg_decay_run, void (*)(sg_decay_run*)> run(raw, sg_decay_run_free);

    const double mu = sg_decay_run_mu(run.get());
    const double rate = sg_decay_run_rate(run.get());
    Json j;
    j["subcommand"] = "decay";
    put_model(j, m);
    j["flux"] = cfg.flux;
    j["grid"] = cells;
    j["seed"] = cfg.seed;
    j["t_end"] = real(sg_decay_run_t_end(run.get()));
    j["window"] = real(kWindow);
    j["mu"] = real(mu);
    j["rate"] = real(rate);
    j["rate_rel_error"] = real(std::abs(rate - mu) / mu);

    const double* t = nullptr;
    const double* osc = nullptr;
    const std::size_t count = sg_decay_run_series(run.get(), &t, &osc);
    Table table;
    table.columns = {"t", "osc"};
    Json series = Json::array();
    for (std::size_t k = 0; k < count; ++k) {
        Json row{{"t", real(t[k])}, {"osc", real(osc[k])}};
        series.push_back(row);
        table.rows.push_back(row);
    }
    j["series"] = series;
    return {j, table};
}

Report run_verify_moc(const RunConfig& cfg)
{
    const sg_model m = model_of(cfg);
    check(sg_model_validate(&m));
    const sg_flux flux = flux_of(cfg);
    const std::size_t cells = pde_cells(cfg);
    const double t_end = cfg.t_end.value_or(0.1);
    constexpr std::size_t kSamples = 10;

    sg_moc_run_summary s{};
    check(sg_moc_run(&m, &flux, cells, cfg.seed, t_end, cfg.a.value_or(0.0), cfg.cfl, kSamples, &s));
    Json j;
    j["subcommand"] = "verify-moc";
    put_model(j, m);
    j["flux"] = cfg.flux;
    j["grid"] = cells;
    j["seed"] = cfg.seed;
    j["t_end"] = real(t_end);
    j["a"] = real(s.a);
    if (s.epsilon > 0.0)
        j["epsilon"] = real(s.epsilon);
    j["tolerance"] = real(s.tolerance);
    j["violations"] = s.report.violations;
    j["pairs_checked"] = s.report.pairs_checked;
    j["time_stamps"] = s.report.time_stamps;
    j["worst_margin"] = real(s.report.worst_margin);
    j["antipodal_defect"] = real(s.report.antipodal_defect);
    return {j, single_row(j)};
}

std::string csv_cell(const Json& v)
{
    if (v.is_null())
        return "";
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_float())
        return format_real(v.get<double>());
    return v.dump();
}

std::string render(const Report& r, const std::string& format)
{
    if (format == "json")
        return r.json.dump(2) + "\n";
    std::ostringstream os;
    for (std::size_t c = 0; c < r.csv.columns.size(); ++c)
        os << (c ? "," : "") << r.csv.columns[c];
    os << '\n';
    for (const Json& row : r.csv.rows) {
        for (std::size_t c = 0; c < r.csv.columns.size(); ++c) {
            const auto& key = r.csv.columns[c];
            os << (c ? "," : "") << (row.contains(key) ? csv_cell(row[key]) : "");
        }
        os << '\n';
    }
    return os.str();
}

Report dispatch(const RunConfig& cfg)
{
    if (cfg.subcommand == "eigen")
        return run_eigen(cfg);
    if (cfg.subcommand == "bounds")
        return run_bounds(cfg);
    if (cfg.subcommand == "sweep")
        return run_sweep(cfg);
    if (cfg.subcommand == "ricci")
        return run_ricci(cfg);
    if (cfg.subcommand == "evolve")
        return run_evolve(cfg);
    if (cfg.subcommand == "decay")
        return run_decay(cfg);
    return run_verify_moc(cfg);
}

} // namespace

int main(int argc, char** argv)
{
    const auto parsed = sharpgap::cli::parse_run_config(argc, argv);
    if (!parsed.config) {
        (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message;
        return parsed.exit_code;
    }
    const RunConfig& cfg = *parsed.config;

    std::string text;
    try {
        text = render(dispatch(cfg), cfg.format);
    } catch (const Failure& f) {
        std::cerr << "error (" << sg_status_name(f.status) << "): " << f.message << '\n';
        return exit_code_for(f.status);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    if (!cfg.out) {
        std::cout << text;
        return std::cout ? 0 : 1;
    }
    std::ofstream file(*cfg.out, std::ios::binary);
    file << text;
    file.close();
    if (!file) {
        std::cerr << "error: cannot write " << *cfg.out << '\n';
        return 1;
    }
    return 0;
}
