#include <doctest.h>

#include "run_config.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result {
    int code;
    std::string out;
};

Result run(const std::string& args)
{
    const std::string cmd = std::string(SHARPGAP_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        cells.push_back(cell);
    return cells;
}

sharpgap::cli::RunConfig parse(std::vector<std::string> args)
{
    std::vector<const char*> argv{"sharpgap-cli"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    const auto outcome = sharpgap::cli::parse_run_config(static_cast<int>(argv.size()), argv.data());
    REQUIRE(outcome.config.has_value());
    return *outcome.config;
}

std::vector<std::string> words(const std::string& s)
{
    std::istringstream is(s);
    std::vector<std::string> w;
    std::string x;
    while (is >> x)
        w.push_back(x);
    return w;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("eigen at kappa = 0")
    {
        const auto r = run("eigen --n 3 --kappa 0 --diameter 3.141592653589793 --tol 1e-9");
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(std::abs(j["mu"].get<double>() - 1.0) < 1e-8);
        CHECK(j["n"] == 3);
    }

    TEST_CASE("Bonnet-Myers violation exits with 2")
    {
        CHECK(run("eigen --n 2 --kappa 4 --diameter 2.0").code == 2);
        const std::string cmd = std::string(SHARPGAP_CLI_PATH) + " eigen --n 2 --kappa 4 --diameter 2.0 2>&1";
        FILE* pipe = popen(cmd.c_str(), "r");
        std::array<char, 1024> buf{};
        const std::size_t got = fread(buf.data(), 1, buf.size(), pipe);
        pclose(pipe);
        CHECK(std::string(buf.data(), got).find("Bonnet-Myers") != std::string::npos);
    }

    TEST_CASE("bounds reports the Li violation")
    {
        const auto r = run("bounds --n 2 --kappa 0.1 --diameter 3.141592653589793");
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["li_violated"] == true);
        CHECK(j.contains("lichnerowicz"));
        const auto neg = nlohmann::json::parse(run("bounds --n 2 --kappa -0.1 --diameter 2").out);
        CHECK_FALSE(neg.contains("lichnerowicz"));
    }

    TEST_CASE("sweep is sorted and CSV matches JSON keys")
    {
        const auto js = run("sweep --n 5,2 --kappa 0.5,-1 --diameter 2,1");
        REQUIRE(js.code == 0);
        const auto j = nlohmann::json::parse(js.out);
        const auto& rows = j["rows"];
        REQUIRE(rows.size() == 8);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto key = [&](std::size_t k) {
                return std::tuple{rows[k]["n"].get<int>(), rows[k]["kappa"].get<double>(),
                                  rows[k]["diameter"].get<double>()};
            };
            CHECK(key(i - 1) < key(i));
        }

        const auto csv = run("sweep --n 5,2 --kappa 0.5,-1 --diameter 2,1 --format csv");
        REQUIRE(csv.code == 0);
        std::istringstream lines(csv.out);
        std::string header;
        std::getline(lines, header);
        const auto cols = split(header);
        for (const auto& c : cols) {
            bool somewhere = false;
            for (const auto& row : rows)
                somewhere = somewhere || row.contains(c);
            CHECK_MESSAGE(somewhere, c);
        }
        for (auto it = rows[0].begin(); it != rows[0].end(); ++it)
            CHECK(std::find(cols.begin(), cols.end(), it.key()) != cols.end());
        int count = 0;
        for (std::string line; std::getline(lines, line);)
            ++count;
        CHECK(count == 8);
    }

    TEST_CASE("output is deterministic")
    {
        const std::string args = "decay --n 2 --kappa -1 --diameter 2 --grid 32 --seed 4";
        const auto a = run(args);
        const auto b = run(args);
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(run("sweep").out == run("sweep").out);
        CHECK(run("verify-moc --grid 32 --seed 2").out == run("verify-moc --grid 32 --seed 2").out);
    }

    TEST_CASE("reals carry at most 12 significant digits")
    {
        const auto j = nlohmann::json::parse(run("eigen --n 3 --kappa -1 --diameter 2").out);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", j["mu"].get<double>());
        CHECK(std::stod(buf) == j["mu"].get<double>());
        CHECK(run("eigen --n 3 --kappa -1 --diameter 2").out.find("1.6820433200") != std::string::npos);
    }

    TEST_CASE("other subcommands")
    {
        auto j = nlohmann::json::parse(run("ricci --n 3 --kappa 1 --a 1 --diameter 2").out);
        CHECK(j["admissible"] == true);
        j = nlohmann::json::parse(run("verify-moc --n 3 --kappa 0.5 --diameter 2 --flux plap:3:1e-8 --grid 32").out);
        CHECK(j["violations"] == 0);
        j = nlohmann::json::parse(run("evolve --grid 16 --t-end 0.2").out);
        CHECK(j["profiles"].size() == 11);
        CHECK(j["s"].size() == 17);
        j = nlohmann::json::parse(run("eigen --n 3 --kappa 1 --diameter 3 --sphere-limit").out);
        CHECK(j["mu"] == 3.0);
    }

    TEST_CASE("exit codes")
    {
        CHECK(run("").code == 2);
        CHECK(run("frobnicate").code == 2);
        CHECK(run("eigen --n two").code == 2);
        CHECK(run("eigen --format xml").code == 2);
        CHECK(run("evolve --flux plap:0.5").code == 2);
        CHECK(run("ricci --a -1").code == 2);
        CHECK(run("evolve --grid 16 --cfl 0.4 --t-end 1e12").code == 3);
        CHECK(run("eigen --out /nonexistent-dir/x.json").code == 1);
        CHECK(run("--help").code == 0);
    }

    TEST_CASE("help lists the defaults")
    {
        const auto h = run("eigen --help").out;
        for (const char* s : {"1e-9", "4096", "heat", "0.4", "json"})
            CHECK_MESSAGE(h.find(s) != std::string::npos, s);
    }

    TEST_CASE("writes to a file")
    {
        const std::string path = "cli_test_output.csv";
        std::remove(path.c_str());
        REQUIRE(run("ricci --format csv --out " + path).code == 0);
        std::ifstream in(path);
        std::string header;
        std::getline(in, header);
        CHECK(header == "subcommand,n,kappa,diameter,a,radial,tangential_min,admissible");
        std::remove(path.c_str());
    }

    TEST_CASE("configuration round-trips through its canonical string")
    {
        for (const auto& args : std::vector<std::vector<std::string>>{
                 {"eigen"},
                 {"eigen", "--n", "5", "--kappa", "0.1", "--oracle", "--grid", "512"},
                 {"sweep", "--n", "2,3", "--kappa", "-1,0.3333333333333333"},
                 {"verify-moc", "--flux", "plap:3:1e-8", "--a", "0.5", "--t-end", "0.25", "--seed", "99"},
                 {"decay", "--format", "csv", "--out", "x.csv", "--cfl", "0.3"},
             }) {
            const auto cfg = parse(args);
            const auto again = parse(words(cfg.canonical()));
            CHECK(again.canonical() == cfg.canonical());
            CHECK(again.kappa == cfg.kappa);
            CHECK(again.grid == cfg.grid);
            CHECK(again.t_end == cfg.t_end);
        }
        CHECK(parse({"sweep"}).n == std::vector<int>{2, 3, 5});
    }
}
