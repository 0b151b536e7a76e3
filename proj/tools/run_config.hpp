#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sharpgap::cli {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr std::size_t kDefaultOracleCells = 4096;
inline constexpr std::size_t kDefaultPdeCells = 128;
inline constexpr double kDefaultCfl = 0.4;

struct RunConfig {
    std::string subcommand;
    std::vector<int> n{2};
    std::vector<double> kappa{0.0};
    std::vector<double> diameter{3.141592653589793};
    std::string flux = "heat";
    double tol = kDefaultTol;
    std::optional<std::size_t> grid;
    std::optional<double> t_end;
    double cfl = kDefaultCfl;
    std::uint64_t seed = 1;
    std::optional<std::string> out;
    std::string format = "json";
    std::optional<double> a;
    bool sphere_limit = false;
    bool oracle = false;

    // Argument string that parses back to an identical configuration.
    [[nodiscard]] std::string canonical() const;
};

struct ParseOutcome {
    std::optional<RunConfig> config;   // empty when help was printed
    int exit_code = 0;
    std::string message;
};

// Never throws; grammar errors come back with exit_code 2.
[[nodiscard]] ParseOutcome parse_run_config(int argc, const char* const* argv);

// Shortest decimal string of the value rounded to 12 significant digits.
[[nodiscard]] std::string format_real(double v);
[[nodiscard]] double round12(double v);

} // namespace sharpgap::cli
