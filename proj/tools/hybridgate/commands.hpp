#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"
#include "scenario.hpp"

namespace hybridgate::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitNumerical = 2,
};

struct RunRequest {
    std::string subcommand;
    std::string config_path;
    std::optional<std::string> out_dir; ///< --out; falls back to HYBRIDGATE_OUT, then "."
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
};

const std::vector<std::string>& subcommands();

/// Runs one subcommand and maps failures onto exit codes. Diagnostics go to
/// `err`, a short human-readable summary to `out`.
int run(const RunRequest& request, std::ostream& out, std::ostream& err);

/// Exit code for a failure raised while running; rethrows anything that is
/// not a configuration or numerical error.
int exit_code_for(std::exception_ptr error, std::ostream& err);

/// Reads, parses and resolves a config file, then applies --seed / --mode.
Scenario load_scenario_file(const std::string& path, const RunRequest& request, std::string* raw_text = nullptr);

struct Quantity {
    std::string name;
    std::function<double(const Scenario&)> eval;
};

/// Scalar results available to `sweep`.
const std::vector<Quantity>& sweep_quantities();

/// Every paper-anchored check, evaluated on `s`.
std::vector<Check> paper_checks(const Scenario& s, Json* scalars = nullptr);

} // namespace hybridgate::cli
