#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

const char* describe(const std::string& name) {
    if (name == "levels") return "Hyperfine levels against field, qubit splitting and sensitivity";
    if (name == "pulse") return "Raman pi pulse: three-level run against the two-level model";
    if (name == "stirap") return "STIRAP transfer and efficiency against pulse area";
    if (name == "gate") return "Phase-gate schedule, accumulated phase and fidelity";
    if (name == "budget") return "Dephasing, loss and operations budget";
    if (name == "sweep") return "Scalar results over one swept config value";
    if (name == "paper-repro") return "Every reference check on one scenario";
    return "";
}

} // namespace

int main(int argc, char** argv) {
    using namespace hybridgate::cli;

    CLI::App app{"Hyperfine, Raman and dipole-gate calculator for Rb-Li qubits"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1, 1);

    RunRequest req;
    std::string mode;
    std::uint64_t seed = 0;
    for (const auto& name : subcommands()) {
        auto* sub = app.add_subcommand(name, describe(name));
        sub->add_option("--config", req.config_path, "Scenario file")->required();
        sub->add_option("--out", req.out_dir, "Output directory (default: $HYBRIDGATE_OUT, then .)");
        sub->add_option("--seed", seed, "Monte Carlo seed (overrides [run] seed)");
        sub->add_option("--mode", mode, "Breit-Rabi variant")->check(CLI::IsMember({"paper", "standard"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    req.subcommand = app.get_subcommands().front()->get_name();
    const auto* sub = app.get_subcommands().front();
    if (sub->count("--seed")) req.seed = seed;
    if (sub->count("--mode")) req.mode = mode;
    return run(req, std::cout, std::cerr);
}
