#pragma once

// Fully resolved run configuration. Loading validates every value against
// the ranges the compute modules accept, so later DomainErrors point at a
// physics limit rather than a typo.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hybridgate/budget.hpp"
#include "hybridgate/dynamics.hpp"
#include "hybridgate/gate.hpp"
#include "hybridgate/hyperfine.hpp"
#include "ini.hpp"

namespace hybridgate::cli {

struct QubitSpec {
    std::string species_name;
    hyperfine::AtomSpecies species;
    hyperfine::HyperfineState upper;
    hyperfine::HyperfineState lower;
};

struct FieldSpec {
    double b_gauss;
    double gradient_gauss_per_cm;
    double lattice_spacing_m;
    double resonance_width_gauss;
};

struct LevelsGrid {
    double b_min_gauss;
    double b_max_gauss;
    long count;
};

struct NamedChannel {
    std::string name;
    hyperfine::HyperfineChannel channel;
};

struct PulseSpec {
    dynamics::LambdaParams lambda; ///< FOPA enhancement already applied
    double step_safety;
};

struct StirapSpec {
    double peak_rad_s;
    double rms_s;
    double stokes_lead_s;
    dynamics::LambdaParams detunings; ///< only delta_e, delta, gamma_e are used
    double scan_min_scale;
    long scan_count;
};

struct GateSpec {
    double enabler_duration_s;
    double detuning_rad_s;
};

struct NoiseSpec {
    budget::NoiseModel model;
    budget::BudgetOptions options;
    double readout_splitting_hz;
    std::size_t mc_samples;
    double loss_reference_time_s;
};

struct SweepSpec {
    bool present = false;
    std::string section;
    std::string key;
    double min = 0;
    double max = 0;
    long count = 0;
    std::vector<std::string> quantities;
};

struct Scenario {
    hyperfine::BreitRabiMode mode = hyperfine::BreitRabiMode::Paper;
    std::uint64_t seed = 0;
    std::map<std::string, hyperfine::AtomSpecies> species;
    QubitSpec qubit;
    FieldSpec field;
    LevelsGrid levels;
    std::vector<NamedChannel> channels;
    PulseSpec pulse;
    StirapSpec stirap;
    gate::DipoleParams dipole;
    GateSpec gate;
    NoiseSpec noise;
    SweepSpec sweep;

    /// Effective Rabi frequency of the configured Raman pulse.
    double omega_r() const;
    dynamics::TwoLevelParams gate_pulse() const;
    double omega_dd() const;
};

/// Throws ConfigError naming the offending key.
Scenario load_scenario(const Ini& ini);

hyperfine::HyperfineState parse_state(const std::string& text, const std::string& key);

} // namespace hybridgate::cli
