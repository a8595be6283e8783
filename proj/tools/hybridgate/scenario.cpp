#include "scenario.hpp"

#include <cmath>
#include <sstream>

#include "hybridgate/constants.hpp"
#include "hybridgate/errors.hpp"

namespace hybridgate::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

double positive(const Ini& ini, const std::string& section, const std::string& key) {
    const double v = ini.get_double(section, key);
    if (!(v > 0.0)) throw ConfigError(qualified(section, key), "must be positive");
    return v;
}

double positive(const Ini& ini, const std::string& section, const std::string& key, double fallback) {
    return ini.has(section, key) ? positive(ini, section, key) : fallback;
}

double non_negative(const Ini& ini, const std::string& section, const std::string& key, double fallback) {
    const double v = ini.get_double(section, key, fallback);
    if (!(v >= 0.0)) throw ConfigError(qualified(section, key), "must be non-negative");
    return v;
}

const hyperfine::AtomSpecies& lookup_species(const std::map<std::string, hyperfine::AtomSpecies>& species,
                                             const std::string& name, const std::string& key) {
    const auto it = species.find(name);
    if (it == species.end()) throw ConfigError(key, "unknown species '" + name + "'");
    return it->second;
}

hyperfine::AtomInState parse_atom(const std::map<std::string, hyperfine::AtomSpecies>& species,
                                  const std::string& text, const std::string& key) {
    const auto space = text.find(' ');
    if (space == std::string::npos) throw ConfigError(key, "expected `<species> <F>,<m>`, got '" + text + "'");
    const std::string name = trim(text.substr(0, space));
    const auto& sp = lookup_species(species, name, key);
    const auto state = parse_state(text.substr(space + 1), key);
    if (!hyperfine::is_valid_state(sp, state)) throw ConfigError(key, "state not allowed for species '" + name + "'");
    return {sp, state};
}

void load_species(const Ini& ini, Scenario& s) {
    s.species["rb87"] = hyperfine::rb87();
    s.species["li7"] = hyperfine::li7();
    for (const auto& section : ini.sections_with_prefix("species")) {
        const std::string id = section.substr(std::string("species ").size());
        hyperfine::AtomSpecies sp;
        sp.name = ini.get_string(section, "name", id);
        sp.nuclear_spin = positive(ini, section, "nuclear_spin");
        sp.hyperfine_splitting = positive(ini, section, "hyperfine_splitting_hz");
        sp.g_j = positive(ini, section, "g_j");
        sp.g_i = ini.get_double(section, "g_i", 0.0);
        try {
            sp.validate();
        } catch (const DomainError& e) {
            throw ConfigError(qualified(section, "nuclear_spin"), e.what());
        }
        s.species[id] = sp;
    }
}

} // namespace

hyperfine::HyperfineState parse_state(const std::string& text, const std::string& key) {
    const auto parts = split(text, ',');
    if (parts.size() != 2) throw ConfigError(key, "expected `<F>,<m>`, got '" + trim(text) + "'");
    const auto f = parse_double(parts[0]);
    const auto m = parse_double(parts[1]);
    if (!f || !m || *f != std::floor(*f) || *m != std::floor(*m))
        throw ConfigError(key, "F and m must be integers, got '" + trim(text) + "'");
    return {static_cast<int>(*f), static_cast<int>(*m)};
}

double Scenario::omega_r() const { return dynamics::effective_rabi(pulse.lambda).omega_r; }

dynamics::TwoLevelParams Scenario::gate_pulse() const { return {omega_r(), gate.detuning_rad_s}; }

double Scenario::omega_dd() const {
    return gate::dipole_dipole_rate(gate::induced_dipole(dipole).debye, dipole.separation_m);
}

Scenario load_scenario(const Ini& ini) {
    Scenario s;

    const std::string mode = ini.get_string("run", "mode", "paper");
    if (mode == "paper")
        s.mode = hyperfine::BreitRabiMode::Paper;
    else if (mode == "standard")
        s.mode = hyperfine::BreitRabiMode::Standard;
    else
        throw ConfigError("run.mode", "expected paper or standard, got '" + mode + "'");
    const long seed = ini.get_long("run", "seed", 0);
    if (seed < 0) throw ConfigError("run.seed", "must be non-negative");
    s.seed = static_cast<std::uint64_t>(seed);

    load_species(ini, s);

    s.qubit.species_name = ini.get_string("qubit", "species", "rb87");
    s.qubit.species = lookup_species(s.species, s.qubit.species_name, "qubit.species");
    s.qubit.upper = parse_state(ini.get_string("qubit", "upper", "2,2"), "qubit.upper");
    s.qubit.lower = parse_state(ini.get_string("qubit", "lower", "1,1"), "qubit.lower");
    if (!hyperfine::is_valid_state(s.qubit.species, s.qubit.upper))
        throw ConfigError("qubit.upper", "state not allowed for species '" + s.qubit.species_name + "'");
    if (!hyperfine::is_valid_state(s.qubit.species, s.qubit.lower))
        throw ConfigError("qubit.lower", "state not allowed for species '" + s.qubit.species_name + "'");

    s.field.b_gauss = non_negative(ini, "field", "b_gauss", 0.0);
    if (!ini.has("field", "b_gauss")) throw ConfigError("field.b_gauss", "missing required key");
    s.field.gradient_gauss_per_cm = positive(ini, "field", "gradient_gauss_per_cm", 1000.0);
    s.field.lattice_spacing_m = positive(ini, "field", "lattice_spacing_m", 500e-9);
    s.field.resonance_width_gauss = positive(ini, "field", "resonance_width_gauss", 5.0);

    s.levels.b_min_gauss = non_negative(ini, "levels", "b_min_gauss", 0.0);
    s.levels.b_max_gauss = non_negative(ini, "levels", "b_max_gauss", 1000.0);
    s.levels.count = ini.get_long("levels", "count", 101);
    if (s.levels.count < 1) throw ConfigError("levels.count", "must be at least 1");
    if (s.levels.count > 1 && !(s.levels.b_max_gauss > s.levels.b_min_gauss))
        throw ConfigError("levels.b_max_gauss", "must exceed levels.b_min_gauss");

    for (const auto& name : ini.keys("channels")) {
        const std::string key = qualified("channels", name);
        const auto atoms = split(ini.get_string("channels", name), '+');
        if (atoms.size() != 2) throw ConfigError(key, "expected `<species> <F>,<m> + <species> <F>,<m>`");
        s.channels.push_back({name, {parse_atom(s.species, atoms[0], key), parse_atom(s.species, atoms[1], key)}});
    }

    auto& lp = s.pulse.lambda;
    lp.omega_p = positive(ini, "pulse", "omega_p_rad_s");
    lp.omega_s = positive(ini, "pulse", "omega_s_rad_s");
    lp.delta_e = positive(ini, "pulse", "delta_e_rad_s");
    lp.delta = ini.get_double("pulse", "delta_rad_s", 0.0);
    lp.gamma_e = non_negative(ini, "pulse", "gamma_e_rad_s", 0.0);
    lp.stark_compensated = ini.get_bool("pulse", "stark_compensated", true);
    s.pulse.step_safety = positive(ini, "pulse", "step_safety", 0.01);
    if (s.pulse.step_safety > 0.05) throw ConfigError("pulse.step_safety", "must not exceed 0.05");

    s.dipole.mu_permanent_debye = positive(ini, "dipole", "permanent_debye");
    s.dipole.rotational_const_hz = positive(ini, "dipole", "rotational_constant_hz");
    s.dipole.separation_m = positive(ini, "dipole", "separation_m");
    s.dipole.fopa_enhancement = ini.get_double("dipole", "fopa_enhancement", 1.0);
    if (!(s.dipole.fopa_enhancement >= 1.0)) throw ConfigError("dipole.fopa_enhancement", "must be >= 1");
    const bool has_field = ini.has("dipole", "e_dc_v_per_m");
    const bool has_pol = ini.has("dipole", "polarization");
    if (has_field == has_pol)
        throw ConfigError("dipole.e_dc_v_per_m", "give exactly one of e_dc_v_per_m or polarization");
    if (has_field) {
        s.dipole.e_dc_v_per_m = positive(ini, "dipole", "e_dc_v_per_m");
    } else {
        const double pol = positive(ini, "dipole", "polarization");
        s.dipole.e_dc_v_per_m = pol * 3.0 * constants::planck * s.dipole.rotational_const_hz /
                                constants::debye_to_si(s.dipole.mu_permanent_debye);
    }
    lp = dynamics::with_fopa_enhancement(lp, s.dipole.fopa_enhancement);

    s.stirap.peak_rad_s = positive(ini, "stirap", "peak_rad_s", 1e6);
    s.stirap.rms_s = positive(ini, "stirap", "rms_s", 30e-6);
    s.stirap.stokes_lead_s = ini.get_double("stirap", "stokes_lead_s", 30e-6);
    s.stirap.detunings.delta_e = ini.get_double("stirap", "delta_e_rad_s", 0.0);
    s.stirap.detunings.delta = ini.get_double("stirap", "delta_rad_s", 0.0);
    s.stirap.detunings.gamma_e = non_negative(ini, "stirap", "gamma_e_rad_s", 0.0);
    s.stirap.detunings.stark_compensated = ini.get_bool("stirap", "stark_compensated", true);
    s.stirap.scan_min_scale = positive(ini, "stirap", "scan_min_scale", 0.01);
    if (s.stirap.scan_min_scale >= 1.0) throw ConfigError("stirap.scan_min_scale", "must be below 1");
    s.stirap.scan_count = ini.get_long("stirap", "scan_count", 9);
    if (s.stirap.scan_count < 2) throw ConfigError("stirap.scan_count", "must be at least 2");

    s.gate.enabler_duration_s = non_negative(ini, "gate", "enabler_duration_s", 0.0);
    s.gate.detuning_rad_s = ini.get_double("gate", "detuning_rad_s", 0.0);

    auto& nm = s.noise.model;
    nm.sigma_b_gauss = non_negative(ini, "noise", "sigma_b_gauss", 0.0);
    nm.gamma_inelastic = non_negative(ini, "noise", "gamma_inelastic_per_s", 0.0);
    nm.trap_frequency_hz = positive(ini, "noise", "trap_frequency_hz");
    nm.seed = s.seed;
    auto& bo = s.noise.options;
    bo.rotation_duration = positive(ini, "noise", "rotation_duration_s", 30e-6);
    bo.adiabatic_periods = positive(ini, "noise", "adiabatic_periods", budget::kDefaultAdiabaticPeriods);
    bo.readout_selectivity = positive(ini, "noise", "readout_selectivity", 1.0);
    const std::string def = ini.get_string("noise", "dephasing_definition", "two_pi_rms");
    if (def == "two_pi_rms")
        bo.definition = budget::DephasingDefinition::TwoPiRms;
    else if (def == "inverse_rms")
        bo.definition = budget::DephasingDefinition::InverseRms;
    else
        throw ConfigError("noise.dephasing_definition", "expected two_pi_rms or inverse_rms, got '" + def + "'");
    s.noise.readout_splitting_hz = positive(ini, "noise", "readout_splitting_hz", 1e3);
    const long samples = ini.get_long("noise", "mc_samples", 100000);
    if (samples < 1000) throw ConfigError("noise.mc_samples", "must be at least 1000");
    s.noise.mc_samples = static_cast<std::size_t>(samples);
    s.noise.loss_reference_time_s = positive(ini, "noise", "loss_reference_time_s", 20e-6);

    if (ini.has_section("sweep")) {
        s.sweep.present = true;
        const std::string param = ini.get_string("sweep", "parameter");
        const auto dot = param.find('.');
        if (dot == std::string::npos) throw ConfigError("sweep.parameter", "expected `<section>.<key>`");
        s.sweep.section = param.substr(0, dot);
        s.sweep.key = param.substr(dot + 1);
        if (!ini.has(s.sweep.section, s.sweep.key) || !parse_double(*ini.raw(s.sweep.section, s.sweep.key)))
            throw ConfigError("sweep.parameter", "'" + param + "' is not a numeric key of this config");
        s.sweep.min = ini.get_double("sweep", "min");
        s.sweep.max = ini.get_double("sweep", "max");
        if (!(s.sweep.max > s.sweep.min)) throw ConfigError("sweep.max", "must exceed sweep.min");
        s.sweep.count = ini.get_long("sweep", "count");
        if (s.sweep.count < 2) throw ConfigError("sweep.count", "must be at least 2");
        for (const auto& q : split(ini.get_string("sweep", "quantities"), ','))
            if (!q.empty()) s.sweep.quantities.push_back(q);
        if (s.sweep.quantities.empty()) throw ConfigError("sweep.quantities", "list at least one quantity");
    }

    ini.reject_unused();

    // Values that are individually in range but jointly unusable.
    try {
        (void)s.omega_dd();
    } catch (const DomainError& e) {
        throw ConfigError("dipole", e.what());
    }
    if (!(3.0 * s.omega_dd() / (4.0 * s.omega_r()) < 1.0))
        throw ConfigError("pulse", "Raman pulses too slow for the dipole-dipole rate (3 omega_dd / 4 Omega_R >= 1)");
    return s;
}

} // namespace hybridgate::cli
