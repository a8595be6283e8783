#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string_view>
#include <thread>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "hybridgate/constants.hpp"
#include "hybridgate/errors.hpp"

namespace hybridgate::cli {

namespace {

using hyperfine::HyperfineState;

// Paper anchors used by paper-repro.
constexpr double kPaperTransitionHz = 8.3e9;
constexpr double kPaperSensitivityHzPerG = 2.38e6;
constexpr double kPaperPiPulseS = 3e-6;
constexpr double kPaperInteractionTimeS = 14e-6;
constexpr double kPaperOperations = 10;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("--config", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void apply_overrides(Scenario& s, const RunRequest& r) {
    if (r.seed) {
        s.seed = *r.seed;
        s.noise.model.seed = *r.seed;
    }
    if (r.mode) {
        if (*r.mode == "paper")
            s.mode = hyperfine::BreitRabiMode::Paper;
        else if (*r.mode == "standard")
            s.mode = hyperfine::BreitRabiMode::Standard;
        else
            throw ConfigError("--mode", "expected paper or standard, got '" + *r.mode + "'");
    }
}

std::string mode_name(hyperfine::BreitRabiMode m) {
    return m == hyperfine::BreitRabiMode::Paper ? "paper" : "standard";
}

std::string state_tag(const HyperfineState& st) {
    return fmt::format("f{}_m{}{}", st.f, st.m < 0 ? "m" : "", std::abs(st.m));
}

std::vector<double> linspace(double a, double b, long n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = (n == 1) ? a : (i == n - 1 ? b : a + (b - a) * i / double(n - 1));
    return out;
}

std::vector<double> logspace(double a, double b, long n) {
    auto e = linspace(std::log10(a), std::log10(b), n);
    for (auto& v : e) v = std::pow(10.0, v);
    e.back() = b;
    return e;
}

// ---- physics shared by several subcommands -------------------------------

double qubit_transition(const Scenario& s, double b) {
    return hyperfine::transition_frequency(s.qubit.species, s.qubit.upper, s.qubit.lower, b, s.mode);
}

double qubit_sensitivity(const Scenario& s, double b) {
    return hyperfine::field_sensitivity(s.qubit.species, s.qubit.upper, s.qubit.lower, b, s.mode);
}

double spacing_cm(const Scenario& s) { return s.field.lattice_spacing_m * 100.0; }

double site_resolution(const Scenario& s) {
    return hyperfine::site_frequency_resolution(qubit_sensitivity(s, s.field.b_gauss), s.field.gradient_gauss_per_cm,
                                                spacing_cm(s));
}

long site_count(const Scenario& s) {
    return hyperfine::resonance_site_count(s.field.resonance_width_gauss, s.field.gradient_gauss_per_cm,
                                           spacing_cm(s));
}

gate::GateSchedule gate_schedule(const Scenario& s, const dynamics::TwoLevelParams& pulse,
                                 double interaction_time = std::numeric_limits<double>::quiet_NaN()) {
    gate::ScheduleOptions opt;
    opt.enabler_duration = s.gate.enabler_duration_s;
    opt.separation_m = s.dipole.separation_m;
    opt.interaction_time = interaction_time;
    return gate::make_phase_gate_schedule(s.omega_dd(), pulse, opt);
}

gate::GateSchedule gate_schedule(const Scenario& s) { return gate_schedule(s, s.gate_pulse()); }

double gate_phase(const Scenario& s) { return gate::accumulated_phase_numeric(s.omega_dd(), gate_schedule(s)).total; }

double fidelity_for_phase(double phi) {
    return gate::gate_fidelity(gate::build_phase_gate(phi), gate::build_phase_gate(constants::pi));
}

dynamics::SimulationOptions sim_options(const Scenario& s) {
    dynamics::SimulationOptions o;
    o.step_safety = s.pulse.step_safety;
    return o;
}

double raman_duration(const Scenario& s) {
    return dynamics::pi_pulse_duration({s.omega_r(), s.pulse.lambda.delta});
}

dynamics::EliminationComparison elimination(const Scenario& s, const dynamics::LambdaParams& p) {
    return dynamics::compare_with_two_level(p, dynamics::pi_pulse_duration({dynamics::effective_rabi(p).omega_r, p.delta}),
                                            sim_options(s));
}

// Delta_e x10 with both Rabi frequencies x sqrt(10): same Omega_R.
dynamics::LambdaParams detuned_further(dynamics::LambdaParams p) {
    p.delta_e *= 10.0;
    p.omega_p *= std::sqrt(10.0);
    p.omega_s *= std::sqrt(10.0);
    return p;
}

struct StirapPair {
    dynamics::PulseEnvelope pump;
    dynamics::PulseEnvelope stokes;
};

StirapPair stirap_pulses(const Scenario& s, double scale, bool reversed) {
    const double lead = reversed ? -s.stirap.stokes_lead_s : s.stirap.stokes_lead_s;
    const double peak = s.stirap.peak_rad_s * scale;
    return {dynamics::PulseEnvelope::gaussian_centered(peak, 0.5 * lead, s.stirap.rms_s),
            dynamics::PulseEnvelope::gaussian_centered(peak, -0.5 * lead, s.stirap.rms_s)};
}

dynamics::StirapResult run_stirap(const Scenario& s, double scale, bool reversed) {
    const auto p = stirap_pulses(s, scale, reversed);
    return dynamics::simulate_stirap(p.pump, p.stokes, s.stirap.detunings, sim_options(s));
}

double dephasing(const Scenario& s) {
    return budget::dephasing_time(qubit_sensitivity(s, s.field.b_gauss), s.noise.model.sigma_b_gauss,
                                  s.noise.options.definition);
}

double ramsey_at(const Scenario& s, double t) {
    return budget::ramsey_contrast_mc(qubit_sensitivity(s, s.field.b_gauss), s.noise.model.sigma_b_gauss, t,
                                      s.noise.mc_samples, s.seed);
}

budget::BudgetReport budget_report(const Scenario& s) {
    return budget::assemble_budget(s.noise.model, qubit_sensitivity(s, s.field.b_gauss), gate_schedule(s),
                                   s.noise.readout_splitting_hz, s.noise.options);
}

double as_double(long v) {
    return v == budget::kUnboundedOperations ? std::numeric_limits<double>::infinity() : static_cast<double>(v);
}

// ---- subcommands ---------------------------------------------------------

// Adds the named subset of paper_checks to a subcommand report.
void attach_checks(Json& j, const Scenario& s, std::initializer_list<std::string_view> names) {
    Json arr = Json::array();
    for (const auto& c : paper_checks(s))
        if (std::find(names.begin(), names.end(), c.name) != names.end()) arr.push_back(c.to_json());
    j["checks"] = arr;
}

void cmd_levels(const Scenario& s, const OutputContext& ctx, std::ostream& out) {
    const auto grid = linspace(s.levels.b_min_gauss, s.levels.b_max_gauss, s.levels.count);

    std::vector<std::string> header{"b_gauss"};
    std::vector<std::pair<std::string, std::pair<hyperfine::AtomSpecies, HyperfineState>>> levels;
    for (const auto& [id, sp] : s.species)
        for (const auto& st : hyperfine::all_states(sp)) {
            const std::string tag = id + "_" + state_tag(st);
            levels.push_back({tag, {sp, st}});
            header.push_back("energy_" + tag + "_hz");
        }
    header.push_back("qubit_splitting_hz");
    header.push_back("field_sensitivity_hz_per_g");

    CsvTable table(header);
    std::vector<std::vector<double>> energy(levels.size());
    std::vector<double> splitting, sensitivity;
    for (double b : grid) {
        std::vector<Cell> row{b};
        for (std::size_t k = 0; k < levels.size(); ++k) {
            const double e = hyperfine::breit_rabi_energy(levels[k].second.first, levels[k].second.second, b, s.mode);
            energy[k].push_back(e);
            row.push_back(e);
        }
        splitting.push_back(qubit_transition(s, b));
        sensitivity.push_back(qubit_sensitivity(s, b));
        row.push_back(splitting.back());
        row.push_back(sensitivity.back());
        table.add_row(std::move(row));
    }
    write_csv(ctx, "levels_table.csv", table);
    for (std::size_t k = 0; k < levels.size(); ++k)
        write_curve(ctx, "levels", "energy_" + levels[k].first + "_hz", "b_gauss", grid, energy[k]);
    write_curve(ctx, "levels", "qubit_splitting_hz", "b_gauss", grid, splitting);
    write_curve(ctx, "levels", "field_sensitivity_hz_per_g", "b_gauss", grid, sensitivity);

    CsvTable channels({"channel", "states", "m_total", "energy_hz", "open_decay_channels", "lowest_product"});
    for (const auto& nc : s.channels) {
        const auto open = hyperfine::open_decay_channels(nc.channel, s.field.b_gauss, s.mode);
        channels.add_row({nc.name, hyperfine::to_string(nc.channel), static_cast<long>(nc.channel.m_total()),
                          hyperfine::channel_energy(nc.channel, s.field.b_gauss, s.mode),
                          static_cast<long>(open.size()),
                          open.empty() ? std::string("none") : hyperfine::to_string(open.front())});
    }
    write_csv(ctx, "levels_channels.csv", channels);

    out << fmt::format("qubit {} {}<->{} at {} G: {:.6e} Hz, sensitivity {:.6e} Hz/G\n", s.qubit.species_name,
                       state_tag(s.qubit.upper), state_tag(s.qubit.lower), s.field.b_gauss,
                       qubit_transition(s, s.field.b_gauss), qubit_sensitivity(s, s.field.b_gauss));
    out << fmt::format("site resolution {:.6e} Hz, {} sites inside the resonance\n", site_resolution(s),
                       site_count(s));
    for (const auto& nc : s.channels) {
        const auto open = hyperfine::open_decay_channels(nc.channel, s.field.b_gauss, s.mode);
        out << fmt::format("channel {} {}: {}\n", nc.name, hyperfine::to_string(nc.channel),
                           open.empty() ? std::string("stable") : fmt::format("{} open", open.size()));
    }
}

void cmd_pulse(const Scenario& s, const OutputContext& ctx, std::ostream& out) {
    const auto& lp = s.pulse.lambda;
    const auto coupling = dynamics::effective_rabi(lp);
    const double duration = raman_duration(s);
    const auto run = dynamics::run_raman_pulse(lp, duration, sim_options(s));
    const dynamics::TwoLevelParams two{coupling.omega_r, lp.delta};

    const auto& tr = run.trajectory;
    std::vector<double> pa, pe, pg, p2;
    CsvTable table({"t_s", "p_a", "p_e", "p_g", "p_g_two_level"});
    for (std::size_t k = 0; k < tr.size(); ++k) {
        pa.push_back(tr.population(k, 0));
        pe.push_back(tr.population(k, 1));
        pg.push_back(tr.population(k, 2));
        p2.push_back(dynamics::two_level_population(two, tr.times[k]));
        table.add_row({tr.times[k], pa.back(), pe.back(), pg.back(), p2.back()});
    }
    write_csv(ctx, "pulse_table.csv", table);
    write_curve(ctx, "pulse", "population_three_level", "t_s", tr.times, pg);
    write_curve(ctx, "pulse", "population_two_level", "t_s", tr.times, p2);
    write_curve(ctx, "pulse", "population_excited", "t_s", tr.times, pe);

    const auto cmp = elimination(s, lp);
    const auto cmp10 = elimination(s, detuned_further(lp));

    Json j = report_header(ctx, "pulse");
    j["omega_r_rad_s"] = coupling.omega_r;
    j["light_shift_pump_rad_s"] = coupling.light_shift_pump;
    j["light_shift_stokes_rad_s"] = coupling.light_shift_stokes;
    j["pulse_duration_s"] = duration;
    j["integration_steps"] = run.steps;
    j["final_p_a"] = run.final.p_a;
    j["final_p_e"] = run.final.p_e;
    j["final_p_g"] = run.final.p_g;
    j["final_p_g_two_level"] = cmp.two_level_final;
    j["elimination_final_abs_diff"] = cmp.final_abs_diff;
    j["elimination_max_abs_diff"] = cmp.max_abs_diff;
    j["elimination_max_excited"] = cmp.max_excited;
    j["elimination_final_abs_diff_detuning_x10"] = cmp10.final_abs_diff;
    j["elimination_improvement_detuning_x10"] = number(cmp.final_abs_diff / cmp10.final_abs_diff);
    attach_checks(j, s, {"pi_pulse_duration_s", "elimination_final_abs_diff", "elimination_improvement_detuning_x10"});
    write_json(ctx, "pulse_report.json", j);

    out << fmt::format("Omega_R {:.6e} rad/s, pulse {:.6e} s, P_g three-level {:.9f}, two-level {:.9f}\n",
                       coupling.omega_r, duration, run.final.p_g, cmp.two_level_final);
    out << fmt::format("elimination |dP_g| {:.3e} (max over grid {:.3e}); with Delta_e x10: {:.3e}\n",
                       cmp.final_abs_diff, cmp.max_abs_diff, cmp10.final_abs_diff);
}

void cmd_stirap(const Scenario& s, const OutputContext& ctx, std::ostream& out) {
    const auto counter = run_stirap(s, 1.0, false);
    const auto reversed = run_stirap(s, 1.0, true);

    const auto scales = logspace(s.stirap.scan_min_scale, 1.0, s.stirap.scan_count);
    std::vector<double> area, eff_counter, eff_reversed;
    CsvTable table({"scale", "omega0_t", "efficiency_counterintuitive", "efficiency_intuitive"});
    for (double k : scales) {
        area.push_back(k * s.stirap.peak_rad_s * s.stirap.rms_s);
        eff_counter.push_back(k == 1.0 ? counter.efficiency : run_stirap(s, k, false).efficiency);
        eff_reversed.push_back(k == 1.0 ? reversed.efficiency : run_stirap(s, k, true).efficiency);
        table.add_row({k, area.back(), eff_counter.back(), eff_reversed.back()});
    }
    write_csv(ctx, "stirap_table.csv", table);
    write_curve(ctx, "stirap", "efficiency_counterintuitive", "omega0_t", area, eff_counter);
    write_curve(ctx, "stirap", "efficiency_intuitive", "omega0_t", area, eff_reversed);

    Json j = report_header(ctx, "stirap");
    j["peak_rad_s"] = s.stirap.peak_rad_s;
    j["rms_s"] = s.stirap.rms_s;
    j["omega0_t"] = s.stirap.peak_rad_s * s.stirap.rms_s;
    j["stokes_lead_s"] = s.stirap.stokes_lead_s;
    j["efficiency"] = counter.efficiency;
    j["final_p_a"] = counter.final.p_a;
    j["final_p_e"] = counter.final.p_e;
    j["norm_drift"] = counter.norm_drift;
    j["integration_steps"] = counter.steps;
    j["efficiency_reversed_order"] = reversed.efficiency;
    attach_checks(j, s, {"stirap_efficiency", "stirap_reversed_efficiency", "stirap_norm_drift"});
    write_json(ctx, "stirap_report.json", j);

    out << fmt::format("STIRAP efficiency {:.6f} (reversed order {:.6f}), norm drift {:.2e}, Omega0 T = {:g}\n",
                       counter.efficiency, reversed.efficiency, counter.norm_drift,
                       s.stirap.peak_rad_s * s.stirap.rms_s);
}

void cmd_gate(const Scenario& s, const OutputContext& ctx, std::ostream& out) {
    const auto dip = gate::induced_dipole(s.dipole);
    const double w = s.omega_dd();
    const auto pulse = s.gate_pulse();
    const auto schedule = gate_schedule(s);
    const auto phase = gate::accumulated_phase_numeric(w, schedule);
    const auto breakdown = gate::schedule_total_duration(schedule);
    const double tau = gate::interaction_time_for_pi(w, pulse.omega_r);
    const double closed = gate::total_phase_closed_form(w, pulse.omega_r, pulse.delta, tau);
    const double tau_cal = gate::calibrated_interaction_time(w, pulse);

    CsvTable steps({"index", "step", "start_s", "duration_s", "phase_rad"});
    double start = 0.0;
    for (std::size_t i = 0; i < schedule.steps().size(); ++i) {
        const auto& st = schedule.steps()[i];
        steps.add_row({static_cast<long>(i), gate::step_name(st), start, gate::step_duration(st), phase.per_step[i]});
        start += gate::step_duration(st);
    }
    write_csv(ctx, "gate_schedule.csv", steps);

    const auto times = linspace(0.0, breakdown.total, 401);
    std::vector<double> phi;
    for (double t : times) phi.push_back(gate::accumulated_phase_numeric(w, schedule, t).total);
    write_curve(ctx, "gate", "phase_rad", "t_s", times, phi);

    Json j = report_header(ctx, "gate");
    j["induced_dipole_debye"] = dip.debye;
    j["polarization"] = dip.polarization;
    j["outside_linear_response"] = dip.outside_linear_response;
    j["separation_m"] = s.dipole.separation_m;
    j["omega_dd_rad_s"] = w;
    j["omega_r_rad_s"] = pulse.omega_r;
    j["detuning_rad_s"] = pulse.delta;
    j["pi_pulse_duration_s"] = dynamics::pi_pulse_duration(pulse);
    j["interaction_time_s"] = tau;
    j["interaction_time_calibrated_s"] = tau_cal;
    j["enabler_time_s"] = breakdown.enabler;
    j["raman_time_s"] = breakdown.raman;
    j["wait_time_s"] = breakdown.wait;
    j["gate_time_s"] = breakdown.gate_time;
    j["total_time_s"] = breakdown.total;
    j["phase_numeric_rad"] = phase.total;
    j["phase_closed_form_rad"] = closed;
    j["phase_closed_form_rel_diff"] = std::abs(closed - phase.total) / phase.total;
    j["fidelity_vs_cz"] = fidelity_for_phase(phase.total);
    attach_checks(j, s, {"omega_dd_rad_s", "single_pulse_phase_rad", "schedule_phase_rad",
                      "closed_form_vs_quadrature_rel_diff", "gate_time_s", "interaction_time_formula_s",
                      "noiseless_fidelity"});
    write_json(ctx, "gate_report.json", j);

    out << fmt::format("omega_dd {:.6e} rad/s, tau_int {:.6e} s, gate time {:.6e} s\n", w, tau, breakdown.gate_time);
    out << fmt::format("phase {:.12f} rad (closed form {:.12f}), fidelity vs CZ {:.12f}\n", phase.total, closed,
                       fidelity_for_phase(phase.total));
}

void cmd_budget(const Scenario& s, const OutputContext& ctx, std::ostream& out) {
    const auto r = budget_report(s);
    const double sens = qubit_sensitivity(s, s.field.b_gauss);

    if (std::isfinite(r.dephasing_time)) {
        const auto times = linspace(0.0, 3.0 * r.dephasing_time, 31);
        std::vector<double> mc, analytic;
        for (double t : times) {
            mc.push_back(ramsey_at(s, t));
            analytic.push_back(budget::ramsey_contrast_analytic(t, r.dephasing_time));
        }
        write_curve(ctx, "budget", "ramsey_contrast_mc", "t_s", times, mc);
        write_curve(ctx, "budget", "ramsey_contrast_analytic", "t_s", times, analytic);
    }

    Json j = report_header(ctx, "budget");
    j["field_sensitivity_hz_per_g"] = sens;
    j["sigma_b_gauss"] = s.noise.model.sigma_b_gauss;
    j["dephasing_time_s"] = number(r.dephasing_time);
    j["gate_time_s"] = r.gate_time;
    j["operations_count"] = r.operations_count == budget::kUnboundedOperations ? Json(nullptr) : Json(r.operations_count);
    j["loss_probability"] = r.loss_probability;
    j["loss_probability_reference_time"] =
        budget::inelastic_loss_probability(s.noise.model.gamma_inelastic, s.noise.loss_reference_time_s);
    j["loss_reference_time_s"] = s.noise.loss_reference_time_s;
    j["adiabaticity_ok"] = r.adiabaticity_ok;
    j["adiabaticity_margin"] = r.adiabaticity_margin;
    j["readout_min_duration_s"] = r.readout_min_duration;
    j["ramsey_contrast_mc_at_t_phi"] = std::isfinite(r.dephasing_time) ? Json(ramsey_at(s, r.dephasing_time)) : Json(1.0);
    attach_checks(j, s, {"dephasing_time_s", "ramsey_contrast_at_t_phi", "loss_probability_reference_time",
                      "operations_count"});
    write_json(ctx, "budget_report.json", j);

    out << fmt::format("T_phi {:.6e} s, gate {:.6e} s, n = {}, loss per gate {:.6f}, adiabatic {} (margin {:g}), "
                       "readout {:.3e} s\n",
                       r.dephasing_time, r.gate_time,
                       r.operations_count == budget::kUnboundedOperations ? std::string("unbounded")
                                                                          : std::to_string(r.operations_count),
                       r.loss_probability, r.adiabaticity_ok ? "yes" : "no", r.adiabaticity_margin,
                       r.readout_min_duration);
}

std::string snake(const std::string& s) {
    std::string out;
    for (char c : s) out += (c == '.' || c == ' ' || c == '-') ? '_' : static_cast<char>(std::tolower(c));
    return out;
}

void cmd_sweep(const Ini& ini, const Scenario& s, const RunRequest& req, const OutputContext& ctx,
               std::ostream& out) {
    if (!s.sweep.present) throw ConfigError("sweep", "missing [sweep] section");
    std::vector<const Quantity*> qs;
    for (const auto& name : s.sweep.quantities) {
        const auto& all = sweep_quantities();
        const auto it = std::find_if(all.begin(), all.end(), [&](const Quantity& q) { return q.name == name; });
        if (it == all.end()) throw ConfigError("sweep.quantities", "unknown quantity '" + name + "'");
        qs.push_back(&*it);
    }

    const auto xs = linspace(s.sweep.min, s.sweep.max, s.sweep.count);
    const std::size_t n = xs.size();
    std::vector<std::vector<double>> values(n);
    std::vector<std::exception_ptr> errors(n);

    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < n; i += stride) {
            try {
                Ini point = ini;
                point.set(s.sweep.section, s.sweep.key, fmt::format("{:.17g}", xs[i]));
                Scenario ps = load_scenario(point);
                apply_overrides(ps, req);
                for (const auto* q : qs) values[i].push_back(q->eval(ps));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, n);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work, w, workers);
        work(0, workers);
    }
    for (std::size_t i = 0; i < n; ++i)
        if (errors[i]) {
            try {
                std::rethrow_exception(errors[i]);
            } catch (const ConfigError& e) {
                throw ConfigError(e.key(), fmt::format("sweep point {} ({} = {:g}): {}", i,
                                                       qualified(s.sweep.section, s.sweep.key), xs[i],
                                                       std::string(e.what()).substr(e.key().size() + 2)));
            }
        }

    const std::string xname = snake(s.sweep.section + "_" + s.sweep.key);
    std::vector<std::string> header{xname};
    for (const auto* q : qs) header.push_back(q->name);
    CsvTable table(header);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Cell> row{xs[i]};
        for (double v : values[i]) row.push_back(v);
        table.add_row(std::move(row));
    }
    write_csv(ctx, "sweep_table.csv", table);
    for (std::size_t k = 0; k < qs.size(); ++k) {
        std::vector<double> y;
        for (std::size_t i = 0; i < n; ++i) y.push_back(values[i][k]);
        write_curve(ctx, "sweep", qs[k]->name, xname, xs, y);
    }
    out << fmt::format("swept {} over {} points: {}\n", qualified(s.sweep.section, s.sweep.key), n,
                       fmt::join(s.sweep.quantities, ", "));
}

void cmd_paper_repro(const Scenario& s, const OutputContext& ctx, std::ostream& out) {
    Json scalars;
    const auto checks = paper_checks(s, &scalars);
    Json j = report_header(ctx, "paper-repro");
    for (const auto& [k, v] : scalars.items()) j[k] = v;
    Json arr = Json::array();
    std::size_t passed = 0;
    for (const auto& c : checks) {
        arr.push_back(c.to_json());
        if (c.pass()) ++passed;
    }
    j["checks_passed"] = passed;
    j["checks_total"] = checks.size();
    j["checks"] = arr;
    write_json(ctx, "paper_repro.json", j);

    for (const auto& c : checks)
        out << fmt::format("{:<4} {:<42} {:.6e} (expected {:.6e})\n", c.pass() ? "PASS" : "FAIL", c.name, c.value,
                           c.expected);
    out << fmt::format("{}/{} checks pass\n", passed, checks.size());
}

OutputContext make_context(const RunRequest& req, const std::string& raw, const Scenario& s) {
    OutputContext ctx;
    if (req.out_dir) {
        ctx.dir = *req.out_dir;
    } else if (const char* env = std::getenv("HYBRIDGATE_OUT"); env && *env) {
        ctx.dir = env;
    } else {
        ctx.dir = ".";
    }
    ctx.config_hash = fnv1a_hex(raw);
    ctx.seed = s.seed;
    ctx.mode = mode_name(s.mode);
    return ctx;
}

} // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{"levels", "pulse", "stirap", "gate", "budget", "sweep", "paper-repro"};
    return names;
}

Scenario load_scenario_file(const std::string& path, const RunRequest& request, std::string* raw_text) {
    const std::string raw = read_file(path);
    Scenario s = load_scenario(Ini::parse(raw));
    apply_overrides(s, request);
    if (raw_text) *raw_text = raw;
    return s;
}

const std::vector<Quantity>& sweep_quantities() {
    static const std::vector<Quantity> q{
        {"qubit_transition_hz", [](const Scenario& s) { return qubit_transition(s, s.field.b_gauss); }},
        {"field_sensitivity_hz_per_g", [](const Scenario& s) { return qubit_sensitivity(s, s.field.b_gauss); }},
        {"site_resolution_hz", site_resolution},
        {"resonance_site_count", [](const Scenario& s) { return static_cast<double>(site_count(s)); }},
        {"omega_r_rad_s", [](const Scenario& s) { return s.omega_r(); }},
        {"pi_pulse_duration_s", [](const Scenario& s) { return dynamics::pi_pulse_duration(s.gate_pulse()); }},
        {"induced_dipole_debye", [](const Scenario& s) { return gate::induced_dipole(s.dipole).debye; }},
        {"omega_dd_rad_s", [](const Scenario& s) { return s.omega_dd(); }},
        {"interaction_time_s",
         [](const Scenario& s) { return gate::interaction_time_for_pi(s.omega_dd(), s.omega_r()); }},
        {"gate_time_s", [](const Scenario& s) { return gate::schedule_total_duration(gate_schedule(s)).gate_time; }},
        {"gate_phase_rad", gate_phase},
        {"gate_phase_closed_form_rad",
         [](const Scenario& s) {
             const double w = s.omega_dd();
             return gate::total_phase_closed_form(w, s.omega_r(), s.gate.detuning_rad_s,
                                                  gate::interaction_time_for_pi(w, s.omega_r()));
         }},
        {"gate_fidelity", [](const Scenario& s) { return fidelity_for_phase(gate_phase(s)); }},
        {"elimination_final_abs_diff",
         [](const Scenario& s) { return elimination(s, s.pulse.lambda).final_abs_diff; }},
        {"stirap_efficiency", [](const Scenario& s) { return run_stirap(s, 1.0, false).efficiency; }},
        {"dephasing_time_s", dephasing},
        {"ramsey_contrast_at_t_phi",
         [](const Scenario& s) {
             const double t = dephasing(s);
             return std::isfinite(t) ? ramsey_at(s, t) : 1.0;
         }},
        {"operations_count", [](const Scenario& s) { return as_double(budget_report(s).operations_count); }},
        {"loss_probability", [](const Scenario& s) { return budget_report(s).loss_probability; }},
    };
    return q;
}

std::vector<Check> paper_checks(const Scenario& s, Json* scalars) {
    using K = Check::Kind;
    std::vector<Check> c;
    Json j;
    const double b = s.field.b_gauss;
    const std::string tag = fmt::format("{:g}G", b);

    // Hyperfine structure and addressing.
    const double transition = qubit_transition(s, b);
    const double sens = qubit_sensitivity(s, b);
    const double h = 1e-3;
    const double fd = (qubit_transition(s, b + h) - qubit_transition(s, b - h)) / (2.0 * h);
    const double resolution = site_resolution(s);
    const long sites = site_count(s);
    j["transition_" + tag] = transition;
    j["field_sensitivity_" + tag] = sens;
    j["site_resolution_hz"] = resolution;
    j["resonance_site_count"] = sites;
    c.push_back({"transition_" + tag, transition, kPaperTransitionHz, 0.01 * kPaperTransitionHz});
    c.push_back({"field_sensitivity_" + tag, sens, kPaperSensitivityHzPerG, 0.03 * kPaperSensitivityHzPerG});
    c.push_back({"field_sensitivity_fd_rel_diff", std::abs(sens - fd) / sens, 1e-6, 0.0, K::AtMost});
    c.push_back({"site_resolution_hz", resolution, 115e3, 15e3});
    c.push_back({"resonance_site_count", static_cast<double>(sites), 100.0, 0.0});

    // Interaction and pulses.
    const double w = s.omega_dd();
    const double omega_r = s.omega_r();
    const dynamics::TwoLevelParams resonant{omega_r, 0.0};
    const double t_pi = dynamics::pi_pulse_duration(resonant);
    j["induced_dipole_debye"] = gate::induced_dipole(s.dipole).debye;
    j["omega_dd_rad_s"] = w;
    j["omega_r_rad_s"] = omega_r;
    j["pi_pulse_duration_s"] = t_pi;
    c.push_back({"omega_dd_rad_s", w, 1.35e5, 0.15e5});
    c.push_back({"pi_pulse_duration_s", t_pi, kPaperPiPulseS, 0.1 * kPaperPiPulseS});

    // Phase bookkeeping.
    const double single =
        gate::accumulated_phase_numeric(w, gate::GateSchedule({gate::RamanDown{resonant, t_pi}})).total;
    const double single_expected = w * 3.0 * constants::pi / (8.0 * omega_r);
    const auto schedule = gate_schedule(s, resonant);
    const double phi = gate::accumulated_phase_numeric(w, schedule).total;
    const double tau = gate::interaction_time_for_pi(w, omega_r);
    const dynamics::TwoLevelParams detuned{omega_r, w};
    const double phi_detuned = gate::accumulated_phase_numeric(w, gate_schedule(s, detuned)).total;
    const double closed_detuned = gate::total_phase_closed_form(w, omega_r, w, tau);
    const double closed_rel = std::abs(closed_detuned - phi_detuned) / std::abs(phi_detuned);
    j["single_pulse_phase_rad"] = single;
    j["schedule_phase_rad"] = phi;
    j["detuned_schedule_phase_rad"] = phi_detuned;
    j["detuned_closed_form_phase_rad"] = closed_detuned;
    c.push_back({"single_pulse_phase_rad", single, single_expected, 1e-6 * single_expected});
    c.push_back({"schedule_phase_rad", phi, constants::pi, 1e-4});
    c.push_back({"closed_form_vs_quadrature_rel_diff", closed_rel, 0.01, 0.0, K::AtMost});

    // Gate time and the interaction-time discrepancy.
    const auto breakdown = gate::schedule_total_duration(schedule);
    j["interaction_time_s"] = tau;
    j["interaction_time_paper_s"] = kPaperInteractionTimeS;
    j["interaction_time_matches_paper"] = std::abs(tau - kPaperInteractionTimeS) <= 0.25 * kPaperInteractionTimeS;
    j["gate_time_s"] = breakdown.gate_time;
    c.push_back({"gate_time_s", breakdown.gate_time, 25e-6, 10e-6});
    c.push_back({"interaction_time_formula_s", tau, 26e-6, 5e-6});

    const double fidelity = fidelity_for_phase(phi);
    j["noiseless_fidelity"] = fidelity;
    c.push_back({"noiseless_fidelity", fidelity, 1.0 - 1e-6, 0.0, K::AtLeast});

    // Three-level dynamics.
    const auto elim = elimination(s, s.pulse.lambda);
    const auto elim10 = elimination(s, detuned_further(s.pulse.lambda));
    const double improvement = elim.final_abs_diff / elim10.final_abs_diff;
    j["elimination_final_abs_diff"] = elim.final_abs_diff;
    j["elimination_improvement_detuning_x10"] = number(improvement);
    c.push_back({"elimination_final_abs_diff", elim.final_abs_diff, 0.01, 0.0, K::AtMost});
    c.push_back({"elimination_improvement_detuning_x10", improvement, 5.0, 0.0, K::AtLeast});

    const auto counter = run_stirap(s, 1.0, false);
    const auto reversed = run_stirap(s, 1.0, true);
    j["stirap_omega0_t"] = s.stirap.peak_rad_s * s.stirap.rms_s;
    j["stirap_efficiency"] = counter.efficiency;
    j["stirap_efficiency_reversed"] = reversed.efficiency;
    j["stirap_norm_drift"] = counter.norm_drift;
    c.push_back({"stirap_efficiency", counter.efficiency, 0.99, 0.0, K::Above});
    c.push_back({"stirap_reversed_efficiency", reversed.efficiency, counter.efficiency, 0.0, K::Below});
    c.push_back({"stirap_norm_drift", counter.norm_drift, 1e-9, 0.0, K::Below});

    // Decoherence budget.
    const double t_phi = dephasing(s);
    const double contrast = std::isfinite(t_phi) ? ramsey_at(s, t_phi) : 1.0;
    const double loss = budget::inelastic_loss_probability(s.noise.model.gamma_inelastic, s.noise.loss_reference_time_s);
    const auto report = budget_report(s);
    j["dephasing_time_s"] = number(t_phi);
    j["ramsey_contrast_at_t_phi"] = contrast;
    j["loss_probability_reference_time"] = loss;
    j["loss_probability_per_gate"] = report.loss_probability;
    j["operations_count"] = report.operations_count == budget::kUnboundedOperations ? Json(nullptr)
                                                                                    : Json(report.operations_count);
    j["adiabaticity_ok"] = report.adiabaticity_ok;
    j["readout_min_duration_s"] = report.readout_min_duration;
    c.push_back({"dephasing_time_s", t_phi, 215e-6, 35e-6});
    c.push_back({"ramsey_contrast_at_t_phi", contrast, 0.6065, 0.01});
    c.push_back({"loss_probability_reference_time", loss, 0.8647, 1e-4});
    c.push_back({"operations_count", as_double(report.operations_count), kPaperOperations, 2.0});

    // Collision channels.
    const auto q = hyperfine::rb_li_qubit_channels();
    const auto open_one = hyperfine::open_decay_channels(q.one, b, s.mode);
    const auto open_enabled_zero = hyperfine::open_decay_channels(q.enabled_zero, b, s.mode);
    const auto open_enabled_one = hyperfine::open_decay_channels(q.enabled_one, b, s.mode);
    const hyperfine::HyperfineChannel named{{hyperfine::rb87(), {1, 1}}, {hyperfine::li7(), {2, 2}}};
    const bool named_found = std::any_of(open_enabled_one.begin(), open_enabled_one.end(),
                                         [&](const hyperfine::HyperfineChannel& ch) { return ch.same_as(named); });
    j["open_channels_rb22_li22"] = open_one.size();
    j["open_channels_rb11_li11"] = open_enabled_zero.size();
    j["open_channels_rb22_li11"] = open_enabled_one.size();
    c.push_back({"open_channels_rb22_li22", static_cast<double>(open_one.size()), 0.0, 0.0});
    c.push_back({"open_channels_rb11_li11", static_cast<double>(open_enabled_zero.size()), 0.0, 0.0});
    c.push_back({"decay_rb22_li11_to_rb11_li22", named_found ? 1.0 : 0.0, 1.0, 0.0});

    if (scalars) *scalars = std::move(j);
    return c;
}

int run(const RunRequest& request, std::ostream& out, std::ostream& err) {
    try {
        const auto& names = subcommands();
        if (std::find(names.begin(), names.end(), request.subcommand) == names.end())
            throw ConfigError("subcommand", "unknown subcommand '" + request.subcommand + "'");
        const std::string raw = read_file(request.config_path);
        const Ini ini = Ini::parse(raw);
        Scenario s = load_scenario(ini);
        apply_overrides(s, request);
        const OutputContext ctx = make_context(request, raw, s);

        if (request.subcommand == "levels") cmd_levels(s, ctx, out);
        else if (request.subcommand == "pulse") cmd_pulse(s, ctx, out);
        else if (request.subcommand == "stirap") cmd_stirap(s, ctx, out);
        else if (request.subcommand == "gate") cmd_gate(s, ctx, out);
        else if (request.subcommand == "budget") cmd_budget(s, ctx, out);
        else if (request.subcommand == "sweep") cmd_sweep(ini, s, request, ctx, out);
        else cmd_paper_repro(s, ctx, out);
        return kExitOk;
    } catch (...) {
        return exit_code_for(std::current_exception(), err);
    }
}

int exit_code_for(std::exception_ptr error, std::ostream& err) {
    try {
        std::rethrow_exception(error);
    } catch (const ConfigError& e) {
        err << "hybridgate: configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericalConfigError& e) {
        err << "hybridgate: numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const NumericalFailure& e) {
        err << "hybridgate: numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const DomainError& e) {
        // Config values that pass their own range checks but violate a
        // physics precondition downstream.
        err << "hybridgate: configuration error: " << e.what() << "\n";
        return kExitConfig;
    }
}

} // namespace hybridgate::cli
