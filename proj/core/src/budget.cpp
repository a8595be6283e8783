#include "hybridgate/budget.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "hybridgate/constants.hpp"
#include "hybridgate/errors.hpp"

namespace hybridgate::budget {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Uniform in (0, 1].
double to_unit(std::uint64_t bits) { return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53; }

// Ratios within 1e-12 of an integer count as that integer.
long floor_ratio(double num, double den) { return static_cast<long>(std::floor(num / den * (1.0 + 1e-12))); }

} // namespace

void NoiseModel::validate() const {
    if (!(sigma_b_gauss >= 0.0)) throw DomainError("sigma_B must be non-negative");
    if (!(gamma_inelastic >= 0.0)) throw DomainError("inelastic rate must be non-negative");
    if (!(trap_frequency_hz > 0.0)) throw DomainError("trap frequency must be positive");
}

double dephasing_time(double sensitivity, double sigma_b, DephasingDefinition definition) {
    if (!(sensitivity > 0.0)) throw DomainError("field sensitivity must be positive");
    if (sigma_b < 0.0) throw DomainError("sigma_B must be non-negative");
    if (sigma_b == 0.0) return std::numeric_limits<double>::infinity();
    const double rms_hz = sensitivity * sigma_b;
    switch (definition) {
    case DephasingDefinition::TwoPiRms:
        return 1.0 / (constants::two_pi * rms_hz);
    case DephasingDefinition::InverseRms:
        return 1.0 / rms_hz;
    }
    throw DomainError("unknown dephasing definition");
}

double ramsey_contrast_analytic(double t, double t_phi) {
    if (std::isinf(t_phi)) return 1.0;
    const double u = t / t_phi;
    return std::exp(-0.5 * u * u);
}

double counter_normal(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t key = splitmix64(seed ^ splitmix64(index));
    const double u1 = to_unit(splitmix64(key));
    const double u2 = to_unit(splitmix64(key + 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(constants::two_pi * u2);
}

double ramsey_contrast_mc(double sensitivity, double sigma_b, double t, std::size_t n_samples, std::uint64_t seed,
                          unsigned workers) {
    if (n_samples < 1000) throw DomainError("Ramsey Monte Carlo needs at least 1000 samples");
    if (t == 0.0) return 1.0;

    const double scale = constants::two_pi * sensitivity * sigma_b * t;
    std::vector<double> re(n_samples), im(n_samples);
    auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const double phase = scale * counter_normal(seed, k);
            re[k] = std::cos(phase);
            im[k] = std::sin(phase);
        }
    };

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_samples));
    if (workers <= 1) {
        fill(0, n_samples);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (n_samples + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(n_samples, begin + chunk);
            if (begin < end) pool.emplace_back(fill, begin, end);
        }
    }

    double sum_re = 0.0, sum_im = 0.0;
    for (std::size_t k = 0; k < n_samples; ++k) {
        sum_re += re[k];
        sum_im += im[k];
    }
    const double n = static_cast<double>(n_samples);
    return std::hypot(sum_re / n, sum_im / n);
}

double inelastic_loss_probability(double gamma, double t) {
    if (gamma < 0.0 || t < 0.0) throw DomainError("loss rate and time must be non-negative");
    return -std::expm1(-gamma * t);
}

long operations_budget(double t_phi, double t_gate) {
    if (!(t_phi > 0.0) || !(t_gate > 0.0)) throw DomainError("dephasing and gate times must be positive");
    if (std::isinf(t_phi)) return kUnboundedOperations;
    return floor_ratio(t_phi, t_gate);
}

AdiabaticityResult adiabaticity_check(double pulse_duration, double trap_frequency_hz, double threshold_periods) {
    if (!(pulse_duration > 0.0) || !(trap_frequency_hz > 0.0))
        throw DomainError("pulse duration and trap frequency must be positive");
    const double margin = pulse_duration * trap_frequency_hz;
    return {margin >= threshold_periods * (1.0 - 1e-12), margin};
}

double selective_readout_min_duration(double splitting_hz, double selectivity_factor) {
    if (!(splitting_hz > 0.0)) throw DomainError("readout splitting must be positive");
    if (!(selectivity_factor > 0.0)) throw DomainError("selectivity factor must be positive");
    return selectivity_factor / splitting_hz;
}

BudgetReport assemble_budget(const NoiseModel& noise, double sensitivity, const gate::GateSchedule& schedule,
                             double readout_splitting_hz, const BudgetOptions& options) {
    noise.validate();
    BudgetReport r{};
    r.dephasing_time = dephasing_time(sensitivity, noise.sigma_b_gauss, options.definition);
    r.gate_time = gate::schedule_total_duration(schedule).gate_time;
    r.operations_count = operations_budget(r.dephasing_time, r.gate_time);
    r.loss_probability = inelastic_loss_probability(noise.gamma_inelastic, r.gate_time);
    const auto adiabatic =
        adiabaticity_check(options.rotation_duration, noise.trap_frequency_hz, options.adiabatic_periods);
    r.adiabaticity_ok = adiabatic.pass;
    r.adiabaticity_margin = adiabatic.margin;
    r.readout_min_duration = selective_readout_min_duration(readout_splitting_hz, options.readout_selectivity);
    return r;
}

} // namespace hybridgate::budget
