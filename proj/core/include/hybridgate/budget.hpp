#pragma once

// Decoherence and feasibility budget for the gate protocol.

#include <cstdint>
#include <limits>

#include "hybridgate/gate.hpp"

namespace hybridgate::budget {

struct NoiseModel {
    double sigma_b_gauss = 0;    ///< rms quasi-static field fluctuation
    double gamma_inelastic = 0;  ///< inelastic collision rate, 1/s
    double trap_frequency_hz = 0;
    std::uint64_t seed = 0;

    void validate() const;
};

enum class DephasingDefinition {
    TwoPiRms,   ///< T = 1 / (2 pi s sigma_B)
    InverseRms, ///< T = 1 / (s sigma_B)
};

/// Infinity when sigma_b == 0. Throws DomainError for sensitivity <= 0.
double dephasing_time(double sensitivity_hz_per_gauss, double sigma_b_gauss,
                      DephasingDefinition definition = DephasingDefinition::TwoPiRms);

/// exp(-t^2 / (2 T^2)), the Ramsey envelope for quasi-static Gaussian noise.
double ramsey_contrast_analytic(double t, double dephasing_time);

/// |<exp(i 2 pi s dB t)>| over n quasi-static Gaussian field offsets.
///
/// Sample k draws its offset from a counter-based generator keyed on
/// (seed, k) and the sum runs in sample order, so the result does not depend
/// on `workers` (0 picks the hardware concurrency).
double ramsey_contrast_mc(double sensitivity_hz_per_gauss, double sigma_b_gauss, double t, std::size_t n_samples,
                          std::uint64_t seed, unsigned workers = 0);

/// Standard normal deviate for sample `index` of stream `seed`.
double counter_normal(std::uint64_t seed, std::uint64_t index);

/// 1 - exp(-gamma t).
double inelastic_loss_probability(double gamma, double t);

inline constexpr long kUnboundedOperations = std::numeric_limits<long>::max();

/// floor(T_phi / T_gate); kUnboundedOperations for infinite T_phi.
long operations_budget(double dephasing_time, double gate_time);

inline constexpr double kDefaultAdiabaticPeriods = 3.0;

struct AdiabaticityResult {
    bool pass;
    double margin; ///< duration * trap frequency, in trap periods
};

AdiabaticityResult adiabaticity_check(double pulse_duration, double trap_frequency_hz,
                                      double threshold_periods = kDefaultAdiabaticPeriods);

/// selectivity / splitting.
double selective_readout_min_duration(double splitting_hz, double selectivity_factor = 1.0);

struct BudgetOptions {
    double rotation_duration = 30e-6; ///< one-qubit rotation checked for adiabaticity
    double adiabatic_periods = kDefaultAdiabaticPeriods;
    double readout_selectivity = 1.0;
    DephasingDefinition definition = DephasingDefinition::TwoPiRms;
};

struct BudgetReport {
    double dephasing_time;
    double gate_time;
    long operations_count;
    double loss_probability; ///< inelastic loss over one gate
    bool adiabaticity_ok;
    double adiabaticity_margin;
    double readout_min_duration;
};

BudgetReport assemble_budget(const NoiseModel& noise, double sensitivity_hz_per_gauss,
                             const gate::GateSchedule& schedule, double readout_splitting_hz,
                             const BudgetOptions& options = {});

} // namespace hybridgate::budget
