#include "hybridgate/gate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "hybridgate/constants.hpp"
#include "hybridgate/errors.hpp"

namespace hybridgate::gate {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Composite Simpson with interval doubling until the Richardson error
// estimate falls below the relative tolerance.
template <typename F>
double simpson(F&& f, double a, double b, const QuadratureOptions& opt) {
    if (b <= a) return 0.0;
    auto rule = [&](int n) {
        const double h = (b - a) / n;
        double sum = f(a) + f(b);
        for (int i = 1; i < n; ++i) sum += f(a + i * h) * ((i % 2 == 1) ? 4.0 : 2.0);
        return sum * h / 3.0;
    };
    int n = std::max(2, opt.min_intervals + opt.min_intervals % 2);
    double coarse = rule(n);
    for (int k = 0; k < opt.max_doublings; ++k) {
        n *= 2;
        const double fine = rule(n);
        const double err = std::abs(fine - coarse) / 15.0;
        if (err <= opt.relative_tolerance * std::abs(fine) || fine == coarse) return fine;
        coarse = fine;
    }
    throw NumericalFailure("phase quadrature did not converge");
}

} // namespace

void DipoleParams::validate() const {
    if (!(mu_permanent_debye > 0.0)) throw DomainError("permanent dipole moment must be positive");
    if (!(rotational_const_hz > 0.0)) throw DomainError("rotational constant must be positive");
    if (!(e_dc_v_per_m > 0.0)) throw DomainError("electric field must be positive");
    if (!(separation_m > 0.0)) throw DomainError("separation must be positive");
    if (!(fopa_enhancement >= 1.0)) throw DomainError("FOPA enhancement must be >= 1");
}

InducedDipole induced_dipole(const DipoleParams& d) {
    d.validate();
    const double mu_si = constants::debye_to_si(d.mu_permanent_debye);
    const double rotational_energy = constants::planck * d.rotational_const_hz;
    const double polarization = mu_si * d.e_dc_v_per_m / (3.0 * rotational_energy);
    return {d.mu_permanent_debye * polarization, polarization, polarization >= 0.5 * (1.0 - 1e-12)};
}

double dipole_dipole_rate(double mu_ind_debye, double separation_m) {
    if (!(separation_m > 0.0)) throw DomainError("molecule separation must be positive");
    if (mu_ind_debye < 0.0) throw DomainError("dipole moment must be non-negative");
    const double mu = constants::debye_to_si(mu_ind_debye);
    const double r3 = separation_m * separation_m * separation_m;
    return mu * mu / (constants::coulomb_factor * r3 * constants::reduced_planck);
}

double step_duration(const GateStep& step) {
    return std::visit([](const auto& s) { return s.duration; }, step);
}

std::string step_name(const GateStep& step) {
    return std::visit(overloaded{
                          [](const EnablerRotation&) { return std::string("enabler_rotation"); },
                          [](const RamanDown&) { return std::string("raman_down"); },
                          [](const Wait&) { return std::string("wait"); },
                          [](const RamanUp&) { return std::string("raman_up"); },
                          [](const EnablerReturn&) { return std::string("enabler_return"); },
                      },
                      step);
}

GateSchedule::GateSchedule(std::vector<GateStep> steps, double separation_m, double omega_dd)
    : steps_(std::move(steps)), separation_m_(separation_m), omega_dd_(omega_dd) {
    std::ptrdiff_t down = -1, wait = -1, up = -1;
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (!(step_duration(steps_[i]) > 0.0)) throw DomainError("schedule step durations must be positive");
        const auto idx = static_cast<std::ptrdiff_t>(i);
        if (std::holds_alternative<RamanDown>(steps_[i]) && down < 0) down = idx;
        if (std::holds_alternative<Wait>(steps_[i]) && wait < 0) wait = idx;
        if (std::holds_alternative<RamanUp>(steps_[i]) && up < 0) up = idx;
    }
    if (down >= 0 && wait >= 0 && up >= 0 && !(down < wait && wait < up))
        throw DomainError("schedule must order RamanDown before Wait before RamanUp");
}

GateSchedule GateSchedule::concatenated(const GateSchedule& other) const {
    GateSchedule out = *this;
    out.steps_.insert(out.steps_.end(), other.steps_.begin(), other.steps_.end());
    return out;
}

DurationBreakdown schedule_total_duration(const GateSchedule& schedule) {
    DurationBreakdown b;
    for (const auto& step : schedule.steps()) {
        const double d = step_duration(step);
        std::visit(overloaded{
                       [&](const EnablerRotation&) { b.enabler += d; },
                       [&](const EnablerReturn&) { b.enabler += d; },
                       [&](const RamanDown&) { b.raman += d; },
                       [&](const RamanUp&) { b.raman += d; },
                       [&](const Wait&) { b.wait += d; },
                   },
                   step);
        b.total += d;
    }
    b.gate_time = b.raman + b.wait;
    return b;
}

PhaseResult accumulated_phase_numeric(double omega_dd, const GateSchedule& schedule, double until,
                                      const QuadratureOptions& options) {
    PhaseResult out{0.0, {}};
    out.per_step.reserve(schedule.steps().size());
    double held = 0.0; // molecular population carried between Raman steps
    double start = 0.0;
    for (const auto& step : schedule.steps()) {
        const double d = step_duration(step);
        const double upper = std::clamp(until - start, 0.0, d);
        double phase = 0.0;
        std::visit(overloaded{
                       [&](const RamanDown& s) {
                           auto integrand = [&](double t) {
                               const double p = dynamics::two_level_population(s.params, t);
                               return omega_dd * p * p;
                           };
                           phase = simpson(integrand, 0.0, upper, options);
                           held = dynamics::two_level_population(s.params, s.duration);
                       },
                       [&](const RamanUp& s) {
                           auto integrand = [&](double t) {
                               const double p = dynamics::two_level_population(s.params, std::max(0.0, s.duration - t));
                               return omega_dd * p * p;
                           };
                           phase = simpson(integrand, 0.0, upper, options);
                           held = dynamics::two_level_population(s.params, 0.0);
                       },
                       [&](const auto&) { phase = omega_dd * held * held * upper; },
                   },
                   step);
        out.per_step.push_back(phase);
        out.total += phase;
        start += d;
    }
    return out;
}

double total_phase_closed_form(double omega_dd, double omega_r, double delta, double tau_int) {
    const double w2 = omega_r * omega_r + delta * delta;
    if (!(w2 > 0.0)) throw DomainError("closed-form phase needs Omega_R^2 + delta^2 > 0");
    return omega_dd * (3.0 * constants::pi / (4.0 * std::sqrt(w2)) + tau_int);
}

double interaction_time_for_pi(double omega_dd, double omega_r) {
    if (!(omega_dd > 0.0)) throw DomainError("dipole-dipole rate must be positive");
    if (!(omega_r > 0.0)) throw DomainError("Rabi frequency must be positive");
    const double ratio = 3.0 * omega_dd / (4.0 * omega_r);
    if (!(ratio < 1.0)) throw DomainError("pulses alone would overshoot a pi phase (3 omega_dd / 4 Omega_R >= 1)");
    return constants::pi / omega_dd * (1.0 - ratio);
}

double calibrated_interaction_time(double omega_dd, const dynamics::TwoLevelParams& pulse, double target) {
    if (!(omega_dd > 0.0)) throw DomainError("dipole-dipole rate must be positive");
    const double d = dynamics::pi_pulse_duration(pulse);
    const GateSchedule pulses({RamanDown{pulse, d}, RamanUp{pulse, d}});
    const double pulse_phase = accumulated_phase_numeric(omega_dd, pulses).total;
    const double held = dynamics::two_level_population(pulse, d);
    const double tau = (target - pulse_phase) / (omega_dd * held * held);
    if (!(tau > 0.0)) throw DomainError("pulses alone already exceed the target phase");
    return tau;
}

GateSchedule make_phase_gate_schedule(double omega_dd, const dynamics::TwoLevelParams& pulse,
                                      const ScheduleOptions& options) {
    const double pulse_time = dynamics::pi_pulse_duration(pulse);
    const double wait = std::isnan(options.interaction_time) ? interaction_time_for_pi(omega_dd, pulse.omega_r)
                                                             : options.interaction_time;
    std::vector<GateStep> steps;
    if (options.enabler_duration > 0.0) steps.emplace_back(EnablerRotation{options.enabler_duration});
    steps.emplace_back(RamanDown{pulse, pulse_time});
    steps.emplace_back(Wait{wait});
    steps.emplace_back(RamanUp{pulse, pulse_time});
    if (options.enabler_duration > 0.0) steps.emplace_back(EnablerReturn{options.enabler_duration});
    return GateSchedule(std::move(steps), options.separation_m, omega_dd);
}

double unitarity_deviation(const Eigen::Matrix4cd& m) {
    const Eigen::Matrix4cd diff = m.adjoint() * m - Eigen::Matrix4cd::Identity();
    return diff.cwiseAbs().maxCoeff();
}

TwoQubitUnitary::TwoQubitUnitary(Eigen::Matrix4cd m) : m_(std::move(m)) {
    if (!(unitarity_deviation(m_) < kUnitarityTolerance)) {
        std::ostringstream msg;
        msg << "matrix is not unitary (deviation " << unitarity_deviation(m_) << ")";
        throw DomainError(msg.str());
    }
}

TwoQubitUnitary build_phase_gate(double phi) {
    if (!std::isfinite(phi)) throw DomainError("phase must be finite");
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
    m(0, 0) = std::polar(1.0, phi);
    return TwoQubitUnitary(m);
}

double gate_fidelity(const TwoQubitUnitary& u, const TwoQubitUnitary& v) {
    const std::complex<double> trace = (u.matrix().adjoint() * v.matrix()).trace();
    return std::norm(trace / 4.0);
}

} // namespace hybridgate::gate
