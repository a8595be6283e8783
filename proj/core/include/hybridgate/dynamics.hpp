#pragma once

// Few-level coherent dynamics: the analytic two-level (Raman) transfer
// formula, a fixed-step RK4 Schrodinger integrator, and the three-level
// Lambda system used for Raman pi pulses and STIRAP.
//
// All frequencies here are angular (rad/s) and hbar is absorbed, so the
// equation of motion is i dpsi/dt = H(t) psi with H in rad/s.

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace hybridgate::dynamics {

/// Normalized amplitude vector with basis labels.
class StateVector {
public:
    /// Throws DomainError if sizes differ or |psi|^2 deviates from 1 by more
    /// than 1e-9.
    StateVector(Eigen::VectorXcd amplitudes, std::vector<std::string> labels);

    /// |c_0|^2 = 1 in a basis of the given labels.
    static StateVector basis(std::size_t index, std::vector<std::string> labels);

    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t dimension() const { return static_cast<std::size_t>(amps_.size()); }
    double population(std::size_t i) const { return std::norm(amps_(static_cast<Eigen::Index>(i))); }
    double norm_squared() const { return amps_.squaredNorm(); }

private:
    Eigen::VectorXcd amps_;
    std::vector<std::string> labels_;
};

struct TwoLevelParams {
    double omega_r = 0; ///< effective Rabi frequency, rad/s
    double delta = 0;   ///< two-photon detuning, rad/s
};

struct LambdaParams {
    double omega_p = 0;  ///< pump Rabi frequency, rad/s
    double omega_s = 0;  ///< Stokes Rabi frequency, rad/s
    double delta_e = 0;  ///< one-photon detuning from the excited state, rad/s
    double delta = 0;    ///< two-photon detuning, rad/s
    double gamma_e = 0;  ///< excited-state loss rate, rad/s
    bool stark_compensated = true;
};

/// Scales the pump Rabi frequency by a Feshbach-optimized photoassociation
/// enhancement factor (>= 1).
LambdaParams with_fopa_enhancement(LambdaParams p, double factor);

struct EffectiveCoupling {
    double omega_r;            ///< Omega_p Omega_S / (2 Delta_e)
    double light_shift_pump;   ///< Omega_p^2 / (4 Delta_e)
    double light_shift_stokes; ///< Omega_S^2 / (4 Delta_e)
};

/// |c_g(t)|^2 = Omega^2/(Omega^2+delta^2) sin^2(sqrt(Omega^2+delta^2) t / 2).
double two_level_population(const TwoLevelParams& p, double t);

/// Throws DomainError when delta_e == 0.
EffectiveCoupling effective_rabi(const LambdaParams& p);

/// pi / sqrt(Omega^2 + delta^2).
double pi_pulse_duration(const TwoLevelParams& p);

class PulseEnvelope {
public:
    enum class Shape { Rectangular, Gaussian };

    static PulseEnvelope rectangular(double peak, double start, double duration);

    /// Gaussian in amplitude whose *intensity* profile |Omega(t)|^2 has the
    /// given rms width: Omega(t) = peak exp(-(t - center)^2 / (4 rms^2)).
    /// Zero outside [start, start + duration].
    static PulseEnvelope gaussian(double peak, double center, double rms_width, double start, double duration);

    /// Gaussian centred in a window of +- half_window_rms intensity-rms widths.
    static PulseEnvelope gaussian_centered(double peak, double center, double rms_width, double half_window_rms = 8.0);

    double operator()(double t) const;

    Shape shape() const { return shape_; }
    double peak() const { return peak_; }
    double start() const { return start_; }
    double duration() const { return duration_; }
    double end() const { return start_ + duration_; }
    double center() const { return center_; }
    double rms_width() const { return rms_width_; }

    PulseEnvelope scaled(double factor) const;

private:
    PulseEnvelope(Shape shape, double peak, double start, double duration, double center, double rms);

    Shape shape_;
    double peak_;
    double start_;
    double duration_;
    double center_;
    double rms_width_;
};

/// H(t) written into a preallocated dim x dim matrix.
struct Hamiltonian {
    std::size_t dimension = 0;
    std::function<void(double, Eigen::MatrixXcd&)> fill;

    Eigen::MatrixXcd at(double t) const;

    static Hamiltonian constant(Eigen::MatrixXcd h);
};

/// Largest row-sum norm sampled at `samples` points on [t0, t1].
double max_row_norm(const Hamiltonian& h, double t0, double t1, std::size_t samples = 2001);

struct TimeGrid {
    double t0 = 0;
    double t1 = 0;
    std::size_t steps = 0;

    double step() const { return steps == 0 ? 0.0 : (t1 - t0) / static_cast<double>(steps); }
    double at(std::size_t i) const;

    /// Finest uniform grid with max_norm * h <= safety.
    static TimeGrid for_norm(double t0, double t1, double max_norm, double safety);
};

struct IntegratorOptions {
    /// Upper bound on ||H(t)|| * h, checked at every Hamiltonian evaluation.
    double max_norm_step = 0.05;
    /// Allowed |norm^2 - 1| at the end of a norm-conserving run.
    double norm_tolerance = 1e-7;
    /// False when H carries a loss term; disables the drift check.
    bool norm_conserving = true;
    /// Record every k-th grid point (the final point is always recorded).
    std::size_t record_every = 1;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> states;
    std::vector<std::string> labels;

    std::size_t size() const { return times.size(); }
    double population(std::size_t k, std::size_t level) const;
    double norm_squared(std::size_t k) const { return states[k].squaredNorm(); }
    /// max_k | |psi_k|^2 - 1 |
    double max_norm_drift() const;
};

/// Classical fixed-step RK4 for i dpsi/dt = H(t) psi.
///
/// Throws NumericalConfigError if ||H|| h exceeds options.max_norm_step at any
/// evaluation and NumericalFailure if a norm-conserving run drifts by more
/// than options.norm_tolerance.
Trajectory integrate_schrodinger(const Hamiltonian& h, const StateVector& psi0, const TimeGrid& grid,
                                 const IntegratorOptions& options = {});

/// Same as integrate_schrodinger but keeps only the final state.
Eigen::VectorXcd propagate(const Hamiltonian& h, const StateVector& psi0, const TimeGrid& grid,
                           const IntegratorOptions& options = {});

/// Resonant/detuned two-level Hamiltonian on (a, g):
/// [[0, Omega/2], [Omega/2, -delta]].
Hamiltonian two_level_hamiltonian(const TwoLevelParams& p);

/// Lambda Hamiltonian on (a, e, g) in the rotating frame: diagonal
/// (0, -Delta_e - i gamma_e/2, -delta'), couplings Omega_p(t)/2 and
/// Omega_S(t)/2. With stark_compensated and Delta_e != 0 the bare two-photon
/// detuning delta' is shifted by the instantaneous differential light shift so
/// that the effective detuning equals p.delta.
Hamiltonian lambda_hamiltonian(const PulseEnvelope& pump, const PulseEnvelope& stokes, const LambdaParams& p);

inline const std::vector<std::string>& lambda_labels() {
    static const std::vector<std::string> labels{"a", "e", "g"};
    return labels;
}

struct SimulationOptions {
    /// ||H|| h used to pick the grid; must not exceed the integrator bound.
    double step_safety = 0.01;
    /// Cap on recorded trajectory points.
    std::size_t max_recorded = 2001;
};

struct LambdaPopulations {
    double p_a;
    double p_e;
    double p_g;
};

struct RamanRun {
    LambdaPopulations final;
    Trajectory trajectory;
    std::size_t steps;
};

/// Full three-level run with rectangular pump and Stokes pulses on
/// [0, duration].
RamanRun run_raman_pulse(const LambdaParams& p, double duration, const SimulationOptions& options = {});

/// Final (P_a, P_e, P_g) after a rectangular Raman pulse.
LambdaPopulations simulate_raman_pi_pulse(const LambdaParams& p, double duration,
                                          const SimulationOptions& options = {});

struct EliminationComparison {
    double three_level_final;
    double two_level_final;
    double final_abs_diff;
    double max_abs_diff; ///< over every recorded grid point
    double max_excited;  ///< largest P_e seen
};

/// Three-level run against two_level_population with Omega_R from
/// effective_rabi and the requested two-photon detuning.
EliminationComparison compare_with_two_level(const LambdaParams& p, double duration,
                                             const SimulationOptions& options = {});

struct StirapResult {
    double efficiency; ///< final P_g
    LambdaPopulations final;
    double norm_drift; ///< |norm^2 - 1| at the end (gamma_e = 0)
    std::size_t steps;
};

/// Integrates the Lambda system over the union of both envelope windows.
/// Uses p.delta_e, p.delta, p.gamma_e and p.stark_compensated; the envelopes
/// supply the Rabi frequencies. Both envelopes must be Gaussian.
StirapResult simulate_stirap(const PulseEnvelope& pump, const PulseEnvelope& stokes, const LambdaParams& p,
                             const SimulationOptions& options = {});

} // namespace hybridgate::dynamics
