#include "hybridgate/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "hybridgate/errors.hpp"

namespace hybridgate::dynamics {

using cd = std::complex<double>;

namespace {

constexpr double kNormalizationTolerance = 1e-9;

double row_norm(const Eigen::MatrixXcd& h) {
    double best = 0.0;
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
        double sum = 0.0;
        for (Eigen::Index c = 0; c < h.cols(); ++c) sum += std::abs(h(r, c));
        best = std::max(best, sum);
    }
    return best;
}

std::size_t record_stride(std::size_t steps, std::size_t max_recorded) {
    if (max_recorded < 2 || steps + 1 <= max_recorded) return 1;
    return (steps + max_recorded - 2) / (max_recorded - 1);
}

// RK4 driver shared by integrate_schrodinger and propagate. `observe` is
// called with (grid index, time, state) for index 0 and every recorded step.
template <typename Observer>
Eigen::VectorXcd rk4(const Hamiltonian& ham, const StateVector& psi0, const TimeGrid& grid,
                     const IntegratorOptions& opt, Observer&& observe) {
    const auto dim = static_cast<Eigen::Index>(ham.dimension);
    if (psi0.dimension() != ham.dimension) throw DomainError("state and Hamiltonian dimensions differ");
    if (!(grid.t1 >= grid.t0)) throw NumericalConfigError("time grid must be increasing");
    if (opt.record_every == 0) throw NumericalConfigError("record_every must be >= 1");

    const double h = grid.step();
    Eigen::VectorXcd psi = psi0.amplitudes();
    observe(std::size_t{0}, grid.t0, psi);
    if (grid.steps == 0) return psi;

    Eigen::MatrixXcd h_start(dim, dim), h_mid(dim, dim), h_end(dim, dim);
    Eigen::VectorXcd k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    const cd minus_i(0.0, -1.0);

    auto evaluate = [&](double t, Eigen::MatrixXcd& out) {
        out.setZero();
        ham.fill(t, out);
        const double scaled = row_norm(out) * h;
        if (scaled > opt.max_norm_step) {
            std::ostringstream msg;
            msg << "integrator step too large: ||H|| h = " << scaled << " exceeds " << opt.max_norm_step
                << " at t = " << t;
            throw NumericalConfigError(msg.str());
        }
    };

    evaluate(grid.t0, h_start);
    for (std::size_t i = 0; i < grid.steps; ++i) {
        const double t = grid.at(i);
        const double t_next = grid.at(i + 1);
        evaluate(0.5 * (t + t_next), h_mid);
        evaluate(t_next, h_end);

        k1.noalias() = minus_i * (h_start * psi);
        tmp = psi + (0.5 * h) * k1;
        k2.noalias() = minus_i * (h_mid * tmp);
        tmp = psi + (0.5 * h) * k2;
        k3.noalias() = minus_i * (h_mid * tmp);
        tmp = psi + h * k3;
        k4.noalias() = minus_i * (h_end * tmp);
        psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        h_start.swap(h_end);
        const std::size_t index = i + 1;
        if (index % opt.record_every == 0 || index == grid.steps) observe(index, t_next, psi);
    }

    if (opt.norm_conserving) {
        const double drift = std::abs(psi.squaredNorm() - 1.0);
        if (drift > opt.norm_tolerance) {
            std::ostringstream msg;
            msg << "norm drift " << drift << " exceeds " << opt.norm_tolerance;
            throw NumericalFailure(msg.str());
        }
    }
    return psi;
}

} // namespace

StateVector::StateVector(Eigen::VectorXcd amplitudes, std::vector<std::string> labels)
    : amps_(std::move(amplitudes)), labels_(std::move(labels)) {
    if (static_cast<std::size_t>(amps_.size()) != labels_.size())
        throw DomainError("amplitude count and label count differ");
    if (std::abs(amps_.squaredNorm() - 1.0) > kNormalizationTolerance)
        throw DomainError("state vector is not normalized");
}

StateVector StateVector::basis(std::size_t index, std::vector<std::string> labels) {
    if (index >= labels.size()) throw DomainError("basis index out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(labels.size()));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(v), std::move(labels));
}

LambdaParams with_fopa_enhancement(LambdaParams p, double factor) {
    if (!(factor >= 1.0)) throw DomainError("FOPA enhancement must be >= 1");
    p.omega_p *= factor;
    return p;
}

double two_level_population(const TwoLevelParams& p, double t) {
    if (t < 0.0) throw DomainError("time must be non-negative");
    const double omega2 = p.omega_r * p.omega_r;
    const double w2 = omega2 + p.delta * p.delta;
    if (w2 == 0.0) return 0.0;
    const double s = std::sin(std::sqrt(w2) * t / 2.0);
    return omega2 / w2 * s * s;
}

EffectiveCoupling effective_rabi(const LambdaParams& p) {
    if (p.delta_e == 0.0) throw DomainError("adiabatic elimination needs a non-zero one-photon detuning");
    return {p.omega_p * p.omega_s / (2.0 * p.delta_e), p.omega_p * p.omega_p / (4.0 * p.delta_e),
            p.omega_s * p.omega_s / (4.0 * p.delta_e)};
}

double pi_pulse_duration(const TwoLevelParams& p) {
    const double w2 = p.omega_r * p.omega_r + p.delta * p.delta;
    if (w2 == 0.0) throw DomainError("pi pulse undefined for zero generalized Rabi frequency");
    return std::numbers::pi / std::sqrt(w2);
}

PulseEnvelope::PulseEnvelope(Shape shape, double peak, double start, double duration, double center, double rms)
    : shape_(shape), peak_(peak), start_(start), duration_(duration), center_(center), rms_width_(rms) {
    if (!(duration > 0.0)) throw DomainError("pulse duration must be positive");
    if (shape == Shape::Gaussian && !(rms > 0.0)) throw DomainError("gaussian rms width must be positive");
}

PulseEnvelope PulseEnvelope::rectangular(double peak, double start, double duration) {
    return {Shape::Rectangular, peak, start, duration, start + 0.5 * duration, 0.0};
}

PulseEnvelope PulseEnvelope::gaussian(double peak, double center, double rms_width, double start, double duration) {
    return {Shape::Gaussian, peak, start, duration, center, rms_width};
}

PulseEnvelope PulseEnvelope::gaussian_centered(double peak, double center, double rms_width, double half_window_rms) {
    return gaussian(peak, center, rms_width, center - half_window_rms * rms_width, 2.0 * half_window_rms * rms_width);
}

double PulseEnvelope::operator()(double t) const {
    if (t < start_ || t > end()) return 0.0;
    if (shape_ == Shape::Rectangular) return peak_;
    const double u = t - center_;
    return peak_ * std::exp(-u * u / (4.0 * rms_width_ * rms_width_));
}

PulseEnvelope PulseEnvelope::scaled(double factor) const {
    PulseEnvelope out = *this;
    out.peak_ *= factor;
    return out;
}

Eigen::MatrixXcd Hamiltonian::at(double t) const {
    const auto n = static_cast<Eigen::Index>(dimension);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    fill(t, m);
    return m;
}

Hamiltonian Hamiltonian::constant(Eigen::MatrixXcd h) {
    const auto n = static_cast<std::size_t>(h.rows());
    return {n, [h = std::move(h)](double, Eigen::MatrixXcd& out) { out = h; }};
}

double max_row_norm(const Hamiltonian& h, double t0, double t1, std::size_t samples) {
    samples = std::max<std::size_t>(samples, 2);
    const auto n = static_cast<Eigen::Index>(h.dimension);
    Eigen::MatrixXcd m(n, n);
    double best = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(samples - 1);
        m.setZero();
        h.fill(t, m);
        best = std::max(best, row_norm(m));
    }
    return best;
}

double TimeGrid::at(std::size_t i) const {
    if (i >= steps) return t1;
    return t0 + (t1 - t0) * (static_cast<double>(i) / static_cast<double>(steps));
}

TimeGrid TimeGrid::for_norm(double t0, double t1, double max_norm, double safety) {
    if (!(safety > 0.0)) throw NumericalConfigError("step safety must be positive");
    const double span = t1 - t0;
    if (!(span >= 0.0)) throw NumericalConfigError("time grid must be increasing");
    const double raw = std::ceil(span * max_norm / safety);
    return {t0, t1, std::max<std::size_t>(1, static_cast<std::size_t>(raw))};
}

double Trajectory::population(std::size_t k, std::size_t level) const {
    return std::norm(states[k](static_cast<Eigen::Index>(level)));
}

double Trajectory::max_norm_drift() const {
    double worst = 0.0;
    for (const auto& s : states) worst = std::max(worst, std::abs(s.squaredNorm() - 1.0));
    return worst;
}

Trajectory integrate_schrodinger(const Hamiltonian& h, const StateVector& psi0, const TimeGrid& grid,
                                 const IntegratorOptions& options) {
    Trajectory out;
    out.labels = psi0.labels();
    const std::size_t expected = grid.steps / options.record_every + 2;
    out.times.reserve(expected);
    out.states.reserve(expected);
    rk4(h, psi0, grid, options, [&](std::size_t, double t, const Eigen::VectorXcd& psi) {
        out.times.push_back(t);
        out.states.push_back(psi);
    });
    return out;
}

Eigen::VectorXcd propagate(const Hamiltonian& h, const StateVector& psi0, const TimeGrid& grid,
                           const IntegratorOptions& options) {
    IntegratorOptions opt = options;
    opt.record_every = std::max<std::size_t>(grid.steps, 1);
    return rk4(h, psi0, grid, opt, [](std::size_t, double, const Eigen::VectorXcd&) {});
}

Hamiltonian two_level_hamiltonian(const TwoLevelParams& p) {
    Eigen::MatrixXcd h(2, 2);
    h << 0.0, 0.5 * p.omega_r, 0.5 * p.omega_r, -p.delta;
    return Hamiltonian::constant(std::move(h));
}

Hamiltonian lambda_hamiltonian(const PulseEnvelope& pump, const PulseEnvelope& stokes, const LambdaParams& p) {
    if (p.gamma_e < 0.0) throw DomainError("excited-state loss rate must be non-negative");
    return {3, [pump, stokes, p](double t, Eigen::MatrixXcd& h) {
                const double op = pump(t);
                const double os = stokes(t);
                double bare_delta = p.delta;
                if (p.stark_compensated && p.delta_e != 0.0) bare_delta += (os * os - op * op) / (4.0 * p.delta_e);
                h(0, 1) = h(1, 0) = 0.5 * op;
                h(1, 2) = h(2, 1) = 0.5 * os;
                h(1, 1) = cd(-p.delta_e, -0.5 * p.gamma_e);
                h(2, 2) = -bare_delta;
            }};
}

RamanRun run_raman_pulse(const LambdaParams& p, double duration, const SimulationOptions& options) {
    if (!(duration > 0.0)) throw DomainError("pulse duration must be positive");
    const auto pump = PulseEnvelope::rectangular(p.omega_p, 0.0, duration);
    const auto stokes = PulseEnvelope::rectangular(p.omega_s, 0.0, duration);
    const Hamiltonian h = lambda_hamiltonian(pump, stokes, p);
    const TimeGrid grid = TimeGrid::for_norm(0.0, duration, max_row_norm(h, 0.0, duration, 3), options.step_safety);

    IntegratorOptions opt;
    opt.norm_conserving = p.gamma_e == 0.0;
    opt.record_every = record_stride(grid.steps, options.max_recorded);

    RamanRun run{{}, integrate_schrodinger(h, StateVector::basis(0, lambda_labels()), grid, opt), grid.steps};
    const auto last = run.trajectory.size() - 1;
    run.final = {run.trajectory.population(last, 0), run.trajectory.population(last, 1),
                 run.trajectory.population(last, 2)};
    return run;
}

LambdaPopulations simulate_raman_pi_pulse(const LambdaParams& p, double duration, const SimulationOptions& options) {
    SimulationOptions opt = options;
    opt.max_recorded = 2;
    return run_raman_pulse(p, duration, opt).final;
}

EliminationComparison compare_with_two_level(const LambdaParams& p, double duration,
                                             const SimulationOptions& options) {
    const TwoLevelParams reduced{effective_rabi(p).omega_r, p.delta};
    const RamanRun run = run_raman_pulse(p, duration, options);
    EliminationComparison out{};
    for (std::size_t k = 0; k < run.trajectory.size(); ++k) {
        const double three = run.trajectory.population(k, 2);
        const double two = two_level_population(reduced, run.trajectory.times[k]);
        out.max_abs_diff = std::max(out.max_abs_diff, std::abs(three - two));
        out.max_excited = std::max(out.max_excited, run.trajectory.population(k, 1));
    }
    out.three_level_final = run.final.p_g;
    out.two_level_final = two_level_population(reduced, duration);
    out.final_abs_diff = std::abs(out.three_level_final - out.two_level_final);
    return out;
}

StirapResult simulate_stirap(const PulseEnvelope& pump, const PulseEnvelope& stokes, const LambdaParams& p,
                             const SimulationOptions& options) {
    if (pump.shape() != PulseEnvelope::Shape::Gaussian || stokes.shape() != PulseEnvelope::Shape::Gaussian)
        throw DomainError("STIRAP requires gaussian envelopes");
    const double t0 = std::min(pump.start(), stokes.start());
    const double t1 = std::max(pump.end(), stokes.end());
    const Hamiltonian h = lambda_hamiltonian(pump, stokes, p);
    const TimeGrid grid = TimeGrid::for_norm(t0, t1, max_row_norm(h, t0, t1), options.step_safety);

    IntegratorOptions opt;
    opt.norm_conserving = p.gamma_e == 0.0;
    const Eigen::VectorXcd psi = propagate(h, StateVector::basis(0, lambda_labels()), grid, opt);

    StirapResult out{};
    out.final = {std::norm(psi(0)), std::norm(psi(1)), std::norm(psi(2))};
    out.efficiency = out.final.p_g;
    out.norm_drift = std::abs(psi.squaredNorm() - 1.0);
    out.steps = grid.steps;
    return out;
}

} // namespace hybridgate::dynamics
