#pragma once

// Dipole-dipole phase gate between two molecules formed in neighbouring
// lattice sites: interaction strength, accumulated phase, interaction time,
// the gate schedule, and the resulting two-qubit unitary.
//
// omega_dd (rad/s) is the only interaction quantity passed around; energies
// in joules never leave dipole_dipole_rate.

#include <Eigen/Dense>

#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "hybridgate/dynamics.hpp"

namespace hybridgate::gate {

struct DipoleParams {
    double mu_permanent_debye = 0;
    double rotational_const_hz = 0; ///< B_rot as a linear frequency
    double e_dc_v_per_m = 0;
    double separation_m = 0;
    double fopa_enhancement = 1.0;

    void validate() const;
};

struct InducedDipole {
    double debye;
    double polarization; ///< mu E_dc / (3 h B_rot)
    /// Set from a polarization of 0.5 upwards, outside linear response.
    bool outside_linear_response;
};

/// mu_ind = mu (mu E_dc / 3 h B_rot).
InducedDipole induced_dipole(const DipoleParams& d);

/// mu_ind^2 / (4 pi eps0 r^3 hbar), rad/s.
double dipole_dipole_rate(double mu_ind_debye, double separation_m);

struct EnablerRotation {
    double duration;
};
struct RamanDown {
    dynamics::TwoLevelParams params;
    double duration;
};
struct Wait {
    double duration;
};
/// Mirror image of a RamanDown with the same parameters: the molecular
/// population follows the Rabi formula backwards in time.
struct RamanUp {
    dynamics::TwoLevelParams params;
    double duration;
};
struct EnablerReturn {
    double duration;
};

using GateStep = std::variant<EnablerRotation, RamanDown, Wait, RamanUp, EnablerReturn>;

double step_duration(const GateStep& step);
std::string step_name(const GateStep& step);

class GateSchedule {
public:
    GateSchedule() = default;
    /// Throws DomainError on non-positive durations or when RamanDown, Wait
    /// and RamanUp are all present but out of order.
    explicit GateSchedule(std::vector<GateStep> steps, double separation_m = 0.0, double omega_dd = 0.0);

    const std::vector<GateStep>& steps() const { return steps_; }
    double separation_m() const { return separation_m_; }
    double omega_dd() const { return omega_dd_; }
    bool empty() const { return steps_.empty(); }

    /// Steps of *this followed by steps of other (unvalidated ordering).
    GateSchedule concatenated(const GateSchedule& other) const;

private:
    std::vector<GateStep> steps_;
    double separation_m_ = 0;
    double omega_dd_ = 0;
};

struct DurationBreakdown {
    double enabler = 0;
    double raman = 0;
    double wait = 0;
    double total = 0;     ///< every step
    double gate_time = 0; ///< Raman + wait; enabler rotations are accounted separately
};

DurationBreakdown schedule_total_duration(const GateSchedule& schedule);

struct QuadratureOptions {
    double relative_tolerance = 1e-10;
    int min_intervals = 16;
    int max_doublings = 22;
};

struct PhaseResult {
    double total;
    std::vector<double> per_step;
};

/// Integral of omega_dd |c_g(t)|^4 over the schedule (optionally up to
/// `until`, measured from the start of the schedule). |c_g|^2 follows the
/// Rabi formula during Raman steps and is held at its last value otherwise.
PhaseResult accumulated_phase_numeric(double omega_dd, const GateSchedule& schedule,
                                      double until = std::numeric_limits<double>::infinity(),
                                      const QuadratureOptions& options = {});

/// omega_dd (3 pi / (4 sqrt(Omega_R^2 + delta^2)) + tau_int).
double total_phase_closed_form(double omega_dd, double omega_r, double delta, double tau_int);

/// (pi / omega_dd)(1 - 3 omega_dd / (4 Omega_R)).
double interaction_time_for_pi(double omega_dd, double omega_r);

/// Wait time that brings the quadrature phase of a down/wait/up sequence to
/// exactly `target`, accounting for incomplete transfer when delta != 0.
double calibrated_interaction_time(double omega_dd, const dynamics::TwoLevelParams& pulse,
                                   double target = std::numbers::pi);

struct ScheduleOptions {
    double enabler_duration = 0; ///< 0 omits the enabler steps
    double separation_m = 0;
    /// Override for the wait; NaN uses interaction_time_for_pi.
    double interaction_time = std::numeric_limits<double>::quiet_NaN();
};

/// Enabler rotation, Raman pi pulse down, wait, Raman pi pulse up, enabler
/// return.
GateSchedule make_phase_gate_schedule(double omega_dd, const dynamics::TwoLevelParams& pulse,
                                      const ScheduleOptions& options = {});

/// 4x4 unitary on (|0'0'>, |0'1'>, |1'0'>, |1'1'>).
class TwoQubitUnitary {
public:
    static constexpr double kUnitarityTolerance = 1e-10;

    /// Throws DomainError if max |(U^dagger U - I)_ij| >= 1e-10.
    explicit TwoQubitUnitary(Eigen::Matrix4cd m);

    static TwoQubitUnitary identity() { return TwoQubitUnitary(Eigen::Matrix4cd::Identity()); }

    const Eigen::Matrix4cd& matrix() const { return m_; }
    TwoQubitUnitary operator*(const TwoQubitUnitary& rhs) const { return TwoQubitUnitary(m_ * rhs.m_); }

private:
    Eigen::Matrix4cd m_;
};

double unitarity_deviation(const Eigen::Matrix4cd& m);

/// diag(e^{i phi}, 1, 1, 1).
TwoQubitUnitary build_phase_gate(double phi);

/// |Tr(U^dagger V) / 4|^2.
double gate_fidelity(const TwoQubitUnitary& u, const TwoQubitUnitary& v);

} // namespace hybridgate::gate
