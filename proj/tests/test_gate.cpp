#include <doctest.h>

#include <cmath>
#include <random>

#include "hybridgate/constants.hpp"
#include "hybridgate/errors.hpp"
#include "hybridgate/gate.hpp"
#include "oracles.hpp"

using namespace hybridgate;
using namespace hybridgate::gate;
using hybridgate::dynamics::TwoLevelParams;

namespace {

constexpr double kOmegaDd = 1.34e5;
constexpr double kOmegaR = 1e6;

// E_dc that gives the requested polarization mu E / (3 h B).
double field_for_polarization(double mu_debye, double b_rot_hz, double polarization) {
    return polarization * 3.0 * constants::planck * b_rot_hz / constants::debye_to_si(mu_debye);
}

} // namespace

TEST_CASE("induced dipole") {
    DipoleParams d{4.2, 6.5e9, field_for_polarization(4.2, 6.5e9, 1.0), 5e-7, 1.0};
    const auto unit = induced_dipole(d);
    CHECK(unit.polarization == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(unit.debye == doctest::Approx(4.2).epsilon(1e-14));
    CHECK(unit.outside_linear_response);

    d.e_dc_v_per_m = field_for_polarization(4.2, 6.5e9, 0.5);
    const auto half = induced_dipole(d);
    CHECK(half.debye == doctest::Approx(2.1).epsilon(1e-14));
    CHECK(half.outside_linear_response);

    d.e_dc_v_per_m = field_for_polarization(4.2, 6.5e9, 0.1);
    CHECK_FALSE(induced_dipole(d).outside_linear_response);

    d.separation_m = 0.0;
    CHECK_THROWS_AS(induced_dipole(d), DomainError);
}

TEST_CASE("dipole-dipole rate") {
    const double w = dipole_dipole_rate(4.2, 500e-9);
    CHECK(w == doctest::Approx(1.34e5).epsilon(2e-3));
    CHECK(w > 1.2e5);
    CHECK(w < 1.5e5);
    // Gaussian units: mu^2 / r^3 / hbar.
    CHECK(w == doctest::Approx(oracle::cgs_dipole_rate(4.2, 5e-5)).epsilon(1e-6));
    CHECK(dipole_dipole_rate(8.4, 500e-9) == doctest::Approx(4.0 * w).epsilon(1e-14));
    CHECK(dipole_dipole_rate(4.2, 1000e-9) == doctest::Approx(w / 8.0).epsilon(1e-14));
    CHECK_THROWS_AS(dipole_dipole_rate(4.2, 0.0), DomainError);
}

TEST_CASE("interaction time for a pi phase") {
    CHECK(interaction_time_for_pi(kOmegaDd, kOmegaR) == doctest::Approx(21.1e-6).epsilon(2e-3));
    CHECK(interaction_time_for_pi(1e5, 1e15) == doctest::Approx(M_PI / 1e5).epsilon(1e-9));
    CHECK(interaction_time_for_pi(1e5, 1e6) == doctest::Approx(29.1e-6).epsilon(1e-3));
    CHECK_THROWS_AS(interaction_time_for_pi(4e6 / 3.0, 1e6), DomainError);
    CHECK_THROWS_AS(interaction_time_for_pi(0.0, 1e6), DomainError);
    CHECK_THROWS_AS(interaction_time_for_pi(1e5, 0.0), DomainError);
}

TEST_CASE("closed-form total phase") {
    CHECK(total_phase_closed_form(kOmegaDd, kOmegaR, 0.0, 0.0) ==
          doctest::Approx(3.0 * M_PI * kOmegaDd / (4.0 * kOmegaR)).epsilon(1e-15));
    const double tau = interaction_time_for_pi(kOmegaDd, kOmegaR);
    CHECK(std::abs(total_phase_closed_form(kOmegaDd, kOmegaR, 0.0, tau) - M_PI) < 1e-12);
    // With delta = omega_dd the solver drops delta from the pulse term, so
    // the closed form misses pi by 3 pi omega_dd / 4 (1/W - 1/Omega_R).
    const double w = std::hypot(kOmegaR, kOmegaDd);
    CHECK(total_phase_closed_form(kOmegaDd, kOmegaR, kOmegaDd, tau) - M_PI ==
          doctest::Approx(0.75 * M_PI * kOmegaDd * (1.0 / w - 1.0 / kOmegaR)).epsilon(1e-9));
    CHECK_THROWS_AS(total_phase_closed_form(kOmegaDd, 0.0, 0.0, tau), DomainError);
}

TEST_CASE("quadrature over a single resonant pi pulse") {
    const TwoLevelParams p{kOmegaR, 0.0};
    const double d = M_PI / kOmegaR;
    const GateSchedule s({RamanDown{p, d}});
    const double phase = accumulated_phase_numeric(kOmegaDd, s).total;
    CHECK(phase == doctest::Approx(kOmegaDd * 3.0 * M_PI / (8.0 * kOmegaR)).epsilon(1e-9));
    CHECK(phase == doctest::Approx(0.1579).epsilon(1e-3));
    CHECK(phase == doctest::Approx(kOmegaDd * oracle::sin4_integral(kOmegaR, d)).epsilon(1e-9));
}

TEST_CASE("quadrature over detuned and partial pulses") {
    const TwoLevelParams p{kOmegaR, 3e5};
    const double w = std::hypot(p.omega_r, p.delta);
    const double h = p.omega_r * p.omega_r / (w * w);
    for (double frac : {0.3, 1.0, 1.7}) {
        const double d = frac * M_PI / w;
        const double expected = kOmegaDd * h * h * oracle::sin4_integral(w, d);
        CHECK(accumulated_phase_numeric(kOmegaDd, GateSchedule({RamanDown{p, d}})).total ==
              doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("wait with full molecular population") {
    const TwoLevelParams p{kOmegaR, 0.0};
    const GateSchedule s({RamanDown{p, M_PI / kOmegaR}, Wait{10e-6}});
    const auto r = accumulated_phase_numeric(kOmegaDd, s);
    CHECK(r.per_step.size() == 2);
    CHECK(r.per_step[1] == doctest::Approx(kOmegaDd * 10e-6).epsilon(1e-15));
    // A wait before any conversion accrues nothing.
    CHECK(accumulated_phase_numeric(kOmegaDd, GateSchedule({Wait{10e-6}})).total == 0.0);
}

TEST_CASE("resonant schedule built from the interaction-time solver accumulates pi") {
    const auto s = make_phase_gate_schedule(kOmegaDd, {kOmegaR, 0.0});
    CHECK(std::abs(accumulated_phase_numeric(kOmegaDd, s).total - M_PI) < 1e-4);
    CHECK(std::abs(accumulated_phase_numeric(kOmegaDd, s).total - M_PI) < 1e-9);
}

TEST_CASE("closed form against quadrature") {
    // Rectangular pulses, delta << Omega_R.
    const TwoLevelParams p{kOmegaR, 0.05 * kOmegaR};
    const double tau = interaction_time_for_pi(kOmegaDd, kOmegaR);
    const auto s = make_phase_gate_schedule(kOmegaDd, p);
    const double numeric = accumulated_phase_numeric(kOmegaDd, s).total;
    const double closed = total_phase_closed_form(kOmegaDd, p.omega_r, p.delta, tau);
    CHECK(std::abs(numeric / closed - 1.0) < 0.01);
}

TEST_CASE("closed form vs quadrature scales with the incomplete transfer") {
    // The quadrature carries (Omega^2/W^2)^2 on every term the closed form
    // treats as complete transfer, so numeric = h^2 closed and the relative
    // gap is 1 - (1 + eps)^-2 <= 2 eps with eps = (delta/Omega_R)^2.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> frac(0.0, 0.2);
    for (int i = 0; i < 40; ++i) {
        const double delta = frac(rng) * kOmegaR;
        const TwoLevelParams p{kOmegaR, delta};
        const double tau = interaction_time_for_pi(kOmegaDd, kOmegaR);
        const double numeric = accumulated_phase_numeric(kOmegaDd, make_phase_gate_schedule(kOmegaDd, p)).total;
        const double closed = total_phase_closed_form(kOmegaDd, kOmegaR, delta, tau);
        const double eps = (delta / kOmegaR) * (delta / kOmegaR);
        const double h = 1.0 / (1.0 + eps);
        CHECK(numeric == doctest::Approx(h * h * closed).epsilon(1e-8));
        CHECK(std::abs(1.0 - numeric / closed) <= 2.0 * eps + 1e-6);
    }
}

TEST_CASE("calibrated interaction time hits pi for detuned pulses") {
    const TwoLevelParams p{kOmegaR, kOmegaDd};
    ScheduleOptions opt;
    opt.interaction_time = calibrated_interaction_time(kOmegaDd, p);
    const auto s = make_phase_gate_schedule(kOmegaDd, p, opt);
    CHECK(accumulated_phase_numeric(kOmegaDd, s).total == doctest::Approx(M_PI).epsilon(1e-9));
    CHECK(opt.interaction_time > interaction_time_for_pi(kOmegaDd, kOmegaR));
}

TEST_CASE("accumulated phase is non-decreasing in time") {
    ScheduleOptions opt;
    opt.enabler_duration = 5e-6;
    const auto s = make_phase_gate_schedule(kOmegaDd, {kOmegaR, kOmegaDd}, opt);
    const double total = schedule_total_duration(s).total;
    double last = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double t = total * i / 400.0;
        const double phi = accumulated_phase_numeric(kOmegaDd, s, t).total;
        REQUIRE(phi >= last - 1e-15);
        last = phi;
    }
    CHECK(last == doctest::Approx(accumulated_phase_numeric(kOmegaDd, s).total).epsilon(1e-12));
}

TEST_CASE("schedule durations") {
    ScheduleOptions opt;
    opt.enabler_duration = 30e-6;
    const auto s = make_phase_gate_schedule(kOmegaDd, {kOmegaR, 0.0}, opt);
    CHECK(s.steps().size() == 5);
    CHECK(step_name(s.steps().front()) == "enabler_rotation");
    const auto b = schedule_total_duration(s);
    CHECK(b.raman == doctest::Approx(2.0 * M_PI / kOmegaR));
    CHECK(b.wait == doctest::Approx(21.1e-6).epsilon(2e-3));
    CHECK(b.gate_time == doctest::Approx(27.3e-6).epsilon(2e-3));
    CHECK(b.gate_time >= 15e-6);
    CHECK(b.gate_time <= 35e-6);
    CHECK(b.enabler == doctest::Approx(60e-6));
    CHECK(b.total == doctest::Approx(b.gate_time + b.enabler));

    CHECK(schedule_total_duration(GateSchedule{}).total == 0.0);

    const GateSchedule a({EnablerRotation{1e-6}, RamanDown{{kOmegaR, 0.0}, 2e-6}});
    const GateSchedule c({Wait{4e-6}, RamanUp{{kOmegaR, 0.0}, 3e-6}});
    CHECK(schedule_total_duration(a.concatenated(c)).total ==
          doctest::Approx(schedule_total_duration(a).total + schedule_total_duration(c).total).epsilon(1e-15));
}

TEST_CASE("schedule validation") {
    const TwoLevelParams p{kOmegaR, 0.0};
    CHECK_THROWS_AS(GateSchedule({Wait{0.0}}), DomainError);
    CHECK_THROWS_AS(GateSchedule({RamanUp{p, 1e-6}, Wait{1e-6}, RamanDown{p, 1e-6}}), DomainError);
    CHECK_THROWS_AS(GateSchedule({Wait{1e-6}, RamanDown{p, 1e-6}, RamanUp{p, 1e-6}}), DomainError);
    CHECK_NOTHROW(GateSchedule({RamanDown{p, 1e-6}, RamanUp{p, 1e-6}}));
}

TEST_CASE("phase gate unitary") {
    const auto g = build_phase_gate(M_PI);
    CHECK(g.matrix()(0, 0).real() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(g.matrix()(0, 0).imag()) < 1e-15);
    for (int i = 1; i < 4; ++i) CHECK(g.matrix()(i, i) == std::complex<double>(1.0, 0.0));
    CHECK((build_phase_gate(0.0).matrix() - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((build_phase_gate(2.0 * M_PI).matrix() - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(build_phase_gate(std::nan("")), DomainError);

    Eigen::Matrix4cd bad = Eigen::Matrix4cd::Identity();
    bad(0, 1) = 0.1;
    CHECK_THROWS_AS(TwoQubitUnitary{bad}, DomainError);
}

TEST_CASE("phase gates compose additively and stay unitary") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ang(-10.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        const double a = ang(rng), b = ang(rng);
        const auto prod = build_phase_gate(a) * build_phase_gate(b);
        REQUIRE((prod.matrix() - build_phase_gate(a + b).matrix()).cwiseAbs().maxCoeff() < 1e-12);
        REQUIRE(unitarity_deviation(build_phase_gate(a).matrix()) < 1e-10);
    }
}

TEST_CASE("gate fidelity") {
    const auto cz = build_phase_gate(M_PI);
    CHECK(gate_fidelity(cz, cz) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gate_fidelity(cz, TwoQubitUnitary::identity()) == doctest::Approx(0.25).epsilon(1e-15));
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ang(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double theta = ang(rng);
        const auto u = build_phase_gate(ang(rng));
        const auto v = build_phase_gate(ang(rng));
        const TwoQubitUnitary rotated(std::polar(1.0, theta) * u.matrix());
        REQUIRE(gate_fidelity(rotated, u) == doctest::Approx(1.0).epsilon(1e-12));
        REQUIRE(std::abs(gate_fidelity(u, v) - gate_fidelity(v, u)) < 1e-12);
        REQUIRE(gate_fidelity(u, v) >= 0.0);
        REQUIRE(gate_fidelity(u, v) <= 1.0 + 1e-12);
    }
}
