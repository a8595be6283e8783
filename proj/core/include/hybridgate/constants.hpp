#pragma once

// Physical constants and the handful of unit conversions used across the
// library. Values are pinned (CODATA-2018 where applicable) so that results
// are reproducible bit-for-bit on every platform.
//
// Convention used throughout hybridgate:
//   - dynamics-facing quantities (Rabi frequencies, detunings, dipole-dipole
//     rates) are angular frequencies in rad/s;
//   - spectroscopy-facing quantities (hyperfine splittings, transition
//     frequencies, field sensitivities) are linear frequencies in Hz.

#include <numbers>

namespace hybridgate::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// C*m per debye.
inline constexpr double debye_to_coulomb_meter = 3.33564e-30;

/// Bohr magneton over Planck's constant, linear frequency per gauss (Hz/G).
inline constexpr double bohr_magneton_freq = 1.399624604e6;

/// Reduced Planck constant (J*s).
inline constexpr double reduced_planck = 1.054571817e-34;

/// Planck constant (J*s).
inline constexpr double planck = 6.62607015e-34;

/// Vacuum permittivity (F/m).
inline constexpr double vacuum_permittivity = 8.8541878128e-12;

/// 4*pi*epsilon_0 (F/m), the Coulomb factor for SI dipole-dipole energies.
inline constexpr double coulomb_factor = 4.0 * std::numbers::pi * vacuum_permittivity;

struct PhysicalConstants {
    double debye_to_coulomb_meter = constants::debye_to_coulomb_meter;
    double bohr_magneton_freq = constants::bohr_magneton_freq;
    double reduced_planck = constants::reduced_planck;
    double coulomb_factor = constants::coulomb_factor;
    double hz_to_rad_factor = constants::two_pi;
};

inline constexpr PhysicalConstants pinned{};

constexpr double debye_to_si(double mu_debye) { return mu_debye * debye_to_coulomb_meter; }

constexpr double si_to_debye(double mu_si) { return mu_si / debye_to_coulomb_meter; }

/// Hz -> rad/s.
constexpr double linear_to_angular(double f_hz) { return two_pi * f_hz; }

/// rad/s -> Hz.
constexpr double angular_to_linear(double omega) { return omega / two_pi; }

constexpr double hz_to_rad(double f_hz) { return linear_to_angular(f_hz); }
constexpr double rad_to_hz(double omega) { return angular_to_linear(omega); }

} // namespace hybridgate::constants
