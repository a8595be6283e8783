#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into hybridgate_core.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

// Literal E(f = I +- 1/2, m) / dE = -1/12 +- 1/2 sqrt(1 + m x + x^2).
inline double paper_breit_rabi(double splitting_hz, double g_j, double nuclear_spin, int f, int m, double field) {
    const double x = g_j * 1.399624604e6 * field / splitting_hz;
    const double sign = (f > nuclear_spin) ? 1.0 : -1.0;
    return splitting_hz * (-1.0 / 12.0 + sign * 0.5 * std::sqrt(1.0 + m * x + x * x));
}

struct Level {
    std::string species;
    double splitting;
    double g_j;
    int f;
    int m;
};

inline std::vector<Level> levels_i32(const std::string& name, double splitting, double g_j) {
    std::vector<Level> out;
    for (int f = 1; f <= 2; ++f)
        for (int m = -f; m <= f; ++m) out.push_back({name, splitting, g_j, f, m});
    return out;
}

struct PairChannel {
    Level a;
    Level b;
};

// Every (a, b) pair of I = 3/2 levels whose m sum matches and whose energy is
// strictly lower than the start channel.
inline std::vector<PairChannel> lower_channels(const PairChannel& start, const std::vector<Level>& a_levels,
                                               const std::vector<Level>& b_levels, double field) {
    auto energy = [&](const Level& l) { return paper_breit_rabi(l.splitting, l.g_j, 1.5, l.f, l.m, field); };
    const double e0 = energy(start.a) + energy(start.b);
    std::vector<PairChannel> out;
    for (const auto& a : a_levels)
        for (const auto& b : b_levels) {
            if (a.m + b.m != start.a.m + start.b.m) continue;
            if (a.f == start.a.f && a.m == start.a.m && b.f == start.b.f && b.m == start.b.m) continue;
            if (energy(a) + energy(b) < e0) out.push_back({a, b});
        }
    return out;
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Gaussian-unit dipole-dipole rate: (mu^2 / r^3) / hbar with mu in
// statC cm (1 D = 1e-18), r in cm and hbar in erg s.
inline double cgs_dipole_rate(double mu_debye, double r_cm) {
    const double mu = mu_debye * 1e-18;
    return mu * mu / (r_cm * r_cm * r_cm) / 1.054571817e-27;
}

// Antiderivative of sin^4(W t / 2) from 0 to t.
inline double sin4_integral(double w, double t) {
    return 3.0 * t / 8.0 - std::sin(w * t) / (2.0 * w) + std::sin(2.0 * w * t) / (16.0 * w);
}

} // namespace oracle
