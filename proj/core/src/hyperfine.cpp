#include "hybridgate/hyperfine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hybridgate/constants.hpp"
#include "hybridgate/errors.hpp"

namespace hybridgate::hyperfine {

namespace {

struct ModeTerms {
    double offset;        // constant term, units of dE_hf
    double m_coefficient; // multiplies m*x under the root
    double x_per_gauss;
    double nuclear_per_gauss; // g_I mu_B, Hz/G, multiplied by m
};

ModeTerms mode_terms(const AtomSpecies& s, BreitRabiMode mode) {
    const double dim = 2.0 * s.nuclear_spin + 1.0;
    switch (mode) {
    case BreitRabiMode::Paper:
        return {-1.0 / 12.0, 1.0, s.g_j * constants::bohr_magneton_freq / s.hyperfine_splitting, 0.0};
    case BreitRabiMode::Standard:
        return {-1.0 / (2.0 * dim), 4.0 / dim,
                (s.g_j - s.g_i) * constants::bohr_magneton_freq / s.hyperfine_splitting,
                s.g_i * constants::bohr_magneton_freq};
    }
    throw DomainError("unknown Breit-Rabi mode");
}

int branch_sign(const AtomSpecies& s, const HyperfineState& st) {
    return 2 * st.f > static_cast<int>(std::lround(2.0 * s.nuclear_spin)) ? 1 : -1;
}

bool is_lower_stretched(const AtomSpecies& s, const HyperfineState& st) {
    return branch_sign(s, st) > 0 && st.m == -st.f;
}

void require_state(const AtomSpecies& s, const HyperfineState& st) {
    s.validate();
    if (!is_valid_state(s, st)) {
        std::ostringstream msg;
        msg << "invalid hyperfine state |" << st.f << "," << st.m << "> for " << s.name;
        throw DomainError(msg.str());
    }
}

double radicand(const ModeTerms& t, const HyperfineState& st, double x) {
    return 1.0 + t.m_coefficient * st.m * x + x * x;
}

// +-1/2 sqrt(1 + c m x + x^2) in units of dE_hf.
double root_term(const AtomSpecies& s, const HyperfineState& st, double field, BreitRabiMode mode) {
    require_state(s, st);
    if (field < 0.0 || !std::isfinite(field)) throw DomainError("magnetic field must be finite and >= 0");
    const ModeTerms t = mode_terms(s, mode);
    const double x = t.x_per_gauss * field;
    const int sign = branch_sign(s, st);
    if (mode == BreitRabiMode::Standard && is_lower_stretched(s, st)) {
        // (1 - x)^2 under the root; the level is linear through x = 1.
        return 0.5 * (1.0 - x);
    }
    const double r = radicand(t, st, x);
    if (r < 0.0) {
        std::ostringstream msg;
        msg << "negative Breit-Rabi radicand for " << s.name << " |" << st.f << "," << st.m << "> at B = " << field
            << " G";
        throw DomainError(msg.str());
    }
    return sign * 0.5 * std::sqrt(r);
}

double root_term_derivative(const AtomSpecies& s, const HyperfineState& st, double field, BreitRabiMode mode) {
    require_state(s, st);
    if (field < 0.0 || !std::isfinite(field)) throw DomainError("magnetic field must be finite and >= 0");
    const ModeTerms t = mode_terms(s, mode);
    const double x = t.x_per_gauss * field;
    if (mode == BreitRabiMode::Standard && is_lower_stretched(s, st)) return -0.5 * t.x_per_gauss;
    const double r = radicand(t, st, x);
    if (r <= 0.0) throw DomainError("Breit-Rabi level not differentiable at this field");
    const int sign = branch_sign(s, st);
    return sign * 0.5 * (t.m_coefficient * st.m + 2.0 * x) / (2.0 * std::sqrt(r)) * t.x_per_gauss;
}

} // namespace

void AtomSpecies::validate() const {
    const double twice = 2.0 * nuclear_spin;
    if (!(nuclear_spin > 0.0) || twice != std::round(twice))
        throw DomainError("nuclear spin of " + name + " must be a positive multiple of 1/2");
    if (!(hyperfine_splitting > 0.0) || !std::isfinite(hyperfine_splitting))
        throw DomainError("hyperfine splitting of " + name + " must be positive");
}

AtomSpecies rb87() { return {"Rb87", 1.5, 6.835e9, 2.00233, 0.0}; }

AtomSpecies li7() { return {"Li7", 1.5, 803.5e6, 2.00230, 0.0}; }

bool is_valid_state(const AtomSpecies& species, const HyperfineState& state) {
    const long twice_i = std::lround(2.0 * species.nuclear_spin);
    if (twice_i % 2 == 0) return false; // f would be half-integer
    const int upper = static_cast<int>((twice_i + 1) / 2);
    const int lower = upper - 1;
    if (state.f != upper && state.f != lower) return false;
    if (state.f < 0) return false;
    return std::abs(state.m) <= state.f;
}

std::vector<HyperfineState> all_states(const AtomSpecies& species) {
    species.validate();
    std::vector<HyperfineState> out;
    const long twice_i = std::lround(2.0 * species.nuclear_spin);
    if (twice_i % 2 == 0) return out;
    const int upper = static_cast<int>((twice_i + 1) / 2);
    for (int f : {upper - 1, upper}) {
        for (int m = -f; m <= f; ++m) out.push_back({f, m});
    }
    return out;
}

bool HyperfineChannel::same_as(const HyperfineChannel& other) const {
    return atom_a.species.name == other.atom_a.species.name && atom_b.species.name == other.atom_b.species.name &&
           atom_a.state == other.atom_a.state && atom_b.state == other.atom_b.state;
}

std::string to_string(const HyperfineChannel& c) {
    std::ostringstream os;
    os << "|" << c.atom_a.state.f << "," << c.atom_a.state.m << ">" << c.atom_a.species.name << "+|"
       << c.atom_b.state.f << "," << c.atom_b.state.m << ">" << c.atom_b.species.name;
    return os.str();
}

QubitChannels rb_li_qubit_channels() {
    const AtomSpecies rb = rb87();
    const AtomSpecies li = li7();
    return {
        {{rb, {1, 1}}, {li, {2, 2}}},
        {{rb, {2, 2}}, {li, {2, 2}}},
        {{rb, {1, 1}}, {li, {1, 1}}},
        {{rb, {2, 2}}, {li, {1, 1}}},
    };
}

double breit_rabi_energy(const AtomSpecies& species, const HyperfineState& state, double field_gauss,
                         BreitRabiMode mode) {
    const double root = root_term(species, state, field_gauss, mode);
    const ModeTerms t = mode_terms(species, mode);
    return species.hyperfine_splitting * (t.offset + root) + t.nuclear_per_gauss * state.m * field_gauss;
}

double transition_frequency(const AtomSpecies& species, const HyperfineState& upper, const HyperfineState& lower,
                            double field_gauss, BreitRabiMode mode) {
    const double ru = root_term(species, upper, field_gauss, mode);
    const double rl = root_term(species, lower, field_gauss, mode);
    const ModeTerms t = mode_terms(species, mode);
    return species.hyperfine_splitting * (ru - rl) + t.nuclear_per_gauss * (upper.m - lower.m) * field_gauss;
}

double field_sensitivity(const AtomSpecies& species, const HyperfineState& upper, const HyperfineState& lower,
                         double field_gauss, BreitRabiMode mode) {
    const double du = root_term_derivative(species, upper, field_gauss, mode);
    const double dl = root_term_derivative(species, lower, field_gauss, mode);
    const ModeTerms t = mode_terms(species, mode);
    return species.hyperfine_splitting * (du - dl) + t.nuclear_per_gauss * (upper.m - lower.m);
}

double site_frequency_resolution(double sensitivity_hz_per_gauss, double gradient_gauss_per_cm, double spacing_cm) {
    if (sensitivity_hz_per_gauss < 0.0 || gradient_gauss_per_cm < 0.0 || spacing_cm < 0.0)
        throw DomainError("addressing inputs must be non-negative");
    return sensitivity_hz_per_gauss * gradient_gauss_per_cm * spacing_cm;
}

long resonance_site_count(double resonance_width_gauss, double gradient_gauss_per_cm, double spacing_cm) {
    if (resonance_width_gauss < 0.0) throw DomainError("resonance width must be non-negative");
    if (!(gradient_gauss_per_cm > 0.0)) throw DomainError("field gradient must be positive");
    if (!(spacing_cm > 0.0)) throw DomainError("lattice spacing must be positive");
    const double ratio = resonance_width_gauss / (gradient_gauss_per_cm * spacing_cm);
    // Ratios a few ulps below an integer are that integer.
    return static_cast<long>(std::floor(ratio * (1.0 + 1e-12)));
}

double channel_energy(const HyperfineChannel& channel, double field_gauss, BreitRabiMode mode) {
    return breit_rabi_energy(channel.atom_a.species, channel.atom_a.state, field_gauss, mode) +
           breit_rabi_energy(channel.atom_b.species, channel.atom_b.state, field_gauss, mode);
}

std::vector<HyperfineChannel> open_decay_channels(const HyperfineChannel& channel, double field_gauss,
                                                  BreitRabiMode mode) {
    const double start = channel_energy(channel, field_gauss, mode);
    const int m_tot = channel.m_total();

    std::vector<std::pair<double, HyperfineChannel>> found;
    for (const auto& sa : all_states(channel.atom_a.species)) {
        for (const auto& sb : all_states(channel.atom_b.species)) {
            if (sa.m + sb.m != m_tot) continue;
            HyperfineChannel candidate{{channel.atom_a.species, sa}, {channel.atom_b.species, sb}};
            if (candidate.same_as(channel)) continue;
            const double e = channel_energy(candidate, field_gauss, mode);
            if (e < start) found.emplace_back(e, std::move(candidate));
        }
    }
    std::stable_sort(found.begin(), found.end(), [](const auto& l, const auto& r) { return l.first < r.first; });

    std::vector<HyperfineChannel> out;
    out.reserve(found.size());
    for (auto& [e, c] : found) out.push_back(std::move(c));
    return out;
}

} // namespace hybridgate::hyperfine
