#pragma once

// Hyperfine Zeeman structure of ground-state alkali atoms, single-site
// addressing with a magnetic gradient, and collision-channel stability.
//
// Energies are linear frequencies (Hz). Fields are in gauss, lengths in cm
// for the addressing helpers (gradients are quoted in G/cm).

#include <string>
#include <vector>

namespace hybridgate::hyperfine {

/// Which Breit-Rabi variant to evaluate.
///
/// Paper: E/dE_hf = -1/12 +- 1/2 sqrt(1 + m x + x^2), x = g_J mu_B B / dE_hf,
/// exactly as used for the Rb-Li proposal. Standard: constant -1/(2(2I+1)),
/// m-coefficient 4/(2I+1), x built from (g_J - g_I), plus the nuclear
/// g_I mu_B m B term. The two agree on every transition frequency for I = 3/2
/// when g_I = 0.
enum class BreitRabiMode { Paper, Standard };

struct AtomSpecies {
    std::string name;
    double nuclear_spin = 1.5;       ///< I, half-integer
    double hyperfine_splitting = 0;  ///< dE_hf, Hz
    double g_j = 2.0;
    double g_i = 0.0;

    /// Throws DomainError unless I > 0, 2I integral and dE_hf > 0.
    void validate() const;
};

/// 87Rb: I = 3/2, dE_hf = 6.835 GHz, g_J = 2.00233.
AtomSpecies rb87();
/// 7Li: I = 3/2, dE_hf = 803.5 MHz (literature value), g_J = 2.00230.
AtomSpecies li7();

struct HyperfineState {
    int f = 0;
    int m = 0;

    friend bool operator==(const HyperfineState&, const HyperfineState&) = default;
};

/// f must be I +- 1/2 and |m| <= f.
bool is_valid_state(const AtomSpecies& species, const HyperfineState& state);

/// Every |f,m> of the species, ordered by f then m.
std::vector<HyperfineState> all_states(const AtomSpecies& species);

struct AtomInState {
    AtomSpecies species;
    HyperfineState state;
};

/// Two atoms colliding in a lattice site.
struct HyperfineChannel {
    AtomInState atom_a;
    AtomInState atom_b;

    int m_total() const { return atom_a.state.m + atom_b.state.m; }

    /// Same species names and same states.
    bool same_as(const HyperfineChannel& other) const;
};

std::string to_string(const HyperfineChannel& channel);

/// Qubit and enabled-qubit product states of the Rb-Li scheme.
struct QubitChannels {
    HyperfineChannel zero;          ///< |1,1>Rb (x) |2,2>Li
    HyperfineChannel one;           ///< |2,2>Rb (x) |2,2>Li
    HyperfineChannel enabled_zero;  ///< |1,1>Rb (x) |1,1>Li
    HyperfineChannel enabled_one;   ///< |2,2>Rb (x) |1,1>Li
};

QubitChannels rb_li_qubit_channels();

/// Level energy relative to the hyperfine centroid, Hz.
double breit_rabi_energy(const AtomSpecies& species, const HyperfineState& state, double field_gauss,
                         BreitRabiMode mode = BreitRabiMode::Paper);

/// E(upper) - E(lower), Hz. The constant offset cancels analytically.
double transition_frequency(const AtomSpecies& species, const HyperfineState& upper,
                            const HyperfineState& lower, double field_gauss,
                            BreitRabiMode mode = BreitRabiMode::Paper);

/// Analytic d(transition_frequency)/dB, Hz/G.
double field_sensitivity(const AtomSpecies& species, const HyperfineState& upper,
                         const HyperfineState& lower, double field_gauss,
                         BreitRabiMode mode = BreitRabiMode::Paper);

/// Qubit frequency change between neighbouring sites, Hz.
double site_frequency_resolution(double sensitivity_hz_per_gauss, double gradient_gauss_per_cm,
                                 double spacing_cm);

/// Number of sites per lattice dimension that fall inside a resonance of the
/// given width when the gradient is applied.
long resonance_site_count(double resonance_width_gauss, double gradient_gauss_per_cm,
                          double spacing_cm);

/// Sum of both atoms' internal energies, Hz. Kinetic energy is taken as zero.
double channel_energy(const HyperfineChannel& channel, double field_gauss,
                      BreitRabiMode mode = BreitRabiMode::Paper);

/// All channels of the same species pair with the same m_tot and strictly
/// lower internal energy, sorted by ascending energy. Empty means the channel
/// is collisionally stable.
std::vector<HyperfineChannel> open_decay_channels(const HyperfineChannel& channel, double field_gauss,
                                                  BreitRabiMode mode = BreitRabiMode::Paper);

} // namespace hybridgate::hyperfine
