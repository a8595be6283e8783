#include <doctest.h>

#include <cmath>

#include "hybridgate/errors.hpp"
#include "hybridgate/hyperfine.hpp"
#include "oracles.hpp"

using namespace hybridgate;
using namespace hybridgate::hyperfine;

namespace {
const HyperfineState k22{2, 2};
const HyperfineState k21{2, 1};
const HyperfineState k11{1, 1};
} // namespace

TEST_CASE("species presets") {
    const auto rb = rb87();
    CHECK(rb.nuclear_spin == 1.5);
    CHECK(rb.hyperfine_splitting == 6.835e9);
    CHECK(rb.g_j == 2.00233);
    const auto li = li7();
    CHECK(li.hyperfine_splitting == 803.5e6);
    CHECK(li.g_j == 2.00230);
    CHECK(all_states(rb).size() == 8);
}

TEST_CASE("species validation") {
    AtomSpecies bad = rb87();
    bad.nuclear_spin = 1.3;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = rb87();
    bad.hyperfine_splitting = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = rb87();
    bad.nuclear_spin = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("state validity") {
    const auto rb = rb87();
    CHECK(is_valid_state(rb, {2, -2}));
    CHECK(is_valid_state(rb, {1, 0}));
    CHECK_FALSE(is_valid_state(rb, {1, 2}));
    CHECK_FALSE(is_valid_state(rb, {3, 0}));
    CHECK_FALSE(is_valid_state(rb, {0, 0}));
    CHECK_THROWS_AS(breit_rabi_energy(rb, {3, 3}, 10.0), DomainError);
    CHECK_THROWS_AS(breit_rabi_energy(rb, {1, -2}, 10.0), DomainError);

    AtomSpecies integer_spin{"X", 1.0, 1e9, 2.0, 0.0};
    CHECK_FALSE(is_valid_state(integer_spin, {1, 0}));
    CHECK(all_states(integer_spin).empty());
}

TEST_CASE("Breit-Rabi energies, paper mode") {
    const auto rb = rb87();
    CHECK(breit_rabi_energy(rb, k22, 0.0) == doctest::Approx(2.84792e9).epsilon(1e-5));
    CHECK(breit_rabi_energy(rb, k22, 0.0) / rb.hyperfine_splitting == doctest::Approx(5.0 / 12.0).epsilon(1e-14));
    CHECK(breit_rabi_energy(rb, k11, 0.0) == doctest::Approx(-3.98708e9).epsilon(1e-5));
    CHECK(breit_rabi_energy(rb, k22, 649.0) == doctest::Approx(3.757e9).epsilon(1e-3));
    // Literal oracle over a grid of states and fields.
    for (const auto& s : all_states(rb))
        for (double b : {0.0, 1.0, 50.0, 649.0, 1500.0})
            CHECK(breit_rabi_energy(rb, s, b) ==
                  doctest::Approx(oracle::paper_breit_rabi(rb.hyperfine_splitting, rb.g_j, 1.5, s.f, s.m, b))
                      .epsilon(1e-13));
}

TEST_CASE("Breit-Rabi standard mode") {
    const auto rb = rb87();
    // Constant -1/8 instead of -1/12 for I = 3/2.
    CHECK(breit_rabi_energy(rb, k22, 0.0, BreitRabiMode::Standard) / rb.hyperfine_splitting ==
          doctest::Approx(0.375).epsilon(1e-14));
    // Transition frequencies agree with paper mode when g_I = 0.
    for (double b : {0.0, 100.0, 649.0})
        CHECK(transition_frequency(rb, k22, k11, b, BreitRabiMode::Standard) ==
              doctest::Approx(transition_frequency(rb, k22, k11, b)).epsilon(1e-14));
    // Lower stretched state stays linear through x = 1.
    const double x1 = rb.hyperfine_splitting / (rb.g_j * 1.399624604e6);
    const double e_lo = breit_rabi_energy(rb, {2, -2}, 0.5 * x1, BreitRabiMode::Standard);
    const double e_mid = breit_rabi_energy(rb, {2, -2}, x1, BreitRabiMode::Standard);
    const double e_hi = breit_rabi_energy(rb, {2, -2}, 1.5 * x1, BreitRabiMode::Standard);
    CHECK(e_mid - e_lo == doctest::Approx(e_hi - e_mid).epsilon(1e-9));
    // Nuclear term enters through x and through g_I mu_B m B.
    AtomSpecies with_gi = rb;
    with_gi.g_i = -0.000995;
    const double b = 100.0;
    const double x = (with_gi.g_j - with_gi.g_i) * 1.399624604e6 * b / with_gi.hyperfine_splitting;
    const double expected = with_gi.hyperfine_splitting * 0.5 * ((1.0 + x) + std::sqrt(1.0 + x + x * x)) +
                            with_gi.g_i * 1.399624604e6 * b;
    CHECK(transition_frequency(with_gi, k22, k11, b, BreitRabiMode::Standard) ==
          doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("negative radicand is a hard error") {
    // I = 7/2, m = -4: 1 - 4x + x^2 < 0 for x in (0.27, 3.73).
    AtomSpecies cs{"Cs133", 3.5, 9.192631770e9, 2.00254, 0.0};
    const double x_to_field = cs.hyperfine_splitting / (cs.g_j * 1.399624604e6);
    CHECK_NOTHROW(breit_rabi_energy(cs, {4, -4}, 0.1 * x_to_field));
    CHECK_THROWS_AS(breit_rabi_energy(cs, {4, -4}, 1.0 * x_to_field), DomainError);
    CHECK_THROWS_AS(field_sensitivity(cs, {4, -4}, {3, -3}, 1.0 * x_to_field), DomainError);
    CHECK_THROWS_AS(breit_rabi_energy(cs, {4, 4}, -1.0), DomainError);
}

TEST_CASE("qubit transition frequency") {
    const auto rb = rb87();
    CHECK(transition_frequency(rb, k22, k11, 649.0) == doctest::Approx(8.28e9).epsilon(1e-3));
    CHECK(std::abs(transition_frequency(rb, k22, k11, 649.0) / 8.3e9 - 1.0) < 0.01);
    CHECK(transition_frequency(rb, k22, k11, 0.0) == rb.hyperfine_splitting);
    CHECK(transition_frequency(rb, k22, k21, 0.0) == 0.0);
}

TEST_CASE("zero-field splitting equals dE_hf exactly for every shared m") {
    for (const auto& sp : {rb87(), li7()})
        for (int m = -1; m <= 1; ++m) CHECK(transition_frequency(sp, {2, m}, {1, m}, 0.0) == sp.hyperfine_splitting);
}

TEST_CASE("transition frequency is antisymmetric") {
    const auto rb = rb87();
    const auto states = all_states(rb);
    for (const auto& u : states)
        for (const auto& l : states)
            for (double b : {0.0, 3.0, 649.0, 2000.0})
                CHECK(transition_frequency(rb, u, l, b) == -transition_frequency(rb, l, u, b));
}

TEST_CASE("field sensitivity") {
    const auto rb = rb87();
    CHECK(field_sensitivity(rb, k22, k11, 649.0) == doctest::Approx(2.33e6).epsilon(2e-3));
    CHECK(std::abs(field_sensitivity(rb, k22, k11, 649.0) / 2.38e6 - 1.0) < 0.03);
    CHECK(field_sensitivity(rb, k22, k11, 0.0) == doctest::Approx(0.75 * 2.00233 * 1.399624604e6).epsilon(1e-12));
    CHECK(field_sensitivity(rb, k22, k11, 0.0) == doctest::Approx(2.102e6).epsilon(1e-3));
    // Paschen-Back asymptote g_J mu_B.
    CHECK(field_sensitivity(rb, k22, k11, 1e9) == doctest::Approx(2.803e6).epsilon(1e-3));
}

TEST_CASE("field sensitivity matches central finite differences") {
    const auto rb = rb87();
    const auto li = li7();
    for (const auto& [sp, u, l] : {std::tuple{rb, k22, k11}, std::tuple{rb, HyperfineState{2, 0}, HyperfineState{1, -1}},
                                   std::tuple{li, k22, k11}})
        for (double b = 1.0; b <= 2000.0; b *= 1.7) {
            auto f = [&, sp = sp, u = u, l = l](double field) {
                return oracle::paper_breit_rabi(sp.hyperfine_splitting, sp.g_j, 1.5, u.f, u.m, field) -
                       oracle::paper_breit_rabi(sp.hyperfine_splitting, sp.g_j, 1.5, l.f, l.m, field);
            };
            const double fd = oracle::central_difference(f, b, 0.01);
            CHECK(field_sensitivity(sp, u, l, b) == doctest::Approx(fd).epsilon(1e-6));
        }
}

TEST_CASE("site addressing") {
    CHECK(site_frequency_resolution(2.33e6, 1000.0, 5e-5) == doctest::Approx(1.165e5).epsilon(1e-12));
    CHECK(site_frequency_resolution(2.33e6, 0.0, 5e-5) == 0.0);
    CHECK(site_frequency_resolution(2.38e6, 2000.0, 5e-5) == doctest::Approx(2.38e5).epsilon(1e-12));
    CHECK_THROWS_AS(site_frequency_resolution(-1.0, 1.0, 1.0), DomainError);

    CHECK(resonance_site_count(5.0, 1000.0, 5e-5) == 100);
    CHECK(resonance_site_count(0.0, 1000.0, 5e-5) == 0);
    CHECK(resonance_site_count(2.0, 2000.0, 5e-5) == 20);
    CHECK(resonance_site_count(0.049, 1000.0, 5e-5) == 0);
    CHECK_THROWS_AS(resonance_site_count(5.0, 0.0, 5e-5), DomainError);
    CHECK_THROWS_AS(resonance_site_count(5.0, 1000.0, 0.0), DomainError);
}

TEST_CASE("qubit channel presets") {
    const auto q = rb_li_qubit_channels();
    CHECK(to_string(q.zero) == "|1,1>Rb87+|2,2>Li7");
    CHECK(to_string(q.one) == "|2,2>Rb87+|2,2>Li7");
    CHECK(to_string(q.enabled_zero) == "|1,1>Rb87+|1,1>Li7");
    CHECK(to_string(q.enabled_one) == "|2,2>Rb87+|1,1>Li7");
    CHECK(q.one.m_total() == 4);
    CHECK(q.enabled_one.m_total() == 3);
}

TEST_CASE("collision channel stability") {
    const auto q = rb_li_qubit_channels();
    const auto decays = open_decay_channels(q.enabled_one, 649.0);
    bool has_named_product = false;
    for (const auto& c : decays)
        if (to_string(c) == "|1,1>Rb87+|2,2>Li7") has_named_product = true;
    CHECK(has_named_product);
    CHECK(open_decay_channels(q.one, 649.0).empty());
    CHECK(open_decay_channels(q.enabled_zero, 649.0).empty());
    // Energy bookkeeping for the named decay: Rb releases more than Li costs.
    const auto rb = rb87();
    const auto li = li7();
    const double release = transition_frequency(rb, k22, k11, 649.0);
    const double cost = transition_frequency(li, k22, k11, 649.0);
    CHECK(release == doctest::Approx(8.28e9).epsilon(1e-3));
    CHECK(cost == doctest::Approx(2.47e9).epsilon(2e-3));
    CHECK(release > cost);
}

TEST_CASE("open channels agree with exhaustive enumeration") {
    const auto rb = rb87();
    const auto li = li7();
    const auto rb_levels = oracle::levels_i32("Rb87", rb.hyperfine_splitting, rb.g_j);
    const auto li_levels = oracle::levels_i32("Li7", li.hyperfine_splitting, li.g_j);
    for (double b : {0.5, 10.0, 200.0, 649.0, 1200.0}) {
        for (const auto& a : all_states(rb))
            for (const auto& c : all_states(li)) {
                const HyperfineChannel ch{{rb, a}, {li, c}};
                const auto got = open_decay_channels(ch, b);
                const oracle::PairChannel start{{"Rb87", rb.hyperfine_splitting, rb.g_j, a.f, a.m},
                                                {"Li7", li.hyperfine_splitting, li.g_j, c.f, c.m}};
                const auto expected = oracle::lower_channels(start, rb_levels, li_levels, b);
                REQUIRE(got.size() == expected.size());
                for (const auto& g : got) {
                    CHECK_FALSE(g.same_as(ch));
                    CHECK(g.m_total() == ch.m_total());
                    CHECK(channel_energy(g, b) < channel_energy(ch, b));
                }
            }
    }
}
