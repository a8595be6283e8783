#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "hybridgate/constants.hpp"

namespace c = hybridgate::constants;

TEST_CASE("debye to SI") {
    CHECK(c::debye_to_si(1.0) == doctest::Approx(3.33564e-30).epsilon(1e-12));
    CHECK(c::debye_to_si(0.0) == 0.0);
    CHECK(c::debye_to_si(4.2) == doctest::Approx(1.40097e-29).epsilon(1e-6));
}

TEST_CASE("linear to angular") {
    CHECK(c::linear_to_angular(0.0) == 0.0);
    CHECK(c::linear_to_angular(1.0) == doctest::Approx(6.283185307179586).epsilon(1e-15));
    CHECK(c::linear_to_angular(1e6 / (2.0 * M_PI)) == doctest::Approx(1e6).epsilon(1e-15));
}

TEST_CASE("pinned constants golden values") {
    // Changing any of these is a breaking change.
    CHECK(c::bohr_magneton_freq == 1.399624604e6);
    CHECK(c::debye_to_coulomb_meter == 3.33564e-30);
    CHECK(c::reduced_planck == 1.054571817e-34);
    CHECK(c::vacuum_permittivity == 8.8541878128e-12);
    CHECK(c::pinned.hz_to_rad_factor == c::two_pi);
    static_assert(c::debye_to_si(2.0) == 2.0 * 3.33564e-30);
}

TEST_CASE("Hz <-> rad/s round trip within one ulp") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int i = 0; i < 200000; ++i) {
        const double x = std::ldexp(mant(rng), expo(rng));
        const double back = c::hz_to_rad(c::rad_to_hz(x));
        const double ulp = std::nextafter(std::abs(x), std::numeric_limits<double>::infinity()) - std::abs(x);
        REQUIRE(std::abs(back - x) <= ulp);
    }
    CHECK(c::hz_to_rad(c::rad_to_hz(0.0)) == 0.0);
}
