#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "gapres/analytic.hpp"
#include "support.hpp"

using namespace gapres;
using Catch::Approx;

namespace {

ReservoirSpec fig1_spec() { return {10.0, 0.2, 50.0 / 49.0, 1.0 / 49.0, 0.0, 0.0, 1.0}; }
ReservoirSpec strong_spec() { return {0.5, 0.01, 50.0 / 49.0, 1.0 / 49.0, 0.0, 0.0, 1.0}; }

} // namespace

TEST_CASE("closed form starts from the excited atom") {
    const auto st = amplitudes_closed_form(fig1_spec(), 0.0);
    CHECK(st.c_a == complexd(1.0, 0.0));
    CHECK(st.a_1 == complexd(0.0, 0.0));
    CHECK(st.a_2 == complexd(0.0, 0.0));
    CHECK(st.pi_j == 0.0);
}

TEST_CASE("closed form reaches the trapping populations at t=50") {
    const auto st = amplitudes_closed_form(fig1_spec(), 50.0);
    CHECK(std::norm(st.c_a) == Approx(1.0 / 9.0).margin(1e-6));
    CHECK(std::norm(st.a_1) == Approx(2.0 / 9.0).margin(1e-6));
    CHECK(std::norm(st.a_2) <= 1e-9);
    CHECK(st.pi_j == Approx(2.0 / 3.0).margin(1e-6));
}

TEST_CASE("closed form is trace preserving at finite times") {
    for (double t : {1.0, 5.0, 25.0})
        CHECK(amplitudes_closed_form(fig1_spec(), t).trace() == Approx(1.0).margin(1e-12));
}

TEST_CASE("trace preservation for random perfect-gap specs over [0,100]") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 20; ++i) {
        const auto s = testsupport::random_spec(rng, true);
        double worst = 0.0;
        for (double t : testsupport::linspace(0.0, 100.0, 401))
            worst = std::max(worst, std::abs(amplitudes_closed_form(s, t).trace() - 1.0));
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("closed forms satisfy the amplitude equations (finite differences)") {
    // Rotating frame at omega_c, resonant perfect gap:
    //   i c_a' = O0 a2,  i a1' = (V) a2,  i a2' = -i(G1+G2)/2 a2 + O0 c_a + V a1
    for (const auto& s : {fig1_spec(), strong_spec()}) {
        const auto d = derive_constants(s);
        const double h = 1e-5;
        double worst = 0.0;
        for (double t : testsupport::linspace(h, 20.0, 301)) {
            const auto p = amplitudes_closed_form(s, t - h);
            const auto q = amplitudes_closed_form(s, t + h);
            const auto m = amplitudes_closed_form(s, t);
            const complexd i(0.0, 1.0);
            const complexd dca = (q.c_a - p.c_a) / (2.0 * h);
            const complexd da1 = (q.a_1 - p.a_1) / (2.0 * h);
            const complexd da2 = (q.a_2 - p.a_2) / (2.0 * h);
            worst = std::max(worst, std::abs(dca + i * s.omega_big0 * m.a_2));
            worst = std::max(worst, std::abs(da1 + i * d.v * m.a_2));
            worst = std::max(worst, std::abs(da2 + 0.5 * d.gamma_p2 * m.a_2 +
                                             i * (s.omega_big0 * m.c_a + d.v * m.a_1)));
        }
        CHECK(worst <= 1e-6 * s.omega_big0);
    }
}

TEST_CASE("trapping limits at eta = sqrt(2)") {
    const auto lim = trapping_limits(fig1_spec());
    CHECK(lim.c_a_inf == Approx(1.0 / 3.0).margin(1e-14));
    CHECK(lim.a_1_inf == Approx(std::sqrt(2.0) / 3.0).margin(1e-14));
    CHECK(lim.pi_j_inf == Approx(2.0 / 3.0).margin(1e-14));
    CHECK(lim.c_a_inf * lim.c_a_inf + lim.a_1_inf * lim.a_1_inf + lim.pi_j_inf ==
          Approx(1.0).margin(1e-14));
}

TEST_CASE("trapping limits approach the uncoupled and fully-leaked extremes") {
    // eta -> 0: everything stays on the atom
    ReservoirSpec weak{200.0, 4.0, 50.0 / 49.0, 1.0 / 49.0, 0.0, 0.0, 1.0}; // eta ~ 0.07
    const auto lw = trapping_limits(weak);
    CHECK(lw.c_a_inf > 0.99);
    CHECK(lw.pi_j_inf < 0.01);
    // eta >> 1: all the population is transferred to the reservoir
    ReservoirSpec strong{0.05, 0.001, 50.0 / 49.0, 1.0 / 49.0, 0.0, 0.0, 1.0}; // eta ~ 283
    const auto ls = trapping_limits(strong);
    CHECK(ls.c_a_inf < 1e-4);
    CHECK(ls.pi_j_inf > 0.9999);
}

TEST_CASE("closed form matches the limits once transients die") {
    std::mt19937 rng(555);
    for (int i = 0; i < 10; ++i) {
        const auto s = testsupport::random_spec(rng, true);
        const auto d = derive_constants(s);
        // slowest decay rate of the transient envelope
        const double rate = d.big_gamma - 0.5 * std::abs(d.big_omega.imag());
        const double t = 30.0 / rate;
        const auto st = amplitudes_closed_form(s, t);
        const auto lim = trapping_limits(s);
        CHECK(std::norm(st.c_a) == Approx(lim.c_a_inf * lim.c_a_inf).margin(1e-6));
        CHECK(std::norm(st.a_1) == Approx(lim.a_1_inf * lim.a_1_inf).margin(1e-6));
        CHECK(st.pi_j == Approx(lim.pi_j_inf).margin(1e-6));
    }
}

TEST_CASE("damped trig pair is even in the Rabi frequency") {
    // Every closed form consumes Omega only through ds, dc and Omega^2, so
    // the branch choice for the square root is observationally irrelevant.
    for (const auto& s : {fig1_spec(), strong_spec()}) {
        const auto d = derive_constants(s);
        for (double t : {0.3, 2.0, 17.0}) {
            const auto plus = detail::damped_trig(d.big_omega, d.big_gamma, t);
            const auto minus = detail::damped_trig(-d.big_omega, d.big_gamma, t);
            CHECK(std::abs(plus.ds - minus.ds) <= 1e-15);
            CHECK(std::abs(plus.dc - minus.dc) <= 1e-15);
        }
    }
}

TEST_CASE("vacuum population equals the quadrature of the mode-2 drain") {
    // d Pi/dt = Gamma'_2 |a_2|^2 with Gamma'_2 = Gamma_1 + Gamma_2 for a
    // perfect gap; checked against an independent adaptive quadrature.
    for (const auto& s : {fig1_spec(), strong_spec()}) {
        auto a2sq = [&](double tau) { return std::norm(amplitudes_closed_form(s, tau).a_2); };
        for (double t : {1.0, 5.0, 25.0}) {
            const double quad = (s.gamma1 + s.gamma2) * testsupport::adaptive_simpson(a2sq, 0.0, t, 1e-12);
            CHECK(amplitudes_closed_form(s, t).pi_j == Approx(quad).margin(1e-8));
        }
    }
}

TEST_CASE("analytic operations reject imperfect gaps and detuning by name") {
    ReservoirSpec imperfect{2.0, 1.0, 1.5, 0.5, 0.0, 0.0, 1.0};
    REQUIRE(validate_spec(imperfect).valid());
    CHECK_THROWS_AS(amplitudes_closed_form(imperfect, 1.0), precondition_error);
    CHECK_THROWS_WITH(trapping_limits(imperfect), Catch::Matchers::ContainsSubstring("perfect gap"));

    ReservoirSpec detuned = fig1_spec();
    detuned.omega_0 = 0.5;
    CHECK_THROWS_WITH(amplitudes_closed_form(detuned, 1.0),
                      Catch::Matchers::ContainsSubstring("detuned"));
    CHECK_THROWS_AS(amplitudes_closed_form(fig1_spec(), -1.0), precondition_error);
}

TEST_CASE("bath amplitude closed form: initial value and removable singularity") {
    const auto s = fig1_spec();
    for (double delta : {-3.0, 0.0, 0.4})
        CHECK(std::abs(bath_amplitude_closed_form(s, s.omega_c + delta, 0.0, 0.01)) <= 1e-15);

    // finite at the gap point and continuous across the series switch-over
    const double t = 7.0;
    const complexd at_zero = bath_amplitude_closed_form(s, s.omega_c, t, 0.01);
    CHECK(std::isfinite(std::abs(at_zero)));
    const double eps = 1e-6 / t;
    const complexd below = bath_amplitude_closed_form(s, s.omega_c + 0.99 * eps, t, 0.01);
    const complexd above = bath_amplitude_closed_form(s, s.omega_c + 1.01 * eps, t, 0.01);
    CHECK(std::abs(below - above) <= 1e-9 * std::abs(at_zero));
}

TEST_CASE("long-time spectrum: validity gate and gap value") {
    const auto s = fig1_spec();
    CHECK_THROWS_WITH(spectrum_longtime(s, 0.1, 0.5),
                      Catch::Matchers::ContainsSubstring("validity window"));
    CHECK(spectrum_longtime(s, s.omega_c, 50.0) == 0.0);
    CHECK(spectrum_longtime(s, s.omega_c + 0.3, 50.0) >= 0.0);
}

TEST_CASE("long-time spectrum matches the full mode-amplitude route") {
    const auto s = fig1_spec();
    const double t = 50.0;
    const double two_pi = 2.0 * 3.14159265358979323846;
    double worst = 0.0;
    for (double delta : testsupport::linspace(-5.0, 5.0, 801)) {
        if (std::abs(delta) < 1e-9) continue; // the gap point itself is an exact zero
        // S = rho |c_lambda|^2 with rho g^2 = Omega0^2 D / 2pi; evaluate with g = 1
        const complexd cl = bath_amplitude_closed_form(s, s.omega_c + delta, t, 1.0);
        const double s19 = structure_function(s, s.omega_c + delta) / two_pi *
                           s.omega_big0 * s.omega_big0 * std::norm(cl);
        const double s20 = spectrum_longtime(s, s.omega_c + delta, t);
        worst = std::max(worst, std::abs(s20 - s19) / s19);
    }
    CHECK(worst <= 1e-3);
}

TEST_CASE("the reservoir spectrum keeps moving in the trapped regime") {
    const auto s = fig1_spec();
    const double a = spectrum_longtime(s, s.omega_c + 0.05, 50.0);
    const double b = spectrum_longtime(s, s.omega_c + 0.05, 55.0);
    CHECK(std::abs(a - b) > 1e-3 * std::abs(a));
}
