#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "gapres/observables.hpp"
#include "support.hpp"

using namespace gapres;
using Catch::Approx;

namespace {

ReservoirSpec fig1_spec() { return {10.0, 0.2, 50.0 / 49.0, 1.0 / 49.0, 0.0, 0.0, 1.0}; }

} // namespace

TEST_CASE("spectrum of the vacuum is zero and the gap stays dark") {
    const auto s = fig1_spec();
    const auto g = build_bath_grid(s, 801, 20.0); // odd: gap mode on the grid
    const auto states = integrate_bath(s, g, {0.0, 4.0, 12.0}, 1e-9);

    const auto s0 = spectrum(g, states[0]);
    for (double v : s0.values) CHECK(v == 0.0);

    const std::size_t gap = 400;
    REQUIRE(g.omegas[gap] == Approx(s.omega_c).margin(1e-12));
    for (const auto& st : states) {
        const auto sl = spectrum(g, st);
        CHECK(sl.values[gap] == 0.0);
        for (double v : sl.values) CHECK(v >= 0.0);
    }
}

TEST_CASE("spectrum rejects mismatched grids") {
    const auto s = fig1_spec();
    const auto g = build_bath_grid(s, 100, 10.0);
    BathState st;
    st.c_lambdas.resize(50);
    CHECK_THROWS_AS(spectrum(g, st), std::invalid_argument);
    CHECK_THROWS_AS(current(s, g, st), std::invalid_argument);
}

TEST_CASE("spectral weight accounts for the atom's loss") {
    const auto s = fig1_spec();
    const auto g = build_bath_grid(s, 1501, 30.0);
    const auto states = integrate_bath(s, g, testsupport::linspace(0.0, 20.0, 11), 1e-9);
    for (const auto& st : states) {
        const auto sl = spectrum(g, st);
        CHECK(spectrum_total(g, sl) + std::norm(st.c_a) == Approx(1.0).margin(1e-3));
    }
}

TEST_CASE("spectrum is frame invariant") {
    const auto s = fig1_spec();
    const auto g = build_bath_grid(s, 401, 10.0);
    auto states = integrate_bath(s, g, {0.0, 3.0}, 1e-9);
    auto rotated = states[1];
    for (std::size_t k = 0; k < rotated.c_lambdas.size(); ++k)
        rotated.c_lambdas[k] *= std::polar(1.0, 0.3 * static_cast<double>(k));
    const auto a = spectrum(g, states[1]);
    const auto b = spectrum(g, rotated);
    for (std::size_t k = 0; k < a.values.size(); ++k)
        CHECK(a.values[k] == Approx(b.values[k]).margin(1e-15));
}

TEST_CASE("currents start at zero and balance the atom's population flow") {
    const auto s = fig1_spec();
    const auto g = build_bath_grid(s, 2000, 40.0);
    const double h = 1e-3;
    const std::vector<double> t_grid{0.0, 5.0 - h, 5.0, 5.0 + h};
    const auto states = integrate_bath(s, g, t_grid, 1e-9);

    const auto c0 = current(s, g, states[0]);
    for (double j : c0.j_values) CHECK(j == 0.0);
    CHECK(c0.q == 0.0);

    const auto c5 = current(s, g, states[2]);
    const double dpdt =
        (std::norm(states[3].c_a) - std::norm(states[1].c_a)) / (2.0 * h);
    CHECK(c5.q == Approx(-dpdt).epsilon(1e-3));
}

TEST_CASE("analytic bath state feeds the same observables") {
    const auto s = fig1_spec();
    const auto g = build_bath_grid(s, 1201, 30.0);
    const auto oracle = integrate_bath(s, g, {0.0, 15.0}, 1e-10).back();
    const auto closed = analytic_bath_state(s, g, 15.0);

    const auto so = spectrum(g, oracle);
    const auto sc = analytic_spectrum(s, g, 15.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < so.values.size(); ++k)
        if (so.values[k] > 1e-8)
            worst = std::max(worst, std::abs(so.values[k] - sc.values[k]) / so.values[k]);
    CHECK(worst <= 1e-2);

    const auto co = current(s, g, oracle);
    const auto cc = current(s, g, closed);
    double jscale = 0.0;
    for (double j : co.j_values) jscale = std::max(jscale, std::abs(j));
    for (std::size_t k = 0; k < co.j_values.size(); ++k)
        CHECK(co.j_values[k] == Approx(cc.j_values[k]).margin(1e-2 * jscale));
}
