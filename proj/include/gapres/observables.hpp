// observables.hpp — Reservoir spectrum and probability currents computed from
// discretized-bath states.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gapres/analytic.hpp"
#include "gapres/core.hpp"
#include "gapres/dynamics.hpp"

namespace gapres {

// Per-frequency excitation density S(omega_lambda, t) = rho |c_lambda|^2 with
// rho = 1/delta_omega; depends only on moduli, so it is frame independent.
struct SpectrumSlice {
    double t{0.0};
    std::vector<double> values;
};

// Probability currents J_{lambda,a}(t) plus their frequency integral Q(t).
struct CurrentSlice {
    double t{0.0};
    std::vector<double> j_values;
    double q{0.0};
};

namespace detail {

inline void check_same_grid(const BathGrid& grid, const BathState& state) {
    if (state.c_lambdas.size() != grid.n_modes())
        throw std::invalid_argument("bath state and grid have different mode counts");
}

// Trapezoidal quadrature of uniformly sampled values.
inline double trapezoid(const std::vector<double>& v, double dx) {
    if (v.size() < 2) return 0.0;
    double s = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
    return s * dx;
}

} // namespace detail

inline SpectrumSlice spectrum(const BathGrid& grid, const BathState& state) {
    detail::check_same_grid(grid, state);
    SpectrumSlice s;
    s.t = state.t;
    s.values.resize(grid.n_modes());
    const double rho = 1.0 / grid.delta_omega;
    for (std::size_t k = 0; k < grid.n_modes(); ++k)
        s.values[k] = rho * std::norm(state.c_lambdas[k]);
    return s;
}

inline double spectrum_total(const BathGrid& grid, const SpectrumSlice& s) {
    return detail::trapezoid(s.values, grid.delta_omega);
}

// Bath state built from the closed-form mode amplitudes; valid for
// perfect-gap resonant specs. Interchangeable with an integrate_bath
// snapshot wherever moduli and interaction-picture phases are consumed.
inline BathState analytic_bath_state(const ReservoirSpec& spec, const BathGrid& grid, double t) {
    BathState st;
    st.t = t;
    st.c_a = amplitudes_closed_form(spec, t).c_a;
    st.c_lambdas.resize(grid.n_modes());
    for (std::size_t k = 0; k < grid.n_modes(); ++k)
        st.c_lambdas[k] = bath_amplitude_closed_form(spec, grid.omegas[k], t, grid.couplings[k]);
    return st;
}

inline SpectrumSlice analytic_spectrum(const ReservoirSpec& spec, const BathGrid& grid, double t) {
    return spectrum(grid, analytic_bath_state(spec, grid, t));
}

// J = 2 Im{ rho g c~_lambda^* c~_a e^{i delta_lambda t} } with
// delta_lambda = omega_lambda - omega_0, the frame the interaction-picture
// amplitudes are stored in.
inline CurrentSlice current(const ReservoirSpec& spec, const BathGrid& grid,
                            const BathState& state) {
    detail::check_same_grid(grid, state);
    CurrentSlice c;
    c.t = state.t;
    c.j_values.resize(grid.n_modes());
    const double rho = 1.0 / grid.delta_omega;
    for (std::size_t k = 0; k < grid.n_modes(); ++k) {
        const double ph = (grid.omegas[k] - spec.omega_0) * state.t;
        const complexd e(std::cos(ph), std::sin(ph));
        c.j_values[k] =
            2.0 * rho * grid.couplings[k] * std::imag(std::conj(state.c_lambdas[k]) * state.c_a * e);
    }
    c.q = detail::trapezoid(c.j_values, grid.delta_omega);
    return c;
}

} // namespace gapres
