// dynamics.hpp — Numerical integration of the two-pseudomode amplitude
// equations (imperfect gap and detuning allowed) and of the discretized-bath
// Schrödinger equations used as the brute-force oracle.
//
// Both integrators use an adaptive Dormand–Prince 5(4) stepper with dense
// output sampled onto the caller's time grid; the tolerance is applied as a
// mixed absolute+relative per-step bound. Pseudomode amplitudes live in the
// frame rotating at omega_c, bath amplitudes in the interaction picture
// defined against omega_0 (explicit e^{±i delta_lambda t} factors).

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "gapres/analytic.hpp"
#include "gapres/core.hpp"

namespace gapres {

// ------------------------------- bath grid -----------------------------------

// Uniform frequency grid over [omega_c - cutoff, omega_c + cutoff] with
// per-mode couplings g_lambda = Omega_0 sqrt(D(omega_lambda) dw / 2pi).
struct BathGrid {
    std::vector<double> omegas;
    std::vector<double> couplings;
    double cutoff{0.0};
    double delta_omega{0.0};
    double coverage{0.0}; // sum g^2 / Omega_0^2
    std::vector<std::string> warnings;

    std::size_t n_modes() const noexcept { return omegas.size(); }

    // Times beyond this are contaminated by the spurious refeeding of a
    // discrete bath; an oracle validity limit, not physics.
    double recurrence_horizon() const noexcept {
        return 2.0 * 3.14159265358979323846 / delta_omega;
    }
};

inline BathGrid build_bath_grid(const ReservoirSpec& s, std::size_t n_modes, double cutoff) {
    require_valid(s);
    if (n_modes < 2) throw std::invalid_argument("build_bath_grid: n_modes must be >= 2");
    if (!(cutoff > 0)) throw std::invalid_argument("build_bath_grid: cutoff must be > 0");

    BathGrid g;
    g.cutoff = cutoff;
    g.delta_omega = 2.0 * cutoff / static_cast<double>(n_modes - 1);
    g.omegas.resize(n_modes);
    g.couplings.resize(n_modes);
    const double two_pi = 2.0 * 3.14159265358979323846;
    double sum_g2 = 0.0;
    for (std::size_t k = 0; k < n_modes; ++k) {
        const double w = s.omega_c - cutoff + static_cast<double>(k) * g.delta_omega;
        g.omegas[k] = w;
        // clamp the rounding-level negative values D can take inside the gap
        const double d = std::max(structure_function(s, w), 0.0);
        g.couplings[k] = s.omega_big0 * std::sqrt(d * g.delta_omega / two_pi);
        sum_g2 += g.couplings[k] * g.couplings[k];
    }
    g.coverage = sum_g2 / (s.omega_big0 * s.omega_big0);
    if (g.coverage < 0.99) {
        std::ostringstream os;
        os << "coverage ratio " << g.coverage << " < 0.99: the window [omega_c +/- " << cutoff
           << "] misses part of the coupling weight; widen the cutoff for a tighter oracle";
        g.warnings.push_back(os.str());
    }
    return g;
}

// Discretized-bath state; c_lambdas are interaction-picture amplitudes.
struct BathState {
    double t{0.0};
    complexd c_a{1.0, 0.0};
    std::vector<complexd> c_lambdas;

    double norm() const noexcept {
        double n = std::norm(c_a);
        for (const auto& c : c_lambdas) n += std::norm(c);
        return n;
    }
};

// --------------------------- dense-output driver -----------------------------

namespace detail {

inline void check_time_grid(const std::vector<double>& t_grid, double tol) {
    if (t_grid.empty()) throw std::invalid_argument("time grid must be non-empty");
    if (t_grid.front() != 0.0) throw std::invalid_argument("time grid must start at 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw std::invalid_argument("time grid must be strictly increasing");
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be > 0");
}

// Integrate sys from t=0 and hand the interpolated state at every grid time
// to the observer. The observer sees states in grid order exactly once.
template <class State, class System, class Observer>
void integrate_on_grid(System sys, State y0, const std::vector<double>& t_grid, double tol,
                       Observer&& observe) {
    namespace ode = boost::numeric::odeint;
    observe(t_grid.front(), y0);
    if (t_grid.size() == 1) return;

    auto stepper = ode::make_dense_output(tol, tol, ode::runge_kutta_dopri5<State>());
    stepper.initialize(y0, 0.0, 1e-4);
    std::size_t next = 1;
    State sample = y0;
    while (next < t_grid.size()) {
        try {
            stepper.do_step(sys);
        } catch (const std::exception& e) {
            throw integration_error(std::string("integration failed: ") + e.what(),
                                    stepper.current_time());
        }
        while (next < t_grid.size() && t_grid[next] <= stepper.current_time()) {
            stepper.calc_state(t_grid[next], sample);
            observe(t_grid[next], sample);
            ++next;
        }
    }
}

} // namespace detail

// --------------------------- pseudomode integrator ----------------------------

// General two-pseudomode amplitude equations in the frame rotating at
// omega_c; the vacuum population is accumulated alongside as
// d Pi/dt = Gamma'_1 |a_1|^2 + Gamma'_2 |a_2|^2.
inline std::vector<AmplitudeState> integrate_pseudomodes(const ReservoirSpec& s,
                                                         const std::vector<double>& t_grid,
                                                         double tol) {
    require_valid(s);
    detail::check_time_grid(t_grid, tol);
    const auto d = derive_constants(s);
    const double det = s.omega_0 - s.omega_c;
    const double o0 = s.omega_big0, v = d.v, gp1 = d.gamma_p1, gp2 = d.gamma_p2;

    using State = std::array<double, 7>; // (Re,Im) x (c_a, a_1, a_2), Pi
    auto rhs = [=](const State& y, State& dy, double /*t*/) {
        const complexd ca(y[0], y[1]), a1(y[2], y[3]), a2(y[4], y[5]);
        const complexd i(0.0, 1.0);
        const complexd dca = -i * (det * ca + o0 * a2);
        const complexd da1 = -i * (v * a2) - 0.5 * gp1 * a1;
        const complexd da2 = -i * (o0 * ca + v * a1) - 0.5 * gp2 * a2;
        dy = {dca.real(), dca.imag(), da1.real(), da1.imag(), da2.real(), da2.imag(),
              gp1 * std::norm(a1) + gp2 * std::norm(a2)};
    };

    std::vector<AmplitudeState> out;
    out.reserve(t_grid.size());
    detail::integrate_on_grid<State>(rhs, State{1, 0, 0, 0, 0, 0, 0}, t_grid, tol,
                                     [&](double t, const State& y) {
                                         AmplitudeState st;
                                         st.t = t;
                                         st.c_a = {y[0], y[1]};
                                         st.a_1 = {y[2], y[3]};
                                         st.a_2 = {y[4], y[5]};
                                         st.pi_j = y[6];
                                         out.push_back(st);
                                     });
    return out;
}

// ------------------------------ bath integrator ------------------------------

// Schrödinger equations for the atom plus n discrete modes, interaction
// picture taken literally: the detunings enter as explicit phase factors and
// the state stays O(n_modes) in memory.
inline std::vector<BathState> integrate_bath(const ReservoirSpec& s, const BathGrid& grid,
                                             const std::vector<double>& t_grid, double tol) {
    require_valid(s);
    detail::check_time_grid(t_grid, tol);
    const std::size_t n = grid.n_modes();
    if (n == 0 || grid.couplings.size() != n)
        throw std::invalid_argument("integrate_bath: malformed grid");

    std::vector<double> deltas(n);
    for (std::size_t k = 0; k < n; ++k) deltas[k] = grid.omegas[k] - s.omega_0;
    const std::vector<double>& g = grid.couplings;

    using State = std::vector<double>; // [Re c_a, Im c_a, Re c_0, Im c_0, ...]
    auto rhs = [&](const State& y, State& dy, double t) {
        const double car = y[0], cai = y[1];
        double sr = 0.0, si = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double ph = deltas[k] * t;
            const double c = std::cos(ph), sn = std::sin(ph);
            const double clr = y[2 + 2 * k], cli = y[3 + 2 * k];
            // e^{-i ph} c_k accumulated for the atom equation
            sr += g[k] * (clr * c + cli * sn);
            si += g[k] * (cli * c - clr * sn);
            // dc_k = -i g e^{+i ph} c_a
            const double er = car * c - cai * sn;
            const double ei = cai * c + car * sn;
            dy[2 + 2 * k] = g[k] * ei;
            dy[3 + 2 * k] = -g[k] * er;
        }
        dy[0] = si;   // dc_a = -i * (sr + i si)
        dy[1] = -sr;
    };

    State y0(2 * (n + 1), 0.0);
    y0[0] = 1.0;
    std::vector<BathState> out;
    out.reserve(t_grid.size());
    detail::integrate_on_grid<State>(rhs, std::move(y0), t_grid, tol,
                                     [&](double t, const State& y) {
                                         BathState st;
                                         st.t = t;
                                         st.c_a = {y[0], y[1]};
                                         st.c_lambdas.resize(n);
                                         for (std::size_t k = 0; k < n; ++k)
                                             st.c_lambdas[k] = {y[2 + 2 * k], y[3 + 2 * k]};
                                         out.push_back(std::move(st));
                                     });
    return out;
}

} // namespace gapres
