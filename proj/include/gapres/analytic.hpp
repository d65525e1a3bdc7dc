// analytic.hpp — Closed-form amplitudes for the perfect-gap resonant case,
// trapping-state limits, reservoir-mode amplitudes and the long-time spectrum.
//
// Amplitudes are stored in the frame rotating at omega_c (global phase
// e^{i omega_0 t} dropped); populations and every observable below depend
// only on moduli and on phase differences that survive the frame change.

#pragma once

#include <cmath>
#include <complex>

#include "gapres/core.hpp"

namespace gapres {

// Single-excitation pseudomode state at one instant.
struct AmplitudeState {
    double t{0.0};
    complexd c_a{1.0, 0.0};  // excited-atom amplitude
    complexd a_1{0.0, 0.0};  // pseudomode-1 amplitude (trapping partner)
    complexd a_2{0.0, 0.0};  // pseudomode-2 amplitude (decaying)
    double pi_j{0.0};        // vacuum-state population

    double trace() const noexcept {
        return std::norm(c_a) + std::norm(a_1) + std::norm(a_2) + pi_j;
    }
};

struct TrappingLimits {
    double c_a_inf{0.0};  // (1+eta^2)^-1
    double a_1_inf{0.0};  // eta (1+eta^2)^-1
    double pi_j_inf{0.0}; // eta^2 (1+eta^2)^-1
};

namespace detail {

// sin(delta t/2)/delta with the removable singularity handled by a series
// switch-over rather than an exact-zero test.
inline double half_sinc(double delta, double t) {
    const double z = 0.5 * delta * t;
    if (std::abs(delta * t) < 1e-6) return 0.5 * t * (1.0 - z * z / 6.0);
    return std::sin(z) / delta;
}

// Damped half-angle trig pair, grouped so that no intermediate grows:
//   ds = e^{-Gam t} sin(Om t/2)/Om,   dc = e^{-Gam t} cos(Om t/2).
// Valid verbatim for real and imaginary Om (both exponents decay for any
// admissible spec), with a series for the critically damped Om -> 0 corner.
struct DampedTrig {
    complexd ds;
    complexd dc;
};

inline DampedTrig damped_trig(const complexd& om, double gam, double t) {
    const complexd ep = std::exp((complexd(0.0, 0.5) * om - gam) * t);
    const complexd em = std::exp((complexd(0.0, -0.5) * om - gam) * t);
    DampedTrig d;
    d.dc = 0.5 * (ep + em);
    if (std::abs(om) * t < 1e-6) {
        const complexd z = 0.5 * om * t;
        d.ds = std::exp(-gam * t) * 0.5 * t * (1.0 - z * z / 6.0);
    } else {
        d.ds = (ep - em) / (complexd(0.0, 2.0) * om);
    }
    return d;
}

inline void require_closed_form(const ReservoirSpec& s, const char* op) {
    const auto r = validate_spec(s);
    if (!r.valid()) throw precondition_error(std::string(op) + " unavailable: " + r.summary());
    if (!r.perfect_gap)
        throw precondition_error(std::string(op) + " unavailable: spec is not a perfect gap (Gamma_1 W_2 != Gamma_2 W_1)");
    if (!r.resonant)
        throw precondition_error(std::string(op) + " unavailable: spec is detuned (omega_0 != omega_c)");
}

} // namespace detail

// Closed-form solution of the perfect-gap resonant amplitude equations with
// the atom initially excited. The Rabi frequency is carried as a complex
// number so the oscillatory and overdamped regimes share one code path.
inline AmplitudeState amplitudes_closed_form(const ReservoirSpec& s, double t) {
    detail::require_closed_form(s, "analytic solution");
    if (t < 0) throw precondition_error("analytic solution unavailable: t must be >= 0");

    const auto d = derive_constants(s);
    const double g1 = s.gamma1, g2 = s.gamma2, o0 = s.omega_big0;
    const double a = g1 * g2 + 4.0 * o0 * o0; // = 4 Gamma^2 + Omega^2
    const auto [ds, dc] = detail::damped_trig(d.big_omega, d.big_gamma, t);
    const double e2 = std::exp(-2.0 * d.big_gamma * t);

    AmplitudeState st;
    st.t = t;
    st.c_a = (4.0 / a) * (0.25 * g1 * g2 + 2.0 * o0 * o0 * (d.big_gamma * ds + 0.5 * dc));
    st.a_1 = -(2.0 * std::sqrt(g1 * g2) * o0 / a) * (1.0 - dc - 2.0 * d.big_gamma * ds);
    st.a_2 = complexd(0.0, -2.0 * o0) * ds;
    const complexd dsdc = ds * dc, ds2 = ds * ds;
    st.pi_j = (4.0 * o0 * o0 / a) *
              (1.0 - e2 - 4.0 * d.big_gamma * dsdc.real() - 8.0 * d.big_gamma * d.big_gamma * ds2.real());
    return st;
}

// t -> infinity limits of the trapping state.
inline TrappingLimits trapping_limits(const ReservoirSpec& s) {
    detail::require_closed_form(s, "trapping limits");
    const double eta = derive_constants(s).eta;
    const double den = 1.0 + eta * eta;
    return TrappingLimits{1.0 / den, eta / den, eta * eta / den};
}

// Interaction-picture amplitude of the reservoir mode at omega_lambda with
// coupling g_lambda, for the perfect-gap resonant case.
inline complexd bath_amplitude_closed_form(const ReservoirSpec& s, double omega_lambda,
                                           double t, double g_lambda) {
    detail::require_closed_form(s, "closed-form bath amplitude");
    if (t < 0) throw precondition_error("closed-form bath amplitude unavailable: t must be >= 0");

    const auto d = derive_constants(s);
    const double g1 = s.gamma1, g2 = s.gamma2, o0 = s.omega_big0;
    const double a = g1 * g2 + 4.0 * o0 * o0;
    const double delta = omega_lambda - s.omega_c;
    const auto [ds, dc] = detail::damped_trig(d.big_omega, d.big_gamma, t);
    const complexd i(0.0, 1.0);
    const complexd eidt = std::exp(i * delta * t);
    const complexd gmd = d.big_gamma - i * delta;
    const complexd den = 4.0 * gmd * gmd + d.big_omega * d.big_omega;

    const complexd t1 = 0.5 * g1 * g2 * std::exp(i * (0.5 * delta * t)) * detail::half_sinc(delta, t);
    const complexd t2 = 4.0 * o0 * o0 * (2.0 * d.big_gamma - i * delta) / den * (1.0 - eidt * dc);
    const complexd t3 = 2.0 * o0 * o0 *
                        (4.0 * (i * delta * d.big_gamma - d.big_gamma * d.big_gamma) + d.big_omega * d.big_omega) /
                        den * eidt * ds;
    return -4.0 * i * g_lambda / a * (t1 + t2 + t3);
}

// Asymptotic reservoir spectrum, valid once the pseudomode transients have
// died out. The gate t (Gamma_1+Gamma_2) >= 10 keeps neglected terms at the
// e^-5 scale or below.
inline double spectrum_longtime(const ReservoirSpec& s, double omega_lambda, double t) {
    detail::require_closed_form(s, "long-time spectrum");
    if (t * (s.gamma1 + s.gamma2) < 10.0)
        throw precondition_error("long-time spectrum: asymptotic formula outside validity window (t*(Gamma_1+Gamma_2) < 10)");

    const auto d = derive_constants(s);
    const double g1 = s.gamma1, g2 = s.gamma2, o0 = s.omega_big0;
    const double a = g1 * g2 + 4.0 * o0 * o0;
    const double delta = omega_lambda - s.omega_c;
    const complexd i(0.0, 1.0);
    const complexd gmd = d.big_gamma - i * delta;

    const complexd t1 = 0.5 * g1 * g2 * std::exp(i * (0.5 * delta * t)) * detail::half_sinc(delta, t);
    const complexd t2 = 4.0 * o0 * o0 * (2.0 * d.big_gamma - i * delta) /
                        (4.0 * gmd * gmd + d.big_omega * d.big_omega);
    const double pi = 3.14159265358979323846;
    return 8.0 * o0 * o0 * structure_function(s, omega_lambda) / (pi * a * a) * std::norm(t1 + t2);
}

} // namespace gapres
