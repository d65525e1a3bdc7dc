// core.hpp — Reservoir parameters, validation, structure function, derived constants
//
// All rates and frequencies are expressed in units of the overall coupling
// strength Omega_0 by default (omega_big0 = 1); any consistent absolute unit
// system works as well since only ratios enter the dynamics.

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gapres {

using complexd = std::complex<double>;

inline constexpr double kNormTol = 1e-12;   // weight normalization tolerance
inline constexpr double kGapRelTol = 1e-12; // perfect-gap detection, relative

// ----------------------------------- errors ---------------------------------

// Rejection of an operation whose validity gate failed (invalid spec,
// missing perfect gap / resonance, asymptotic formula outside its window).
class precondition_error : public std::domain_error {
public:
    explicit precondition_error(const std::string& what) : std::domain_error(what) {}
};

// Numeric failure inside an integrator; carries the time reached.
class integration_error : public std::runtime_error {
public:
    integration_error(const std::string& what, double t_reached)
        : std::runtime_error(what), t_reached_(t_reached) {}
    double t_reached() const noexcept { return t_reached_; }
private:
    double t_reached_;
};

// ------------------------------- reservoir spec ------------------------------

// Structure-function and atom parameters; the single source of truth from
// which every derived constant is computed.
struct ReservoirSpec {
    double gamma1{1.0};      // width of first Lorentzian
    double gamma2{0.0};      // width of second Lorentzian (0 drops it)
    double w1{1.0};          // weight of first Lorentzian
    double w2{0.0};          // weight of second Lorentzian
    double omega_c{0.0};     // common Lorentzian centre / gap frequency
    double omega_0{0.0};     // atomic transition frequency
    double omega_big0{1.0};  // overall coupling strength Omega_0
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool perfect_gap{false};   // D(omega_c) = 0 exactly (two-Lorentzian gap)
    bool resonant{false};      // omega_0 = omega_c
    bool oscillatory{false};   // 16 Omega_0^2 > (Gamma_1 - Gamma_2)^2

    bool valid() const noexcept { return violations.empty(); }

    std::string summary() const {
        if (valid()) return "valid";
        std::string s = "invalid spec:";
        for (const auto& v : violations) s += " [" + v + "]";
        return s;
    }
};

// Report every violated invariant; never throws. Downstream operations use
// require_valid() to turn a bad report into a rejection.
inline ValidationReport validate_spec(const ReservoirSpec& s) {
    ValidationReport r;
    auto bad = [&](const std::string& m) { r.violations.push_back(m); };

    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(s.gamma1) || !finite(s.gamma2) || !finite(s.w1) || !finite(s.w2) ||
        !finite(s.omega_c) || !finite(s.omega_0) || !finite(s.omega_big0)) {
        bad("non-finite parameter");
        return r;
    }

    if (!(s.gamma1 > 0)) bad("gamma1 must be > 0");
    if (s.gamma2 < 0) bad("gamma2 must be >= 0");
    if (!(s.w1 > 0)) bad("w1 must be > 0");
    if (s.w2 < 0) bad("w2 must be >= 0");
    if (!(s.omega_big0 > 0)) bad("omega_big0 must be > 0");
    if (s.w2 > 0 && s.gamma2 == 0) bad("gamma2 must be > 0 when w2 > 0");

    if (std::abs(s.w1 - s.w2 - 1.0) > kNormTol) {
        std::ostringstream os;
        os << "normalization w1 - w2 = 1 violated (got " << (s.w1 - s.w2) << ")";
        bad(os.str());
    }

    // D(omega) >= 0 everywhere iff both pseudomode decay rates are nonnegative.
    const double gp1 = s.w1 * s.gamma2 - s.w2 * s.gamma1;
    const double gp2 = s.w1 * s.gamma1 - s.w2 * s.gamma2;
    const double gap_scale = std::max(std::abs(s.w1 * s.gamma2), std::abs(s.w2 * s.gamma1));
    if (gp1 < -kGapRelTol * gap_scale) bad("structure function dips negative at the centre (w1*gamma2 < w2*gamma1)");
    if (!(gp2 > 0)) bad("structure function negative in the wings (w1*gamma1 <= w2*gamma2)");

    // The gap condition Gamma_1 W_2 = Gamma_2 W_1 is trivially met when the
    // second Lorentzian is absent, but then D(omega_c) > 0: not a gap.
    r.perfect_gap = s.w2 > 0 && std::abs(s.gamma1 * s.w2 - s.gamma2 * s.w1) <= kGapRelTol * gap_scale;
    const double fscale = std::max({1.0, std::abs(s.omega_c), std::abs(s.omega_0)});
    r.resonant = std::abs(s.omega_0 - s.omega_c) <= 1e-12 * fscale;
    const double dg = s.gamma1 - s.gamma2;
    r.oscillatory = 16.0 * s.omega_big0 * s.omega_big0 > dg * dg;
    return r;
}

inline void require_valid(const ReservoirSpec& s) {
    const auto r = validate_spec(s);
    if (!r.valid()) throw precondition_error(r.summary());
}

// ------------------------------ structure function ---------------------------

// D(omega): difference of two Lorentzians sharing the centre omega_c,
// normalized so that the full line integral is 2*pi when w1 - w2 = 1.
inline double structure_function(const ReservoirSpec& s, double omega) {
    require_valid(s);
    const double x2 = (omega - s.omega_c) * (omega - s.omega_c);
    double d = s.w1 * s.gamma1 / (x2 + 0.25 * s.gamma1 * s.gamma1);
    if (s.w2 > 0) d -= s.w2 * s.gamma2 / (x2 + 0.25 * s.gamma2 * s.gamma2);
    return d;
}

// Exact integral of D over [omega_c - half_width, omega_c + half_width].
inline double structure_function_window_integral(const ReservoirSpec& s, double half_width) {
    require_valid(s);
    double v = 4.0 * s.w1 * std::atan(2.0 * half_width / s.gamma1);
    if (s.w2 > 0) v -= 4.0 * s.w2 * std::atan(2.0 * half_width / s.gamma2);
    return v;
}

// ------------------------------ derived constants ----------------------------

struct DerivedConstants {
    double gamma_p1{0.0};   // first pseudomode decay  Gamma'_1 = W1 G2 - W2 G1
    double gamma_p2{0.0};   // second pseudomode decay Gamma'_2 = W1 G1 - W2 G2
    double v{0.0};          // inter-pseudomode coupling V = sqrt(W1 W2)(G1-G2)/2
    double big_gamma{0.0};  // Gamma = (G1+G2)/4
    complexd big_omega{};   // Omega = sqrt(16 O0^2 - (G1-G2)^2)/2, principal branch
    double eta{0.0};        // eta = 2 O0 / sqrt(G1 G2); +inf when gamma2 = 0
};

inline DerivedConstants derive_constants(const ReservoirSpec& s) {
    require_valid(s);
    DerivedConstants d;
    d.gamma_p1 = s.w1 * s.gamma2 - s.w2 * s.gamma1;
    d.gamma_p2 = s.w1 * s.gamma1 - s.w2 * s.gamma2;
    d.v = std::sqrt(s.w1 * s.w2) * (s.gamma1 - s.gamma2) / 2.0;
    d.big_gamma = 0.25 * (s.gamma1 + s.gamma2);
    const double dg = s.gamma1 - s.gamma2;
    const double radicand = 16.0 * s.omega_big0 * s.omega_big0 - dg * dg;
    d.big_omega = radicand >= 0 ? complexd(0.5 * std::sqrt(radicand), 0.0)
                                : complexd(0.0, 0.5 * std::sqrt(-radicand));
    d.eta = s.gamma2 > 0 ? 2.0 * s.omega_big0 / std::sqrt(s.gamma1 * s.gamma2)
                         : std::numeric_limits<double>::infinity();
    return d;
}

} // namespace gapres
