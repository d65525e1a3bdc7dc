// entanglement.hpp — Pairwise and collective concurrences in the pseudomode
// picture, the tangle, and the frequency-resolved densities of entanglement
// with their integrated totals.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gapres/analytic.hpp"
#include "gapres/core.hpp"
#include "gapres/dynamics.hpp"
#include "gapres/observables.hpp"

namespace gapres {

// Concurrence-squared values for the atom with each pseudomode and with the
// collective pseudomode qubit, plus the residual three-way tangle.
struct ConcurrenceRecord {
    double t{0.0};
    double c2_a1{0.0};
    double c2_a2{0.0};
    double c2_a12{0.0};
    double tangle{0.0};
};

// For the single-excitation mixed state the collective-qubit concurrence is
// C_{a,(12)} = 2 |c_a| sqrt(|a_1|^2 + |a_2|^2), so the tangle vanishes
// identically; computing both routes keeps that as a floating-point check.
inline ConcurrenceRecord concurrences(const AmplitudeState& st) {
    const double tr = st.trace();
    if (std::abs(tr - 1.0) > 1e-6)
        throw precondition_error("concurrences: state is not trace preserving (|trace-1| > 1e-6)");
    ConcurrenceRecord r;
    r.t = st.t;
    const double p = std::norm(st.c_a);
    r.c2_a1 = 4.0 * p * std::norm(st.a_1);
    r.c2_a2 = 4.0 * p * std::norm(st.a_2);
    r.c2_a12 = 4.0 * p * (std::norm(st.a_1) + std::norm(st.a_2));
    r.tangle = r.c2_a12 - r.c2_a1 - r.c2_a2;
    return r;
}

// Atom-modes density of entanglement, pointwise 4 |c_a|^2 S(omega_lambda, t).
inline std::vector<double> density_atom_modes(const complexd& c_a, const SpectrumSlice& s) {
    std::vector<double> e(s.values.size());
    const double p4 = 4.0 * std::norm(c_a);
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = p4 * s.values[k];
    return e;
}

// Mode-mode density of entanglement E_R(omega_lambda, omega_mu) =
// 2 S(omega_lambda) S(omega_mu). The matrix is rank one and symmetric, so it
// is generated row-wise; materializing all n^2 entries is never required.
class ModesDensity {
public:
    explicit ModesDensity(SpectrumSlice slice) : s_(std::move(slice)) {}

    std::size_t size() const noexcept { return s_.values.size(); }
    double t() const noexcept { return s_.t; }

    double value(std::size_t i, std::size_t j) const {
        return 2.0 * s_.values.at(i) * s_.values.at(j);
    }

    std::vector<double> row(std::size_t i) const {
        std::vector<double> r(size());
        const double si2 = 2.0 * s_.values.at(i);
        for (std::size_t j = 0; j < r.size(); ++j) r[j] = si2 * s_.values[j];
        return r;
    }

private:
    SpectrumSlice s_;
};

inline ModesDensity density_modes_modes(const SpectrumSlice& s) { return ModesDensity(s); }

struct EntanglementTotals {
    double c2_a_total{0.0};
    double c2_r_total{0.0};
    double c2_total{0.0};
};

// Quadratures of the two densities over the grid. The rank-one structure
// collapses the double integral to the square of the single one.
inline EntanglementTotals entanglement_totals(const complexd& c_a, const BathGrid& grid,
                                              const SpectrumSlice& s) {
    if (s.values.size() != grid.n_modes())
        throw std::invalid_argument("entanglement_totals: spectrum and grid have different sizes");
    const double total_s = spectrum_total(grid, s);
    EntanglementTotals tot;
    tot.c2_a_total = 4.0 * std::norm(c_a) * total_s;
    tot.c2_r_total = 2.0 * total_s * total_s;
    tot.c2_total = tot.c2_a_total + tot.c2_r_total;
    return tot;
}

} // namespace gapres
