#pragma once

#include "slopelab/charpoly.hpp"
#include "slopelab/enumeration.hpp"
#include "slopelab/filtration.hpp"
#include "slopelab/lattice.hpp"
#include "slopelab/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace slopelab {

// Canonical polygon with its flag: polygon = upper concave hull of the
// (rank, best ndeg) cloud, flag = the saturated witnesses at the hull
// vertices (ascending, ending at the full lattice), slopes = the polygon
// increments mu_1 >= ... >= mu_r.
struct HNData {
    std::vector<std::pair<size_t, LogRational>> polygon; // (rank, hull value), ranks 0..r
    std::vector<Sublattice> flag;                        // nonzero vertex witnesses, ascending
    std::vector<LogRational> slopes;                     // r entries, weakly decreasing
    CertMode mode = CertMode::EXACT;
};

HNData hn_data(const Lattice& L, const EnumBudget& budget = default_budget());

enum class Verdict { YES, NO, INCONCLUSIVE };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::YES: return "YES";
        case Verdict::NO: return "NO";
        default: return "INCONCLUSIVE";
    }
}

struct SemistabilityCertificate {
    Verdict verdict = Verdict::INCONCLUSIVE;
    // Irreducible-automorphism route: the isometry group acts absolutely
    // irreducibly, which forces the canonical flag to be trivial.
    bool byAutomorphisms = false;
    size_t autOrder = 0;
    size_t commutantDim = 0;
    // Enumeration route: the certified maximal slope.
    std::optional<SlopeCertificate> slope;
    // Present exactly when verdict == NO.
    std::optional<Sublattice> destabilizer;
    std::string summary;
};

SemistabilityCertificate is_semistable(const Lattice& L,
                                       const EnumBudget& budget = default_budget());

// The slope-indexed filtration of Q^rank whose steps are the flag members
// and whose jump weights are the subquotient slopes.  Demands an EXACT
// polygon: a lower-bound polygon cannot pin the jumps.
RFiltration<LogRational> hn_rfiltration(const Lattice& L,
                                        const EnumBudget& budget = default_budget());

// Stieltjes sum (1/rk) * sum_i a_i * (ndeg sat(F_i) - ndeg sat(F_{i-1}))
// over the jumps of F; each step is saturated before taking its degree.
// A semistable lattice satisfies  value <= slope(L) * E[F]  for every F.
LogRational bogomolov_functional(const Lattice& L, const RFiltration<Rat>& F);

// Certified enclosure of the stable upper degree gap: lower end from the
// polygon sandwich (mu_min - l(r)/2, with l the harmonic sum), upper end
// the best quotient-line degree over the enumerated proper saturated
// sublattices (including the zero sublattice, i.e. the lattice itself).
LogInterval varsigma_estimate(const Lattice& L, const EnumBudget& budget = default_budget());

// Harmonic sum 1/2 + 1/3 + ... + 1/r as an exact rational (zero for r <= 1).
Rat harmonic_ell(size_t r);

enum class MapMode { INJECTIVE, SURJECTIVE, NONZERO };

// Verifies the slope inequality for the claimed mode of f (checked by exact
// rank): injective  mu_max(E) <= mu_max(F) + h(f); surjective  mu_min(E) <=
// mu_min(F) + h(f); nonzero  mu_min(E) <= mu_max(F) + h(f).  The height is
// an interval, so the verdict is PASS when the inequality holds against the
// sound end, FAIL only on certified violation, INCONCLUSIVE otherwise.
CheckReport slope_inequality_check(const LinearMap& f, MapMode mode,
                                   const EnumBudget& budget = default_budget());

} // namespace slopelab
