#pragma once

#include "slopelab/lattice.hpp"

#include <map>
#include <optional>

namespace slopelab {

// Exploration budgets for the certified searches.  Exceeding a budget never
// aborts: results degrade from EXACT to LOWER_BOUND and say so.
struct EnumBudget {
    size_t maxShortVectors = 200000;
    size_t maxSubsets = 5000000;
    size_t maxAutomorphisms = 100000;

    static EnumBudget from_scale(size_t subsetCap) {
        EnumBudget b;
        b.maxSubsets = subsetCap;
        b.maxShortVectors = std::max<size_t>(1000, subsetCap / 25);
        return b;
    }
};

// Reads SLOPELAB_BUDGET from the environment if present, else defaults.
EnumBudget default_budget();

struct ShortVectorList {
    Rat bound;                             // on the squared norm
    std::vector<std::vector<Int>> vectors; // primitive, up to sign, sorted by (norm^2, lex)
    bool complete = true;                  // false only when the vector budget was hit

    std::vector<Rat> normsSq; // parallel to `vectors`
};

// Every primitive vector v (up to sign) with v G v^T <= bound, enumerated by
// exact branch-and-bound on the LDL^T decomposition of the gram matrix.
ShortVectorList short_vectors(const Lattice& L, const Rat& bound,
                              const EnumBudget& budget = default_budget());

struct MinimaResult {
    std::vector<Rat> lambdaSq;              // increasing squared minima
    std::vector<std::vector<Int>> vectors;  // attaining vectors, linearly independent
};

MinimaResult successive_minima_vectors(const Lattice& L);

// The minima reported as -log lambda_i (exact: lambda_i^2 is rational).
std::vector<LogRational> successive_minima(const Lattice& L);

enum class CertMode { EXACT, LOWER_BOUND };

struct SlopeCertificate {
    LogRational value;
    Sublattice witness;
    Rat completenessBound; // squared-norm search bound that was explored
    CertMode mode = CertMode::EXACT;
};

// One saturated sublattice discovered during polygon enumeration.
struct EnumeratedSub {
    QMat basis; // HNF rows
    LogRational nd;
    size_t rnk;
};

struct PolygonPoint {
    size_t rnk;
    LogRational value;            // upper concave hull value at this rank
    std::optional<QMat> witness;  // attaining sublattice basis, when one was found
    bool vertex = false;
};

struct PolygonResult {
    std::vector<PolygonPoint> points; // ranks 0..r
    bool exact = true;
    Rat exploredBound;                // largest squared-norm bound searched
    std::vector<EnumeratedSub> pool;  // deduped discoveries, for quotient-style checks
};

// Certified canonical-polygon computation.  Completeness rests on the bound
// lambda_k(F)^2 <= gamma_k^k det(F) / lambda_1(E)^{2(k-1)} for saturated F of
// slope >= slope(E): every such F is the saturation of k short vectors under
// that bound, and every polygon vertex has slope >= slope(E).
PolygonResult canonical_polygon_points(const Lattice& L,
                                       const EnumBudget& budget = default_budget());

SlopeCertificate max_slope(const Lattice& L, const EnumBudget& budget = default_budget());

// Best normalized degree over Z-rational rank-1 saturated sublattices,
// i.e. -log lambda_1; always EXACT.
SlopeCertificate first_degree_Z(const Lattice& L);

// Thrown when the automorphism cap is exceeded; carries what was found.
struct aut_cap_error : std::runtime_error {
    std::vector<QMat> partial;
    explicit aut_cap_error(std::vector<QMat> p)
        : std::runtime_error("automorphism group cap exceeded"), partial(std::move(p)) {}
};

// All integer U with U G U^T = G (the full orthogonal group of the form),
// by constraint-propagating row search.  Requires an integral gram; scale
// rational grams first.
std::vector<QMat> automorphism_group(const Lattice& L,
                                     const EnumBudget& budget = default_budget());

// Dimension of the commutant algebra {X : XU = UX for all U}.
size_t commutant_dimension(const std::vector<QMat>& group, size_t rank);

// Commutant test: dimension of {X : XU = UX for all U} equals 1.
bool is_absolutely_irreducible(const std::vector<QMat>& group, size_t rank);

} // namespace slopelab
