#pragma once

#include "slopelab/charpoly.hpp"
#include "slopelab/log_rational.hpp"
#include "slopelab/matrix.hpp"

#include <string>

namespace slopelab {

// A Euclidean lattice: free Z-module of the given rank whose inner product is
// recorded by a rational symmetric positive definite gram matrix.
struct Lattice {
    size_t rank = 0;
    QMat gram;
    std::string label;

    Lattice() : gram(0, 0) {}
    Lattice(QMat g, std::string name);

    // Throws unless gram is symmetric with positive leading principal minors.
    void validate() const;
};

// A finite-index-free submodule of a parent lattice, spanned by the rows of
// `embedding` written in parent coordinates.
struct Sublattice {
    Lattice parent;
    QMat embedding; // rows = generators
    bool saturated = false;

    Sublattice(Lattice p, QMat rows, bool sat = false)
        : parent(std::move(p)), embedding(std::move(rows)), saturated(sat) {}
};

// A linear map between lattices; row i of `matrix` gives the image of the
// i-th source basis vector in target coordinates.
struct LinearMap {
    Lattice source, target;
    QMat matrix; // source.rank x target.rank
};

LogRational ndeg(const Lattice& L);
LogRational slope(const Lattice& L);

// Restriction of the parent metric to the span of the embedding rows.
Lattice induced(const Sublattice& sub);

Lattice dual(const Lattice& L);

// Orthogonal complement inside the dual lattice (dual-basis coordinates).
Sublattice orthogonal_complement(const Sublattice& sub);

// Quotient parent/sub with the quotient metric (orthogonal projection onto
// the complement of the span, expressed on a Z-basis of the quotient).
Lattice quotient(const Lattice& L, const QMat& subRows);

Lattice tensor(const Lattice& E, const Lattice& F);
Lattice exterior(const Lattice& E, size_t k);
Lattice det_line(const Lattice& E);
Lattice direct_sum(const Lattice& E, const Lattice& F);

// Enumerates the k-element subsets of {0..n-1} in lexicographic order; the
// exterior power basis is indexed by these.
std::vector<std::vector<size_t>> k_subsets(size_t n, size_t k);

// Height of a nonzero linear map: log of the archimedean operator norm minus
// log of the content of the matrix.  The archimedean part is algebraic, so an
// interval is returned (a point when the squared norm is rational).
Rat default_height_eps();

LogInterval height(const LinearMap& f, const Rat& eps = default_height_eps());

// Built-in gram matrices used throughout tests and the CLI.
QMat gram_identity(size_t n);
QMat gram_An(size_t n); // 2 on the diagonal, -1 on the off-diagonals

} // namespace slopelab
