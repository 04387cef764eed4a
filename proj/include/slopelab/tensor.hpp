#pragma once

#include "slopelab/charpoly.hpp"
#include "slopelab/enumeration.hpp"
#include "slopelab/lattice.hpp"
#include "slopelab/report.hpp"

#include <cstdint>
#include <vector>

namespace slopelab {

// An element s of E (x) F, stored as the rkE x rkF coefficient matrix M with
// s = sum_{i,j} M(i,j) e_i (x) f_j.  Viewed as a linear map E^dual -> F, the
// i-th dual basis vector maps to the i-th row of M.
struct TensorElement {
    Lattice left;
    Lattice right;
    QMat matrix;

    TensorElement(Lattice l, Lattice r, QMat m);
};

// vec(s): the element's coordinates in the tensor lattice basis, row-major
// ((i,j) -> i * rkF + j, matching kron()).
std::vector<Rat> tensor_vec(const TensorElement& s);

// A subspace of E (x) F given by exactly independent generators.
struct TensorSubspace {
    Lattice left;
    Lattice right;
    std::vector<TensorElement> generators;

    TensorSubspace(Lattice l, Lattice r, std::vector<QMat> gens);
    std::size_t dim() const { return generators.size(); }

    // Generators as rows of a dim x (rkE*rkF) matrix, row-major coordinates.
    QMat flat() const;
};

// The saturation of V inside the tensor lattice, carrying the induced
// (hermitian tensor product) metric.
Lattice saturated_span(const TensorSubspace& V);

// Rank of the coefficient matrix: the least number of split vectors summing
// to s.  Throws std::invalid_argument("zero element") when s == 0.
std::size_t tensorial_rank(const TensorElement& s);

// The canonical element of E (x) E^dual corresponding to id_E (coefficient
// matrix = identity); its tensorial rank is rk(E).
TensorElement trace_element(const Lattice& E);

// Squared hermitian (Hilbert-Schmidt) norm: vec(s)^T kron(G_E, G_F) vec(s).
Rat hs_norm_sq(const TensorElement& s);

// Squared operator norm of s : E^dual -> F, i.e. the largest eigenvalue of
// the pencil (M G_F M^T, G_E^{-1}).  Always <= hs_norm_sq, with equality for
// split (rank one) elements.
EigenInterval eps_norm_sq(const TensorElement& s, const Rat& eps = default_height_eps());

enum class TensorMetric { HERMITIAN, EPSILON };

// Arakelov degree of the saturated line Q*s inside the tensor lattice:
// -log of the norm of a primitive generator.  Exact for the hermitian
// metric; a certified enclosure for the epsilon (operator) metric.
LogRational line_degree_hermitian(const TensorElement& s);
LogInterval line_degree_eps(const TensorElement& s, const Rat& eps = default_height_eps());
LogInterval line_degree(const TensorElement& s, TensorMetric metric,
                        const Rat& eps = default_height_eps());

// Checks the rank-penalised line bound for M = Q*s in two forms:
//   ndeg(M)  <=  slope(E1) + slope(F1) - (1/2) log rho(s)      (images E1, F1)
//   ndeg(M)  <=  mumax(E) + mumax(F)  - (1/2) log rho(s)
// where E1 (resp. F1) is the saturated image of s in E (resp. F).  The first
// form is exact; the second may be INCONCLUSIVE when the maximal slopes are
// only certified as lower bounds.
CheckReport check_majoration(const TensorElement& s, const EnumBudget& budget = default_budget());

// Checks that the operator-norm line degree of s is at most
// mumax(E) + mumax(F); interval-valued on the left, so the verdict is PASS
// only when the whole enclosure sits on the allowed side.
CheckReport check_eps_first_degree(const TensorElement& s,
                                   const EnumBudget& budget = default_budget());

// Two-sided enclosure of one successive tensorial rank.
struct RankBound {
    std::size_t lo = 1;
    std::size_t hi = 0;
    bool certified = false; // lo == hi with both sides proved
};

// rho_i(V) = min { k : dim(V cap D_k) >= i } for i = 1..dim V, where D_k is
// the determinantal cone of elements of tensorial rank <= k and dim is the
// dimension of the intersection as an algebraic set.
struct RankProfile {
    std::vector<RankBound> perIndex;
};

RankProfile rho_profile(const TensorSubspace& V);

// Checks  slope(V) <= mumax(E) + mumax(F) + (1/2) ell(r) - (1/(2r)) sum_i log rho_i(V)
// with rho lower bounds on the right (so a FAIL is a certified violation).
CheckReport check_majo_de_mu(const TensorSubspace& V, const EnumBudget& budget = default_budget());

// Greedy decomposition of a lattice into independent lines of maximal degree
// (successive minima vectors), together with the exact correction terms that
// tie the line degrees back to ndeg:
//   ndeg(L) = sum_i degrees[i] + gramCorrection + indexCorrection
// where gramCorrection = -1/2 log(det gram(v) / prod |v_i|^2) >= 0 (Hadamard)
// and indexCorrection = log [L : Z v_1 + ... + Z v_r] >= 0.  The Zhang-style
// upper bound ndeg(L) <= sum + (r/2) ell(r) is reported as a heuristic
// verdict: it is a theorem for lines over the algebraic closure, and the
// greedy integral lines may miss it without indicating any defect.
struct SiegelLines {
    std::vector<std::vector<Int>> vectors; // chosen primitive vectors, basis coords
    std::vector<LogRational> degrees;      // -log |v_i|
    LogRational degreeSum;
    LogRational gramCorrection;
    LogRational indexCorrection;
    CheckStatus zhangRight = CheckStatus::INCONCLUSIVE; // heuristic, never FAIL
    bool complete = true;
};

SiegelLines siegel_lines(const Lattice& L);
SiegelLines siegel_lines(const TensorSubspace& V);

// For rank-2 lattices E, F and rational bases (e1,e2), (f1,f2) (rows of
// eBasis, fBasis), checks the split-plane bound
//   ndeg(span(e1 (x) f1, e2 (x) f2)) <= slope(E) + slope(F)
// exactly.  The span is saturated before measuring.
CheckReport check_2stable(const Lattice& E, const Lattice& F, const QMat& eBasis,
                          const QMat& fBasis);

// Local inequality behind check_2stable, compared on exact squared norms:
//   |e1 (x) f1 ^ e2 (x) f2|^2 >= |e1 ^ e2|^2 * |f1 ^ f2|^2.
CheckReport check_rk2loc(const Lattice& E, const Lattice& F, const QMat& eBasis,
                         const QMat& fBasis);

} // namespace slopelab
