#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "slopelab/lattice.hpp"
#include "slopelab/log_rational.hpp"
#include "slopelab/report.hpp"

namespace slopelab {

// Points with coordinates in one of the three smallest norm-Euclidean
// imaginary quadratic rings, used to realize lines of large degree inside
// tensor squares: Z[i], Z[omega] (omega a primitive cube root of unity,
// omega^2 = -1 - omega) and Z[sqrt(-2)].

enum class IQRing { GAUSS, EISENSTEIN, SQRT2 };

const char* to_string(IQRing r);

// a + b*tau with tau = i, omega, or sqrt(-2) depending on the ring.
struct IQElem {
    Int a, b;
};

bool iq_is_zero(const IQElem& x);
IQElem iq_add(const IQElem& x, const IQElem& y);
IQElem iq_sub(const IQElem& x, const IQElem& y);
IQElem iq_neg(const IQElem& x);
IQElem iq_conj(IQRing ring, const IQElem& x);
IQElem iq_mul(IQRing ring, const IQElem& x, const IQElem& y);
// a^2 + b^2, a^2 - a b + b^2, or a^2 + 2 b^2 -- always a nonnegative integer.
Int iq_norm(IQRing ring, const IQElem& x);
// real part: a, a - b/2, or a.
Rat iq_re(IQRing ring, const IQElem& x);

// Exact quotient x / d; throws "inexact division" when d does not divide x
// and "division by zero" on zero d.
IQElem iq_div_exact(IQRing ring, const IQElem& x, const IQElem& d);

// gcd by the Euclidean algorithm with round-to-nearest quotients (all three
// rings are norm-Euclidean, the remainder norm ratio is at most 3/4).  The
// result is defined up to units; iq_gcd(0, 0) = 0.
IQElem iq_gcd(IQRing ring, IQElem x, IQElem y);

struct IQVector {
    IQRing ring = IQRing::GAUSS;
    std::vector<IQElem> coords;
};

// Degree of the line spanned by v in the lattice L, for the hermitian
// extension of the gram form: v is first made primitive by dividing out the
// coordinate gcd, then the degree is -(1/2) log |v|^2 with
// |v|^2 = sum_ij G_ij Re(v_i conj(v_j)), an exact rational.  Throws
// "zero vector" and "vector has wrong ambient dimension".
LogRational iq_line_degree(const Lattice& L, const IQVector& v);

// For v in the root-basis coordinates of A_n, the ambient support bound
// deg <= -(1/2) log alpha, where alpha counts the nonzero coordinates of
// the ambient image (v_1, v_2 - v_1, ..., -v_n).  Exact on both sides; a
// FAIL would witness a genuine defect, since each nonzero ambient
// coordinate contributes at least 1 to the norm.
CheckReport check_An_alpha_bound(std::size_t n, const IQVector& v);

} // namespace slopelab
