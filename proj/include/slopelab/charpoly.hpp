#pragma once

#include "slopelab/log_rational.hpp"
#include "slopelab/matrix.hpp"

namespace slopelab {

// Certified enclosure of a real algebraic number (largest eigenvalue or
// squared singular value).  exact == true means lower == upper == the value.
struct EigenInterval {
    Rat lower, upper;
    bool exact = false;

    double mid_double() const { return (rat_to_double(lower) + rat_to_double(upper)) / 2; }
};

// Coefficients low -> high of det(lambda*B - A), computed exactly by
// evaluation at n+1 rational points and Lagrange interpolation.
std::vector<Rat> pencil_charpoly(const QMat& A, const QMat& B);

inline std::vector<Rat> charpoly(const QMat& A) {
    return pencil_charpoly(A, QMat::identity(A.rows()));
}

// Polynomial utilities over Q (dense, low -> high order).
Rat poly_eval(const std::vector<Rat>& p, const Rat& x);
std::vector<Rat> poly_derivative(const std::vector<Rat>& p);

// Number of distinct real roots in (a, b] via Sturm sequences.
int sturm_count(const std::vector<Rat>& p, const Rat& a, const Rat& b);

// Certified enclosure of the largest real root of p (assumed to exist), of
// width <= eps; tries to pin the root exactly (simple rational roots are
// detected and returned as points).
EigenInterval largest_root_interval(const std::vector<Rat>& p, const Rat& eps);

// Largest eigenvalue of a symmetric positive semidefinite matrix, enclosed
// to width <= eps.  Throws on non-symmetric input.
EigenInterval max_eigenvalue_interval(const QMat& S, const Rat& eps);

// Largest generalized eigenvalue of the pencil (A, B) with B symmetric
// positive definite and A symmetric positive semidefinite: the largest root
// of det(lambda*B - A).  This is the squared operator norm of maps between
// inner-product spaces.
EigenInterval max_pencil_eigenvalue(const QMat& A, const QMat& B, const Rat& eps);

// Half-log of an EigenInterval: certified enclosure of (1/2) log value.
LogInterval half_log_interval(const EigenInterval& e);

} // namespace slopelab
