#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace slopelab {

using Int = mpz_class;
using Rat = mpq_class;

// Shorthand: a reduced rational from a numerator/denominator pair.
inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// Exact integer power with non-negative exponent.
inline Int ipow(const Int& base, unsigned long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

// q^e for integer e of either sign; throws on 0^negative.
inline Rat rat_pow(const Rat& q, long e) {
    if (e == 0) return Rat(1);
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    Rat out(ipow(q.get_num(), a), ipow(q.get_den(), a));
    out.canonicalize();
    if (e < 0) {
        if (out == 0) throw std::domain_error("zero to a negative power");
        out = 1 / out;
    }
    return out;
}

// floor(num/den) for exact integers.
inline Int floor_div(const Int& num, const Int& den) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

inline Int ceil_div(const Int& num, const Int& den) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

inline Int rat_floor(const Rat& r) { return floor_div(r.get_num(), r.get_den()); }
inline Int rat_ceil(const Rat& r) { return ceil_div(r.get_num(), r.get_den()); }

// Largest integer z with z^d <= n (n >= 0, d >= 1).
inline Int floor_root(const Int& n, unsigned long d) {
    if (n < 0) throw std::domain_error("root of negative integer");
    Int r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), d); // truncates toward zero
    return r;
}

// Smallest integer z with z^d >= n.
inline Int ceil_root(const Int& n, unsigned long d) {
    Int r = floor_root(n, d);
    if (ipow(r, d) < n) ++r;
    return r;
}

// True iff n is an exact d-th power; root receives the witness.
inline bool exact_root(const Int& n, unsigned long d, Int& root) {
    if (n < 0) return false;
    root = floor_root(n, d);
    return ipow(root, d) == n;
}

// Largest integer z >= 0 with z^2 <= r (r >= 0 rational).
inline Int floor_sqrt(const Rat& r) {
    if (r < 0) throw std::domain_error("sqrt of negative rational");
    // z <= sqrt(a/b) iff z^2 * b <= a; start from the integer sqrt of floor(a/b).
    Int z = floor_root(rat_floor(r), 2);
    while (Rat(z + 1) * Rat(z + 1) <= r) ++z;
    while (z > 0 && Rat(z) * Rat(z) > r) --z;
    return z;
}

// floor(c + sqrt(t)) for rationals c, t >= 0, computed exactly.
inline Int floor_plus_sqrt(const Rat& c, const Rat& t) {
    if (t < 0) throw std::domain_error("floor_plus_sqrt: negative radicand");
    Int z = rat_floor(c) + floor_sqrt(t) + 1;
    // z is now an upper estimate; walk down until z <= c + sqrt(t),
    // i.e. z - c <= sqrt(t), i.e. z <= c or (z-c)^2 <= t.
    auto ok = [&](const Int& x) {
        Rat d = Rat(x) - c;
        return d <= 0 || d * d <= t;
    };
    while (!ok(z)) --z;
    while (ok(z + 1)) ++z;
    return z;
}

// ceil(c - sqrt(t)) exactly.
inline Int ceil_minus_sqrt(const Rat& c, const Rat& t) {
    if (t < 0) throw std::domain_error("ceil_minus_sqrt: negative radicand");
    Int z = rat_ceil(c) - floor_sqrt(t) - 1;
    // walk up until z >= c - sqrt(t), i.e. c - z <= sqrt(t).
    auto ok = [&](const Int& x) {
        Rat d = c - Rat(x);
        return d <= 0 || d * d <= t;
    };
    while (!ok(z)) ++z;
    while (ok(z - 1)) --z;
    return z;
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

// log of a positive rational in double precision, safe for huge operands.
inline double rat_log(const Rat& q) {
    if (q <= 0) throw std::domain_error("log of non-positive rational");
    signed long en, ed;
    double mn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
    double md = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
    constexpr double ln2 = 0.69314718055994530941723212145818;
    return std::log(mn) - std::log(md) + (static_cast<double>(en) - static_cast<double>(ed)) * ln2;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// splitmix64: the fixed per-trial seed derivation rule used by the harness.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace slopelab
