#pragma once

#include "slopelab/rational.hpp"

#include <string>

namespace slopelab {

// Exact scalar of the form  (log q + m) / (2 d)  with q a positive rational,
// d a positive integer and m an integer.  Every degree and slope in the
// library lives here: ndeg(L) = -1/2 log det is (q = 1/det, d = 1, m = 0),
// and the purely rational error terms (the harmonic-sum bounds l(r)) ride on
// the integer offset m.  Comparisons are decided exactly by cross-powering;
// when an e-power is involved, by a certified shrinking interval around
// powers of e (which terminates because e^M is irrational for integer
// M != 0).  Floating point never decides anything.
class LogRational {
  public:
    LogRational() : q_(1), d_(1), m_(0) {}
    LogRational(Rat q, Int d, Int m);

    static LogRational zero() { return LogRational(); }

    // (1/2) log q
    static LogRational half_log(const Rat& q) { return LogRational(q, 1, 0); }

    // log q  (stored as (1/2) log q^2)
    static LogRational log(const Rat& q) { return LogRational(q * q, 1, 0); }

    // the plain rational number a (stored on the e-offset)
    static LogRational rational(const Rat& a) {
        return LogRational(Rat(1), a.get_den(), 2 * a.get_num());
    }

    const Rat& q() const { return q_; }
    const Int& d() const { return d_; }
    const Int& m() const { return m_; }

    bool is_zero() const { return q_ == 1 && m_ == 0; }
    // True when the value is a plain rational number (no log part).
    bool is_rational() const { return q_ == 1; }

    LogRational operator+(const LogRational& o) const;
    LogRational operator-() const;
    LogRational operator-(const LogRational& o) const { return *this + (-o); }

    // Multiply the value by an arbitrary rational.
    LogRational scaled(const Rat& c) const;

    // Exact three-way comparison: -1, 0, +1.
    int cmp(const LogRational& o) const;

    bool operator==(const LogRational& o) const { return cmp(o) == 0; }
    bool operator!=(const LogRational& o) const { return cmp(o) != 0; }
    bool operator<(const LogRational& o) const { return cmp(o) < 0; }
    bool operator<=(const LogRational& o) const { return cmp(o) <= 0; }
    bool operator>(const LogRational& o) const { return cmp(o) > 0; }
    bool operator>=(const LogRational& o) const { return cmp(o) >= 0; }

    int sign() const { return cmp(LogRational()); }

    double to_double() const;

    // Rendering for reports: "(log(3)+1)/4" style, losslessly readable.
    std::string to_string() const;

  private:
    void canonicalize();

    Rat q_; // > 0
    Int d_; // > 0
    Int m_;
};

// Certified enclosure lo <= value <= hi between two exact scalars.  Used for
// quantities that are genuinely algebraic (heights, epsilon norms): the ends
// are LogRationals, the true value is only known to lie between them.
struct LogInterval {
    LogRational lo, hi;

    LogInterval() = default;
    LogInterval(LogRational both) : lo(both), hi(both) {}
    LogInterval(LogRational l, LogRational h) : lo(std::move(l)), hi(std::move(h)) {}

    bool is_point() const { return lo == hi; }
    double mid_double() const { return (lo.to_double() + hi.to_double()) / 2; }
    std::string to_string() const;

    // Certified order against an exact scalar; 0 means "cannot decide".
    // +1: whole interval strictly above x; -1: strictly below (weak sides
    // handled by the callers via lo/hi directly).
    int cmp_certified(const LogRational& x) const {
        if (lo > x) return 1;
        if (hi < x) return -1;
        return 0;
    }
};

// Certified rational enclosure of e^{u/v} (v > 0): lower and upper bounds
// with hi/lo - 1 <= about 2^-bits.  Exposed for the enumeration layer, which
// needs rational outer bounds of exp(threshold).
std::pair<Rat, Rat> exp_bounds(const Int& u, const Int& v, unsigned bits);

// A rational upper bound on exp(x).  Used to turn slope thresholds into
// squared-norm search bounds.
Rat exp_upper_bound(const LogRational& x, unsigned bits = 16);

} // namespace slopelab
