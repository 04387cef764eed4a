#include "slopelab/log_rational.hpp"

#include <sstream>

namespace slopelab {

namespace {

// Enclosure of e = sum 1/k! with n terms: [s_n, s_n + 2/(n+1)!].
std::pair<Rat, Rat> e_bounds(unsigned terms) {
    Rat s(0);
    Rat t(1); // 1/k!
    for (unsigned k = 0; k <= terms; ++k) {
        s += t;
        t /= (k + 1);
    }
    // t is now 1/(terms+1)!; the tail is < 2 * t.
    return {s, s + 2 * t};
}

// Largest exponent g such that q = s^g for a rational s; returns g and s.
// q > 0, q != 1.
std::pair<unsigned long, Rat> max_root(const Rat& q) {
    Int num = q.get_num(), den = q.get_den();
    // The exponent gcd is bounded by the bit length of the larger operand.
    std::size_t bits = std::max(mpz_sizeinbase(num.get_mpz_t(), 2), mpz_sizeinbase(den.get_mpz_t(), 2));
    unsigned long best = 1;
    Rat root = q;
    for (unsigned long g = 2; g <= bits; ++g) {
        Int rn, rd;
        if (!exact_root(num, g, rn)) continue;
        if (!exact_root(den, g, rd)) continue;
        // accept the largest g; iterate upward and keep overwriting
        best = g;
        root = make_rat(rn, rd);
    }
    return {best, root};
}

} // namespace

LogRational::LogRational(Rat q, Int d, Int m) : q_(std::move(q)), d_(std::move(d)), m_(std::move(m)) {
    if (q_ <= 0) throw std::domain_error("log of non-positive rational");
    if (d_ <= 0) throw std::domain_error("non-positive log denominator");
    q_.canonicalize();
    canonicalize();
}

void LogRational::canonicalize() {
    if (q_ == 1 && m_ == 0) {
        d_ = 1;
        return;
    }
    if (q_ == 1) {
        // plain rational m/(2d): reduce the pair (m, d)
        Int g = gcd(m_, d_);
        m_ /= g;
        d_ /= g;
        return;
    }
    auto [g, root] = max_root(q_);
    Int k = gcd(gcd(Int(g), m_), d_);
    if (k > 1) {
        unsigned long ku = static_cast<unsigned long>(k.get_ui());
        q_ = rat_pow(root, static_cast<long>(g / ku));
        m_ /= k;
        d_ /= k;
    }
}

LogRational LogRational::operator+(const LogRational& o) const {
    Int L = lcm(d_, o.d_);
    Int e1 = L / d_, e2 = L / o.d_;
    Rat q = rat_pow(q_, e1.get_si()) * rat_pow(o.q_, e2.get_si());
    Int m = m_ * e1 + o.m_ * e2;
    return LogRational(q, L, m);
}

LogRational LogRational::operator-() const { return LogRational(1 / q_, d_, -m_); }

LogRational LogRational::scaled(const Rat& c) const {
    if (c == 0) return LogRational();
    // value * u/v = (log q^u + m u) / (2 d v), with sign folded into q and m.
    Int u = c.get_num(), v = c.get_den();
    Rat q;
    Int m;
    if (u >= 0) {
        q = rat_pow(q_, u.get_si());
        m = m_ * u;
    } else {
        Int nu = -u;
        q = rat_pow(1 / q_, nu.get_si());
        m = m_ * u;
    }
    return LogRational(q, d_ * v, m);
}

int LogRational::cmp(const LogRational& o) const {
    // a - b has the sign of  log Q - M  with Q = q1^{d2} / q2^{d1} and
    // M = d1 m2 - d2 m1.
    Rat Q = rat_pow(q_, o.d_.get_si()) / rat_pow(o.q_, d_.get_si());
    Int M = d_ * o.m_ - o.d_ * m_;
    if (M == 0) return Q < 1 ? -1 : (Q == 1 ? 0 : 1);
    if (Q == 1) return M > 0 ? -1 : 1;
    // Decide log Q vs M, i.e. Q vs e^M, by a shrinking certified interval.
    bool mneg = M < 0;
    Int A = mneg ? Int(-M) : M; // compare Q vs e^{±A}
    for (unsigned terms = 8; terms <= 1u << 14; terms *= 2) {
        auto [elo, ehi] = e_bounds(terms);
        Rat plo = rat_pow(elo, A.get_si());
        Rat phi = rat_pow(ehi, A.get_si());
        if (mneg) {
            plo = 1 / phi;
            phi = 1 / rat_pow(elo, A.get_si());
        }
        if (Q < plo) return -1;
        if (Q > phi) return 1;
    }
    throw std::runtime_error("exp comparison failed to converge"); // unreachable
}

double LogRational::to_double() const {
    double num = rat_log(q_) + m_.get_d();
    return num / (2.0 * d_.get_d());
}

std::string LogRational::to_string() const {
    std::ostringstream os;
    Int twod = 2 * d_;
    if (is_rational()) {
        Rat v = make_rat(m_, twod);
        os << v.get_str();
        return os.str();
    }
    if (m_ == 0) {
        os << "log(" << q_.get_str() << ")/" << twod.get_str();
    } else {
        os << "(log(" << q_.get_str() << ")" << (m_ > 0 ? "+" : "") << m_.get_str() << ")/" << twod.get_str();
    }
    return os.str();
}

std::string LogInterval::to_string() const {
    if (is_point()) return lo.to_string();
    return "[" + lo.to_string() + ", " + hi.to_string() + "]";
}

std::pair<Rat, Rat> exp_bounds(const Int& u, const Int& v, unsigned bits) {
    if (v <= 0) throw std::domain_error("exp_bounds needs positive denominator");
    if (u == 0) return {Rat(1), Rat(1)};
    bool neg = u < 0;
    Int a = neg ? Int(-u) : u;
    // e^{a/v}: bound e^a by series bounds, then take v-th roots with directed
    // rounding on a scaled integer grid.
    unsigned terms = 16;
    Rat lo, hi;
    while (true) {
        auto [elo, ehi] = e_bounds(terms);
        Rat pl = rat_pow(elo, a.get_si());
        Rat ph = rat_pow(ehi, a.get_si());
        // v-th root with directed rounding: scale by a large power to keep
        // precision, root the integer parts.
        Int scale = ipow(Int(2), bits + 8);
        Int sv = ipow(scale, static_cast<unsigned long>(v.get_ui()));
        // lower root of pl: floor((pl * scale^v)^{1/v}) / scale
        Rat pls = pl * Rat(sv);
        Rat phs = ph * Rat(sv);
        Int rl = floor_root(rat_floor(pls), static_cast<unsigned long>(v.get_ui()));
        Int rh = ceil_root(rat_ceil(phs), static_cast<unsigned long>(v.get_ui()));
        lo = make_rat(rl, scale);
        hi = make_rat(rh, scale);
        if (lo > 0 && hi > lo) {
            Rat rel = hi / lo - 1;
            Rat want = Rat(1, ipow(Int(2), bits));
            if (rel <= want) break;
        } else if (lo == hi && lo > 0) {
            break;
        }
        terms *= 2;
        if (terms > (1u << 15)) break; // give up refining; bounds stay sound
    }
    if (neg) return {1 / hi, 1 / lo};
    return {lo, hi};
}

Rat exp_upper_bound(const LogRational& x, unsigned bits) {
    // exp((log q + m) / (2d)) = q^{1/(2d)} * e^{m/(2d)}
    unsigned long td = 2 * x.d().get_ui();
    const Rat& q = x.q();
    // Upper bound on q^{1/(2d)} on a 2^-bits grid.
    Int grid = ipow(Int(2), bits);
    Rat scaledQ = q * Rat(ipow(grid, td));
    Rat rootUb = make_rat(ceil_root(rat_ceil(scaledQ), td), grid);
    if (x.m() == 0) return rootUb;
    Rat eUb = exp_bounds(x.m(), Int(td), bits).second;
    return rootUb * eUb;
}

} // namespace slopelab
