#include "slopelab/iq.hpp"

#include <sstream>
#include <stdexcept>

namespace slopelab {

const char* to_string(IQRing r) {
    switch (r) {
        case IQRing::GAUSS: return "gauss";
        case IQRing::EISENSTEIN: return "eisenstein";
        default: return "sqrt2";
    }
}

bool iq_is_zero(const IQElem& x) { return x.a == 0 && x.b == 0; }

IQElem iq_add(const IQElem& x, const IQElem& y) { return {x.a + y.a, x.b + y.b}; }

IQElem iq_sub(const IQElem& x, const IQElem& y) { return {x.a - y.a, x.b - y.b}; }

IQElem iq_neg(const IQElem& x) { return {-x.a, -x.b}; }

IQElem iq_conj(IQRing ring, const IQElem& x) {
    if (ring == IQRing::EISENSTEIN) return {x.a - x.b, -x.b};
    return {x.a, -x.b};
}

IQElem iq_mul(IQRing ring, const IQElem& x, const IQElem& y) {
    Int cross = x.a * y.b + x.b * y.a;
    Int sq = x.b * y.b; // coefficient of tau^2
    switch (ring) {
        case IQRing::GAUSS: return {x.a * y.a - sq, cross};
        case IQRing::EISENSTEIN: return {x.a * y.a - sq, cross - sq}; // tau^2 = -1 - tau
        default: return {x.a * y.a - 2 * sq, cross};
    }
}

Int iq_norm(IQRing ring, const IQElem& x) {
    switch (ring) {
        case IQRing::GAUSS: return x.a * x.a + x.b * x.b;
        case IQRing::EISENSTEIN: return x.a * x.a - x.a * x.b + x.b * x.b;
        default: return x.a * x.a + 2 * x.b * x.b;
    }
}

Rat iq_re(IQRing ring, const IQElem& x) {
    if (ring == IQRing::EISENSTEIN) return Rat(x.a) - make_rat(x.b, Int(2));
    return Rat(x.a);
}

namespace {

// nearest integer to u / n for n > 0, halves rounded up
Int round_div(const Int& u, const Int& n) {
    Int num = 2 * u + n;
    Int den = 2 * n;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

} // namespace

IQElem iq_div_exact(IQRing ring, const IQElem& x, const IQElem& d) {
    if (iq_is_zero(d)) throw std::invalid_argument("division by zero");
    IQElem num = iq_mul(ring, x, iq_conj(ring, d));
    Int n = iq_norm(ring, d);
    if (!mpz_divisible_p(num.a.get_mpz_t(), n.get_mpz_t()) ||
        !mpz_divisible_p(num.b.get_mpz_t(), n.get_mpz_t()))
        throw std::invalid_argument("inexact division");
    return {num.a / n, num.b / n};
}

IQElem iq_gcd(IQRing ring, IQElem x, IQElem y) {
    while (!iq_is_zero(y)) {
        IQElem num = iq_mul(ring, x, iq_conj(ring, y));
        Int n = iq_norm(ring, y);
        IQElem q{round_div(num.a, n), round_div(num.b, n)};
        IQElem r = iq_sub(x, iq_mul(ring, q, y));
        x = y;
        y = r;
    }
    return x;
}

LogRational iq_line_degree(const Lattice& L, const IQVector& v) {
    if (v.coords.size() != L.rank)
        throw std::invalid_argument("vector has wrong ambient dimension");
    IQElem g{Int(0), Int(0)};
    for (const IQElem& c : v.coords) g = iq_gcd(v.ring, g, c);
    if (iq_is_zero(g)) throw std::invalid_argument("zero vector");
    std::vector<IQElem> w;
    w.reserve(v.coords.size());
    for (const IQElem& c : v.coords) w.push_back(iq_div_exact(v.ring, c, g));
    Rat ns(0);
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j)
            ns += L.gram.at(i, j) * iq_re(v.ring, iq_mul(v.ring, w[i], iq_conj(v.ring, w[j])));
    return LogRational::half_log(Rat(1) / ns);
}

CheckReport check_An_alpha_bound(std::size_t n, const IQVector& v) {
    if (n == 0) throw std::invalid_argument("root lattice needs positive rank");
    if (v.coords.size() != n)
        throw std::invalid_argument("vector has wrong ambient dimension");
    Lattice An(gram_An(n), "A" + std::to_string(n));
    LogRational deg = iq_line_degree(An, v);

    std::size_t alpha = iq_is_zero(v.coords[0]) ? 0 : 1;
    for (std::size_t i = 1; i < n; ++i)
        if (!iq_is_zero(iq_sub(v.coords[i], v.coords[i - 1]))) ++alpha;
    if (!iq_is_zero(v.coords[n - 1])) ++alpha;

    LogRational bound = LogRational::half_log(make_rat(Int(1), Int(alpha)));
    CheckReport r;
    r.suite = "an-alpha-bound";
    r.lhsExact = deg.to_string();
    r.rhsExact = bound.to_string();
    r.lhsFloat = deg.to_double();
    r.rhsFloat = bound.to_double();
    r.slackFloat = r.rhsFloat - r.lhsFloat;
    r.status = deg <= bound ? CheckStatus::PASS : CheckStatus::FAIL;
    if (r.status == CheckStatus::FAIL) {
        std::ostringstream os;
        os << "ring " << to_string(v.ring) << " coords";
        for (const IQElem& c : v.coords)
            os << " (" << c.a.get_str() << "," << c.b.get_str() << ")";
        r.witness = os.str();
    }
    return r;
}

} // namespace slopelab
