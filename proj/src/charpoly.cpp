#include "slopelab/charpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace slopelab {

namespace {

void poly_trim(std::vector<Rat>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int poly_deg(const std::vector<Rat>& p) { return static_cast<int>(p.size()) - 1; }

// Divide out the positive content and clear denominators; keeps the sign of
// every coefficient, which is what Sturm chains care about.
void poly_make_primitive(std::vector<Rat>& p) {
    poly_trim(p);
    if (p.empty()) return;
    Int l = 1;
    for (const auto& c : p) l = lcm(l, c.get_den());
    Int g = 0;
    for (const auto& c : p) g = gcd(g, Int(c.get_num() * (l / c.get_den())));
    if (g == 0) return;
    Rat scale = make_rat(l, g);
    for (auto& c : p) c *= scale;
}

// True polynomial remainder over Q (not pseudo-remainder: the sign pattern
// must survive for Sturm sequences).
std::vector<Rat> poly_rem(std::vector<Rat> a, const std::vector<Rat>& b) {
    poly_trim(a);
    while (poly_deg(a) >= poly_deg(b)) {
        Rat f = a.back() / b.back();
        int shift = poly_deg(a) - poly_deg(b);
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        poly_trim(a);
        if (a.empty()) break;
    }
    return a;
}

// Exact quotient, throws if the division is not exact.
std::vector<Rat> poly_div_exact(std::vector<Rat> a, const std::vector<Rat>& b) {
    poly_trim(a);
    if (b.empty()) throw std::runtime_error("polynomial division by zero");
    std::vector<Rat> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
    while (poly_deg(a) >= poly_deg(b)) {
        Rat f = a.back() / b.back();
        int shift = poly_deg(a) - poly_deg(b);
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        poly_trim(a);
    }
    if (!a.empty()) throw std::runtime_error("polynomial division not exact");
    return q;
}

std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        std::vector<Rat> r = poly_rem(a, b);
        poly_make_primitive(r);
        a = std::move(b);
        b = std::move(r);
    }
    poly_make_primitive(a);
    return a;
}

std::vector<Rat> square_free_part(const std::vector<Rat>& p) {
    std::vector<Rat> d = poly_derivative(p);
    poly_trim(d);
    if (d.empty()) return {Rat(1)}; // constant input
    std::vector<Rat> g = poly_gcd(p, d);
    if (poly_deg(g) <= 0) {
        std::vector<Rat> q = p;
        poly_make_primitive(q);
        return q;
    }
    std::vector<Rat> q = poly_div_exact(p, g);
    poly_make_primitive(q);
    return q;
}

struct SturmChain {
    std::vector<std::vector<Rat>> seq;

    explicit SturmChain(const std::vector<Rat>& squareFree) {
        seq.push_back(squareFree);
        std::vector<Rat> d = poly_derivative(squareFree);
        poly_trim(d);
        while (!d.empty()) {
            seq.push_back(d);
            if (seq.size() >= 2 && poly_deg(seq.back()) == 0) break;
            std::vector<Rat> r = poly_rem(seq[seq.size() - 2], seq.back());
            poly_make_primitive(r);
            for (auto& c : r) c = -c;
            d = std::move(r);
        }
    }

    int variations(const Rat& x) const {
        int count = 0, prev = 0;
        for (const auto& p : seq) {
            Rat v = poly_eval(p, x);
            int s = sgn(v.get_num());
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
        return count;
    }

    // Number of distinct roots in (a, b], assuming p(a) != 0.
    int count(const Rat& a, const Rat& b) const { return variations(a) - variations(b); }
};

// Simplest rational (smallest denominator) strictly inside (a, b).
Rat simplest_between(const Rat& a, const Rat& b) {
    if (a < 0 && b > 0) return Rat(0);
    if (b <= 0) return -simplest_between(-b, -a);
    // now 0 <= a < b
    Int ia = rat_floor(a);
    if (Rat(ia + 1) < b) return Rat(ia + 1);
    if (a == Rat(ia)) {
        Rat c = b - a; // 0 < c <= 1
        Int k = rat_floor(Rat(1) / c) + 1;
        return a + make_rat(1, k);
    }
    Rat fa = a - Rat(ia), fb = b - Rat(ia);
    return Rat(ia) + Rat(1) / simplest_between(Rat(1) / fb, Rat(1) / fa);
}

Rat cauchy_bound(const std::vector<Rat>& p) {
    Rat m(0);
    Rat lead = p.back();
    for (size_t i = 0; i + 1 < p.size(); ++i) {
        Rat v = abs(p[i] / lead);
        if (v > m) m = v;
    }
    return m + 1;
}

} // namespace

Rat poly_eval(const std::vector<Rat>& p, const Rat& x) {
    Rat acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<Rat> poly_derivative(const std::vector<Rat>& p) {
    std::vector<Rat> d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(static_cast<long>(i)));
    return d;
}

int sturm_count(const std::vector<Rat>& p, const Rat& a, const Rat& b) {
    SturmChain chain(square_free_part(p));
    return chain.count(a, b);
}

std::vector<Rat> pencil_charpoly(const QMat& A, const QMat& B) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
        throw std::runtime_error("pencil requires square matrices of equal size");
    size_t n = A.rows();
    size_t npts = n + 1;
    std::vector<Rat> xs(npts), ys(npts);
    for (size_t i = 0; i < npts; ++i) {
        Rat x(static_cast<long>(i));
        xs[i] = x;
        ys[i] = det(B.scaled(x) - A);
    }
    // Lagrange interpolation: accumulate y_i * prod_{j != i} (X - x_j) / (x_i - x_j).
    std::vector<Rat> master{Rat(1)}; // prod over all j of (X - x_j)
    for (size_t j = 0; j < npts; ++j) {
        std::vector<Rat> next(master.size() + 1, Rat(0));
        for (size_t k = 0; k < master.size(); ++k) {
            next[k + 1] += master[k];
            next[k] -= xs[j] * master[k];
        }
        master = std::move(next);
    }
    std::vector<Rat> out(npts, Rat(0));
    for (size_t i = 0; i < npts; ++i) {
        std::vector<Rat> li = poly_div_exact(master, {-xs[i], Rat(1)});
        Rat denom = poly_eval(li, xs[i]);
        Rat w = ys[i] / denom;
        for (size_t k = 0; k < li.size() && k < out.size(); ++k) out[k] += w * li[k];
    }
    poly_trim(out);
    return out;
}

EigenInterval largest_root_interval(const std::vector<Rat>& p, const Rat& eps) {
    std::vector<Rat> q = square_free_part(p);
    if (poly_deg(q) <= 0) throw std::runtime_error("polynomial has no roots");

    Rat bound = cauchy_bound(q);
    Rat lo = -bound, hi = bound;
    SturmChain chain(q);
    if (chain.count(lo, hi) == 0) throw std::runtime_error("polynomial has no real roots");

    // Invariant: the largest real root of the (progressively deflated)
    // square-free polynomial lies in (lo, hi], and q(lo) != 0.
    auto deflate_at = [&](const Rat& r) {
        q = poly_div_exact(q, {-r, Rat(1)});
        poly_make_primitive(q);
        chain = SturmChain(q);
    };

    while (hi - lo > eps) {
        // Try to pin the root exactly on the simplest rational in the bracket.
        Rat guess = simplest_between(lo, hi);
        if (poly_eval(q, guess) == 0) {
            deflate_at(guess);
            if (poly_deg(q) <= 0 || chain.count(guess, hi) == 0)
                return {guess, guess, true};
            lo = guess;
            continue;
        }
        Rat mid = (lo + hi) / 2;
        if (poly_eval(q, mid) == 0) {
            deflate_at(mid);
            if (poly_deg(q) <= 0 || chain.count(mid, hi) == 0) return {mid, mid, true};
            lo = mid;
            continue;
        }
        if (chain.count(mid, hi) >= 1)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi, false};
}

EigenInterval max_pencil_eigenvalue(const QMat& A, const QMat& B, const Rat& eps) {
    if (!A.is_symmetric() || !B.is_symmetric()) throw std::runtime_error("non-symmetric input");
    std::vector<Rat> p = pencil_charpoly(A, B);
    EigenInterval e = largest_root_interval(p, eps);
    // Rayleigh quotients along coordinate vectors give a certified lower
    // bound; this also keeps the bracket positive whenever A != 0.
    Rat ray(0);
    bool have = false;
    for (size_t i = 0; i < A.rows(); ++i) {
        if (B.at(i, i) <= 0) continue;
        Rat v = A.at(i, i) / B.at(i, i);
        if (!have || v > ray) {
            ray = v;
            have = true;
        }
    }
    if (have && !e.exact && ray > e.lower) e.lower = ray;
    return e;
}

EigenInterval max_eigenvalue_interval(const QMat& S, const Rat& eps) {
    if (!S.is_symmetric()) throw std::runtime_error("non-symmetric input");
    return max_pencil_eigenvalue(S, QMat::identity(S.rows()), eps);
}

LogInterval half_log_interval(const EigenInterval& e) {
    if (e.lower <= 0)
        throw std::runtime_error("log of interval touching zero; refine the enclosure first");
    LogRational lo = LogRational::half_log(e.lower);
    LogRational hi = e.exact ? lo : LogRational::half_log(e.upper);
    return {lo, hi};
}

} // namespace slopelab
