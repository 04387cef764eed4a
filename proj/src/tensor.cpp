#include "slopelab/tensor.hpp"

#include "slopelab/hn.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace slopelab {

namespace {

// (row i of a) G (row j of b)^T
Rat pair_dot(const QMat& G, const QMat& a, std::size_t i, const QMat& b, std::size_t j) {
    Rat acc = 0;
    for (std::size_t p = 0; p < G.rows(); ++p)
        for (std::size_t q = 0; q < G.cols(); ++q) acc += a.at(i, p) * G.at(p, q) * b.at(j, q);
    return acc;
}

QMat outer_product(const QMat& eBasis, std::size_t i, const QMat& fBasis, std::size_t j) {
    QMat m(eBasis.cols(), fBasis.cols());
    for (std::size_t p = 0; p < eBasis.cols(); ++p)
        for (std::size_t q = 0; q < fBasis.cols(); ++q)
            m.at(p, q) = eBasis.at(i, p) * fBasis.at(j, q);
    return m;
}

QMat combo_matrix(const TensorSubspace& V, const std::vector<Rat>& coords) {
    QMat acc(V.left.rank, V.right.rank);
    for (std::size_t l = 0; l < coords.size(); ++l) {
        if (coords[l] == 0) continue;
        acc = acc + V.generators[l].matrix.scaled(coords[l]);
    }
    return acc;
}

template <class F>
void grid_walk(std::size_t dims, std::size_t side, F&& visit) {
    std::vector<long> x(dims, 0);
    while (true) {
        visit(x);
        std::size_t p = 0;
        while (p < dims && ++x[p] == static_cast<long>(side)) {
            x[p] = 0;
            ++p;
        }
        if (p == dims) break;
    }
}

std::vector<Rat> poly_trim(std::vector<Rat> p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

std::vector<Rat> poly_rem(std::vector<Rat> a, const std::vector<Rat>& b) {
    a = poly_trim(std::move(a));
    while (a.size() >= b.size()) {
        Rat f = a.back() / b.back();
        std::size_t off = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) a[off + j] -= f * b[j];
        a = poly_trim(std::move(a));
    }
    return a;
}

std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b) {
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (!b.empty()) {
        auto r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Exact coefficients (low -> high) of the polynomial of degree < ys.size()
// through the points (0, ys[0]), (1, ys[1]), ...
std::vector<Rat> interp_coeffs(const std::vector<Rat>& ys) {
    std::size_t n = ys.size();
    std::vector<Rat> dd(ys);
    for (std::size_t lvl = 1; lvl < n; ++lvl)
        for (std::size_t i = n; i-- > lvl;) dd[i] = (dd[i] - dd[i - 1]) / Rat(static_cast<long>(lvl));
    std::vector<Rat> p{dd[n - 1]};
    for (std::size_t i = n - 1; i-- > 0;) {
        std::vector<Rat> q(p.size() + 1, Rat(0));
        for (std::size_t j = 0; j < p.size(); ++j) {
            q[j + 1] += p[j];
            q[j] -= Rat(static_cast<long>(i)) * p[j];
        }
        q[0] += dd[i];
        p = std::move(q);
    }
    return poly_trim(std::move(p));
}

// For a pencil a*A + b*B (v == 2) and 1 <= k < generic rank: decides exactly
// whether some nonzero member has rank <= k, i.e. whether the degree-(k+1)
// binary forms given by the (k+1)-minors share a projective zero.  The zero
// at infinity [1:0] corresponds to all forms losing their top coefficient;
// finite common zeros show up in the gcd of the dehomogenizations.
bool pencil_slice_nonempty(const QMat& A, const QMat& B, std::size_t k) {
    std::size_t d = k + 1;
    auto rowSets = k_subsets(A.rows(), d);
    auto colSets = k_subsets(A.cols(), d);
    bool allVanishAtInfinity = true;
    std::vector<Rat> gcdPoly;
    for (const auto& rs : rowSets)
        for (const auto& cs : colSets) {
            std::vector<Rat> ys;
            for (std::size_t t = 0; t <= d; ++t)
                ys.push_back(minor_det(A.scaled(Rat(static_cast<long>(t))) + B, rs, cs));
            auto p = interp_coeffs(ys);
            if (p.empty()) continue; // this minor vanishes identically
            if (minor_det(A, rs, cs) != 0) allVanishAtInfinity = false;
            gcdPoly = gcdPoly.empty() ? p : poly_gcd(std::move(gcdPoly), p);
            if (!allVanishAtInfinity && gcdPoly.size() <= 1) return false;
        }
    return allVanishAtInfinity || gcdPoly.size() >= 2;
}

std::string status_note(CertMode a, CertMode b) {
    return (a == CertMode::EXACT && b == CertMode::EXACT)
               ? std::string("exact maximal slopes")
               : std::string("maximal slopes only bounded from below");
}

} // namespace

TensorElement::TensorElement(Lattice l, Lattice r, QMat m)
    : left(std::move(l)), right(std::move(r)), matrix(std::move(m)) {
    left.validate();
    right.validate();
    if (matrix.rows() != left.rank || matrix.cols() != right.rank)
        throw std::invalid_argument("tensor element has wrong shape");
}

std::vector<Rat> tensor_vec(const TensorElement& s) {
    std::vector<Rat> v;
    v.reserve(s.matrix.rows() * s.matrix.cols());
    for (std::size_t i = 0; i < s.matrix.rows(); ++i)
        for (std::size_t j = 0; j < s.matrix.cols(); ++j) v.push_back(s.matrix.at(i, j));
    return v;
}

TensorSubspace::TensorSubspace(Lattice l, Lattice r, std::vector<QMat> gens)
    : left(std::move(l)), right(std::move(r)) {
    if (gens.empty()) throw std::invalid_argument("empty tensor subspace");
    for (auto& g : gens) generators.emplace_back(left, right, std::move(g));
    if (rank_of(flat()) != generators.size())
        throw std::invalid_argument("dependent generators");
}

QMat TensorSubspace::flat() const {
    QMat out(generators.size(), left.rank * right.rank);
    for (std::size_t i = 0; i < generators.size(); ++i) {
        auto v = tensor_vec(generators[i]);
        for (std::size_t j = 0; j < v.size(); ++j) out.at(i, j) = v[j];
    }
    return out;
}

Lattice saturated_span(const TensorSubspace& V) {
    Lattice ambient = tensor(V.left, V.right);
    QMat sat = saturate(V.flat(), ambient.rank);
    return induced(Sublattice(ambient, sat, true));
}

std::size_t tensorial_rank(const TensorElement& s) {
    if (s.matrix.is_zero()) throw std::invalid_argument("zero element");
    return rank_of(s.matrix);
}

TensorElement trace_element(const Lattice& E) {
    return TensorElement(E, dual(E), QMat::identity(E.rank));
}

Rat hs_norm_sq(const TensorElement& s) {
    // trace(G_E M G_F M^T), the quadratic form of kron(G_E, G_F) at vec(s)
    QMat T = s.matrix * s.right.gram * s.matrix.transpose();
    QMat P = s.left.gram * T;
    Rat acc = 0;
    for (std::size_t i = 0; i < P.rows(); ++i) acc += P.at(i, i);
    return acc;
}

EigenInterval eps_norm_sq(const TensorElement& s, const Rat& eps) {
    QMat A = s.matrix * s.right.gram * s.matrix.transpose();
    QMat B = inverse(s.left.gram);
    return max_pencil_eigenvalue(A, B, eps);
}

LogRational line_degree_hermitian(const TensorElement& s) {
    if (s.matrix.is_zero()) throw std::invalid_argument("zero element");
    Rat c = content(s.matrix);
    TensorElement prim(s.left, s.right, s.matrix.scaled(1 / c));
    return LogRational::half_log(1 / hs_norm_sq(prim));
}

LogInterval line_degree_eps(const TensorElement& s, const Rat& eps) {
    if (s.matrix.is_zero()) throw std::invalid_argument("zero element");
    Rat c = content(s.matrix);
    TensorElement prim(s.left, s.right, s.matrix.scaled(1 / c));
    LogInterval hl = half_log_interval(eps_norm_sq(prim, eps));
    return LogInterval(-hl.hi, -hl.lo);
}

LogInterval line_degree(const TensorElement& s, TensorMetric metric, const Rat& eps) {
    if (metric == TensorMetric::HERMITIAN) return LogInterval(line_degree_hermitian(s));
    return line_degree_eps(s, eps);
}

CheckReport check_majoration(const TensorElement& s, const EnumBudget& budget) {
    std::size_t r = tensorial_rank(s);
    Lattice E1 = induced(Sublattice(s.left, saturate(s.matrix.transpose(), s.left.rank), true));
    Lattice F1 = induced(Sublattice(s.right, saturate(s.matrix, s.right.rank), true));
    LogRational lhs = line_degree_hermitian(s);
    LogRational rhoTerm = LogRational::half_log(make_rat(1, static_cast<long>(r)));
    LogRational rhs = slope(E1) + slope(F1) + rhoTerm;
    CheckStatus st = (lhs <= rhs) ? CheckStatus::PASS : CheckStatus::FAIL;

    SlopeCertificate msE = max_slope(s.left, budget);
    SlopeCertificate msF = max_slope(s.right, budget);
    LogRational rhs2 = msE.value + msF.value + rhoTerm;
    bool exact2 = msE.mode == CertMode::EXACT && msF.mode == CertMode::EXACT;
    CheckStatus st2 = (lhs <= rhs2) ? CheckStatus::PASS
                                    : (exact2 ? CheckStatus::FAIL : CheckStatus::INCONCLUSIVE);

    CheckReport rep;
    rep.suite = "majoration";
    rep.lhsExact = lhs.to_string();
    rep.rhsExact = rhs.to_string();
    rep.lhsFloat = lhs.to_double();
    rep.rhsFloat = rhs.to_double();
    rep.slackFloat = (rhs - lhs).to_double();
    if (st == CheckStatus::FAIL || st2 == CheckStatus::FAIL)
        rep.status = CheckStatus::FAIL;
    else if (st2 == CheckStatus::INCONCLUSIVE)
        rep.status = CheckStatus::INCONCLUSIVE;
    else
        rep.status = CheckStatus::PASS;
    std::ostringstream w;
    w << "tensorial rank " << r << "; image-slope form " << to_string(st)
      << ", maximal-slope form " << to_string(st2) << " (rhs " << rhs2.to_string() << ", "
      << status_note(msE.mode, msF.mode) << ")";
    rep.witness = w.str();
    return rep;
}

CheckReport check_eps_first_degree(const TensorElement& s, const EnumBudget& budget) {
    LogInterval lhs = line_degree_eps(s);
    SlopeCertificate msE = max_slope(s.left, budget);
    SlopeCertificate msF = max_slope(s.right, budget);
    LogRational rhs = msE.value + msF.value;
    bool exactR = msE.mode == CertMode::EXACT && msF.mode == CertMode::EXACT;

    CheckReport rep;
    rep.suite = "eps-first-degree";
    rep.lhsExact = lhs.to_string();
    rep.rhsExact = rhs.to_string();
    rep.lhsFloat = lhs.mid_double();
    rep.rhsFloat = rhs.to_double();
    rep.slackFloat = rep.rhsFloat - rep.lhsFloat;
    if (lhs.hi <= rhs)
        rep.status = CheckStatus::PASS;
    else if (exactR && lhs.lo > rhs)
        rep.status = CheckStatus::FAIL;
    else
        rep.status = CheckStatus::INCONCLUSIVE;
    rep.witness = "operator-norm line degree vs maximal slopes; " + status_note(msE.mode, msF.mode);
    return rep;
}

RankProfile rho_profile(const TensorSubspace& V) {
    const std::size_t v = V.dim();
    const std::size_t m = V.left.rank;
    const std::size_t n = V.right.rank;
    const std::size_t maxk = std::min(m, n);
    const std::size_t kGridBudget = 1000000;

    auto rank_at = [&](const std::vector<Rat>& coords) { return rank_of(combo_matrix(V, coords)); };

    // Exact identity testing on the grid {0..maxk}^v: a k-minor of the
    // generic member has per-variable degree <= k <= maxk, so it vanishes
    // identically on V iff it vanishes on the whole grid.
    bool gridExact = true;
    std::size_t gridTotal = 1;
    for (std::size_t i = 0; i < v; ++i) {
        if (gridTotal > kGridBudget / (maxk + 1)) {
            gridExact = false;
            break;
        }
        gridTotal *= maxk + 1;
    }

    std::size_t maxRankSeen = 0;                            // generic rank when gridExact
    std::map<std::size_t, QEchelon> spanByRank;             // rank -> span of witnesses
    std::map<std::size_t, std::vector<std::vector<Rat>>> reps; // independent representatives
    auto note = [&](std::size_t r, const std::vector<Rat>& coords) {
        if (r == 0) return;
        maxRankSeen = std::max(maxRankSeen, r);
        if (spanByRank[r].try_add(coords)) reps[r].push_back(coords);
    };

    if (gridExact) {
        grid_walk(v, maxk + 1, [&](const std::vector<long>& x) {
            std::vector<Rat> coords(v);
            bool allZero = true;
            for (std::size_t l = 0; l < v; ++l) {
                coords[l] = Rat(x[l]);
                if (x[l] != 0) allZero = false;
            }
            if (!allZero) note(rank_at(coords), coords);
        });
    } else {
        // Too large for exact profiling: sample generators and pairwise
        // combinations; everything derived from `maxRankSeen` stays sound.
        for (std::size_t i = 0; i < v; ++i) {
            std::vector<Rat> c(v, Rat(0));
            c[i] = 1;
            note(rank_at(c), c);
            for (std::size_t j = i + 1; j < v; ++j) {
                std::vector<Rat> cp(v, Rat(0)), cm(v, Rat(0));
                cp[i] = 1;
                cp[j] = 1;
                cm[i] = 1;
                cm[j] = -1;
                note(rank_at(cp), cp);
                note(rank_at(cm), cm);
            }
        }
    }
    const std::size_t g = maxRankSeen; // exact generic rank iff gridExact

    // certifiedDim[k]: proved lower bound for dim(V cap D_k); upperDim[k]:
    // proved upper bound.  Both monotone in k.
    std::vector<std::size_t> certifiedDim(maxk + 1, 0);
    std::vector<std::size_t> upperDim(maxk + 1, v);
    certifiedDim[maxk] = v;

    for (std::size_t k = 1; k <= maxk; ++k) {
        if (gridExact && k >= g) certifiedDim[k] = v;
        // a witness of rank > k shows V is not contained in D_k
        if (k < maxRankSeen) upperDim[k] = v - 1;
        // a witness point of rank <= k gives a line in the intersection
        if (!reps.empty() && reps.begin()->first <= k)
            certifiedDim[k] = std::max<std::size_t>(certifiedDim[k], 1);
        // projective dimension count against the determinantal variety
        if (k < maxk) {
            std::size_t codim = (m - k) * (n - k);
            if (v >= codim) certifiedDim[k] = std::max(certifiedDim[k], v - codim);
        }
    }

    if (v == 1) {
        for (std::size_t k = 1; k < g; ++k) upperDim[k] = 0;
    } else if (v == 2 && gridExact) {
        const QMat& A = V.generators[0].matrix;
        const QMat& B = V.generators[1].matrix;
        for (std::size_t k = 1; k < g; ++k) {
            if (pencil_slice_nonempty(A, B, k)) {
                upperDim[k] = 1;
                certifiedDim[k] = std::max<std::size_t>(certifiedDim[k], 1);
            } else {
                upperDim[k] = 0;
            }
        }
    } else if (gridExact) {
        // Witness subspaces: if the span W of all low-rank witnesses lies
        // inside D_k (tested exactly on a grid over W), the intersection has
        // dimension at least dim W.
        for (std::size_t k = 1; k < maxk; ++k) {
            std::vector<std::vector<Rat>> basis;
            QEchelon ech;
            for (const auto& [r, rows] : reps) {
                if (r > k) break;
                for (const auto& row : rows)
                    if (ech.try_add(row)) basis.push_back(row);
            }
            std::size_t dW = basis.size();
            if (dW < 2 || dW <= certifiedDim[k]) continue;
            std::size_t side = k + 2, total = 1;
            bool affordable = true;
            for (std::size_t i = 0; i < dW; ++i) {
                if (total > kGridBudget / side) {
                    affordable = false;
                    break;
                }
                total *= side;
            }
            if (!affordable) continue;
            bool inside = true;
            grid_walk(dW, side, [&](const std::vector<long>& y) {
                if (!inside) return;
                std::vector<Rat> coords(v, Rat(0));
                for (std::size_t a = 0; a < dW; ++a)
                    for (std::size_t l = 0; l < v; ++l) coords[l] += Rat(y[a]) * basis[a][l];
                QMat c = combo_matrix(V, coords);
                if (!c.is_zero() && rank_of(c) > k) inside = false;
            });
            if (inside) certifiedDim[k] = std::max(certifiedDim[k], dW);
        }
    }

    for (std::size_t k = 1; k <= maxk; ++k) {
        certifiedDim[k] = std::max(certifiedDim[k], certifiedDim[k - 1]);
        if (k > 1) upperDim[k] = std::max(upperDim[k], upperDim[k - 1]);
    }

    RankProfile out;
    for (std::size_t i = 1; i <= v; ++i) {
        RankBound b;
        for (std::size_t k = 1; k <= maxk; ++k)
            if (upperDim[k] >= i) {
                b.lo = k;
                break;
            }
        for (std::size_t k = 1; k <= maxk; ++k)
            if (certifiedDim[k] >= i) {
                b.hi = k;
                break;
            }
        b.certified = (b.lo == b.hi);
        out.perIndex.push_back(b);
    }
    return out;
}

CheckReport check_majo_de_mu(const TensorSubspace& V, const EnumBudget& budget) {
    std::size_t r = V.dim();
    Lattice Vbar = saturated_span(V);
    LogRational lhs = slope(Vbar);

    RankProfile prof = rho_profile(V);
    LogRational rhoSum = LogRational::zero();
    std::ostringstream rhoTxt;
    rhoTxt << "rho lower bounds (";
    for (std::size_t i = 0; i < prof.perIndex.size(); ++i) {
        rhoSum = rhoSum + LogRational::half_log(make_rat(1, static_cast<long>(prof.perIndex[i].lo)));
        rhoTxt << (i ? "," : "") << prof.perIndex[i].lo;
    }
    rhoTxt << ")";

    SlopeCertificate msE = max_slope(V.left, budget);
    SlopeCertificate msF = max_slope(V.right, budget);
    LogRational rhs = msE.value + msF.value + LogRational::rational(harmonic_ell(r) / 2) +
                      rhoSum.scaled(make_rat(1, static_cast<long>(r)));
    bool exactR = msE.mode == CertMode::EXACT && msF.mode == CertMode::EXACT;

    CheckReport rep;
    rep.suite = "majo-de-mu";
    rep.lhsExact = lhs.to_string();
    rep.rhsExact = rhs.to_string();
    rep.lhsFloat = lhs.to_double();
    rep.rhsFloat = rhs.to_double();
    rep.slackFloat = (rhs - lhs).to_double();
    if (lhs <= rhs)
        rep.status = CheckStatus::PASS;
    else
        rep.status = exactR ? CheckStatus::FAIL : CheckStatus::INCONCLUSIVE;
    rep.witness = rhoTxt.str() + "; " + status_note(msE.mode, msF.mode);
    return rep;
}

SiegelLines siegel_lines(const Lattice& L) {
    L.validate();
    const std::size_t r = L.rank;
    SiegelLines out;

    Rat bound = L.gram.at(0, 0);
    for (std::size_t i = 1; i < r; ++i) bound = std::max(bound, L.gram.at(i, i));
    // Every basis vector lies within `bound`, so a complete enumeration up to
    // it always yields r independent vectors; greedy absorption over the
    // sorted list then picks exactly the successive minima.
    ShortVectorList sv = short_vectors(L, bound);
    out.complete = sv.complete;

    QEchelon ech;
    std::vector<Rat> normsSq;
    for (std::size_t i = 0; i < sv.vectors.size() && ech.size() < r; ++i) {
        std::vector<Rat> row(sv.vectors[i].size());
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = Rat(sv.vectors[i][j]);
        if (ech.try_add(row)) {
            out.vectors.push_back(sv.vectors[i]);
            normsSq.push_back(sv.normsSq[i]);
        }
    }

    out.degreeSum = LogRational::zero();
    for (const Rat& q : normsSq) {
        out.degrees.push_back(LogRational::half_log(1 / q));
        out.degreeSum = out.degreeSum + out.degrees.back();
    }
    out.gramCorrection = LogRational::zero();
    out.indexCorrection = LogRational::zero();
    if (out.vectors.size() < r) {
        out.complete = false;
        return out;
    }

    QMat B(r, L.rank);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < L.rank; ++j) B.at(i, j) = Rat(out.vectors[i][j]);
    Rat dg = det(B * L.gram * B.transpose());
    Rat prod = 1;
    for (const Rat& q : normsSq) prod *= q;
    out.gramCorrection = LogRational::half_log(prod / dg);      // Hadamard defect >= 0
    out.indexCorrection = LogRational::half_log(dg / det(L.gram)); // log of the index >= 0

    LogRational zhangBound =
        out.degreeSum + LogRational::rational(harmonic_ell(r) * static_cast<long>(r) / 2);
    out.zhangRight = (ndeg(L) <= zhangBound) ? CheckStatus::PASS : CheckStatus::INCONCLUSIVE;
    return out;
}

SiegelLines siegel_lines(const TensorSubspace& V) { return siegel_lines(saturated_span(V)); }

CheckReport check_2stable(const Lattice& E, const Lattice& F, const QMat& eBasis,
                          const QMat& fBasis) {
    if (E.rank != 2 || F.rank != 2) throw std::invalid_argument("check needs rank-2 lattices");
    if (eBasis.rows() != 2 || eBasis.cols() != 2 || fBasis.rows() != 2 || fBasis.cols() != 2)
        throw std::invalid_argument("tensor element has wrong shape");
    if (det(eBasis) == 0 || det(fBasis) == 0)
        throw std::invalid_argument("basis matrix is singular");

    TensorSubspace V(E, F, {outer_product(eBasis, 0, fBasis, 0), outer_product(eBasis, 1, fBasis, 1)});
    LogRational lhs = ndeg(saturated_span(V));
    LogRational rhs = slope(E) + slope(F);

    CheckReport rep;
    rep.suite = "2stable";
    rep.lhsExact = lhs.to_string();
    rep.rhsExact = rhs.to_string();
    rep.lhsFloat = lhs.to_double();
    rep.rhsFloat = rhs.to_double();
    rep.slackFloat = (rhs - lhs).to_double();
    rep.status = (lhs <= rhs) ? CheckStatus::PASS : CheckStatus::FAIL;
    rep.witness = "split plane vs sum of slopes";
    return rep;
}

CheckReport check_rk2loc(const Lattice& E, const Lattice& F, const QMat& eBasis,
                         const QMat& fBasis) {
    if (E.rank != 2 || F.rank != 2) throw std::invalid_argument("check needs rank-2 lattices");
    if (eBasis.rows() != 2 || eBasis.cols() != 2 || fBasis.rows() != 2 || fBasis.cols() != 2)
        throw std::invalid_argument("tensor element has wrong shape");

    Rat e11 = pair_dot(E.gram, eBasis, 0, eBasis, 0);
    Rat e22 = pair_dot(E.gram, eBasis, 1, eBasis, 1);
    Rat e12 = pair_dot(E.gram, eBasis, 0, eBasis, 1);
    Rat f11 = pair_dot(F.gram, fBasis, 0, fBasis, 0);
    Rat f22 = pair_dot(F.gram, fBasis, 1, fBasis, 1);
    Rat f12 = pair_dot(F.gram, fBasis, 0, fBasis, 1);

    // |e1^e2|^2 |f1^f2|^2  <=  |(e1 x f1) ^ (e2 x f2)|^2, all exact rationals
    Rat lhs = (e11 * e22 - e12 * e12) * (f11 * f22 - f12 * f12);
    Rat rhs = e11 * f11 * e22 * f22 - (e12 * f12) * (e12 * f12);

    CheckReport rep;
    rep.suite = "rk2loc";
    rep.lhsExact = rat_to_string(lhs);
    rep.rhsExact = rat_to_string(rhs);
    rep.lhsFloat = rat_to_double(lhs);
    rep.rhsFloat = rat_to_double(rhs);
    rep.slackFloat = rep.rhsFloat - rep.lhsFloat;
    rep.status = (lhs <= rhs) ? CheckStatus::PASS : CheckStatus::FAIL;
    rep.witness = "product of exterior square norms vs split wedge norm";
    return rep;
}

} // namespace slopelab
