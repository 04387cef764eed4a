#include "slopelab/enumeration.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <stdexcept>

namespace slopelab {

EnumBudget default_budget() {
    if (const char* env = std::getenv("SLOPELAB_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return EnumBudget::from_scale(static_cast<size_t>(v));
    }
    return EnumBudget{};
}

namespace {

constexpr size_t kPoolCap = 4000;

// LDL^T data: Q(x) = sum_i d_i (x_i + sum_{j>i} m_ij x_j)^2.
struct LDL {
    std::vector<Rat> d;
    QMat m;
};

LDL ldl_decompose(const QMat& G) {
    size_t n = G.rows();
    QMat A = G;
    LDL out{std::vector<Rat>(n), QMat(n, n)};
    for (size_t i = 0; i < n; ++i) {
        out.d[i] = A.at(i, i);
        for (size_t j = i + 1; j < n; ++j) out.m.at(i, j) = A.at(i, j) / out.d[i];
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = i + 1; k < n; ++k)
                A.at(j, k) -= out.m.at(i, j) * out.m.at(i, k) * out.d[i];
    }
    return out;
}

bool vec_is_zero(const std::vector<Int>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

bool vec_canonical_sign(const std::vector<Int>& v) {
    for (const auto& x : v) {
        if (x > 0) return true;
        if (x < 0) return false;
    }
    return false; // zero vector: rejected elsewhere
}

bool vec_primitive(const std::vector<Int>& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g == 1;
}

// Incremental row echelon over Q with pop support, for prefix independence
// checks during subset search.
struct Echelon {
    std::vector<std::vector<Rat>> rows;
    std::vector<size_t> pivots;

    bool try_add(std::vector<Rat> v) {
        for (size_t t = 0; t < rows.size(); ++t) {
            const Rat& lead = v[pivots[t]];
            if (lead != 0) {
                Rat f = lead / rows[t][pivots[t]];
                for (size_t j = 0; j < v.size(); ++j) v[j] -= f * rows[t][j];
            }
        }
        size_t p = v.size();
        for (size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) {
                p = j;
                break;
            }
        if (p == v.size()) return false;
        rows.push_back(std::move(v));
        pivots.push_back(p);
        return true;
    }

    void pop() {
        rows.pop_back();
        pivots.pop_back();
    }
};

std::vector<Rat> to_rat_row(const std::vector<Int>& v) {
    std::vector<Rat> r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

QMat rows_to_qmat(const std::vector<const std::vector<Int>*>& rows, size_t cols) {
    QMat m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols; ++j) m.at(i, j) = Rat((*rows[i])[j]);
    return m;
}

bool qmat_lex_less(const QMat& a, const QMat& b) {
    if (a.rows() != b.rows()) return a.rows() < b.rows();
    if (a.cols() != b.cols()) return a.cols() < b.cols();
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            int c = cmp(a.at(i, j), b.at(i, j));
            if (c != 0) return c < 0;
        }
    return false;
}

std::string qmat_key(const QMat& m) { return m.to_string(); }

Rat min_diagonal(const QMat& g) {
    Rat m = g.at(0, 0);
    for (size_t i = 1; i < g.rows(); ++i)
        if (g.at(i, i) < m) m = g.at(i, i);
    return m;
}

// Exact squared first minimum; throws if the vector budget cannot certify it.
Rat lambda1_sq(const Lattice& L, const EnumBudget& budget) {
    ShortVectorList sv = short_vectors(L, min_diagonal(L.gram), budget);
    if (!sv.complete) throw std::runtime_error("short-vector budget exceeded");
    return sv.normsSq.front(); // nonempty: a basis vector attains the diagonal
}

struct RankBest {
    bool found = false;
    LogRational value; // ndeg of the best saturated sublattice of this rank
    QMat witness;      // its basis rows
};

struct ThresholdEnum {
    std::map<size_t, RankBest> best;
    std::vector<EnumeratedSub> pool;
    std::set<std::string> seen;
    bool exact = true;
    Rat explored = Rat(0);
};

// Enumerate saturated sublattices of E of slope >= T whose rank k maps to a
// subset size j on `side`: j = k on the direct side (side == E), j = r - k on
// the dual side (side == dual(E), sublattice recovered as the kernel).
// Completeness: such an F (or its dual complement W) has det <= exp(-2kT)
// (resp. exp(-2kT)/det E), so by Minkowski's second theorem its minima
// vectors all fit under the bounds below, and F is the saturation of a
// j-subset of short vectors.
void enumerate_side(const Lattice& E, const Lattice& side, bool isDual,
                    const std::vector<size_t>& sizes, const LogRational& ndegE,
                    const LogRational& T, const EnumBudget& budget, size_t& subsetBudget,
                    ThresholdEnum& out) {
    if (sizes.empty()) return;
    size_t r = E.rank;
    Rat detE = det(E.gram);
    Rat l1 = lambda1_sq(side, budget);

    std::vector<Rat> prodBound(sizes.size()), normBound(sizes.size());
    Rat maxBound(0);
    for (size_t t = 0; t < sizes.size(); ++t) {
        size_t j = sizes[t];
        size_t k = isDual ? r - j : j;
        Rat e = exp_upper_bound(T.scaled(Rat(-2 * static_cast<long>(k))));
        if (isDual) e /= detE;
        Rat gamma = rat_pow(make_rat(4, 3), static_cast<long>(j * (j - 1) / 2));
        prodBound[t] = gamma * e;
        normBound[t] = prodBound[t] / rat_pow(l1, static_cast<long>(j) - 1);
        if (normBound[t] > maxBound) maxBound = normBound[t];
    }

    ShortVectorList sv = short_vectors(side, maxBound, budget);
    if (!sv.complete) out.exact = false;
    if (maxBound > out.explored) out.explored = maxBound;
    size_t N = sv.vectors.size();

    // G_side * v per vector, for O(r) pairwise inner products.
    std::vector<std::vector<Rat>> gv(N, std::vector<Rat>(r, Rat(0)));
    for (size_t i = 0; i < N; ++i)
        for (size_t a = 0; a < r; ++a) {
            Rat acc(0);
            for (size_t b = 0; b < r; ++b)
                if (sv.vectors[i][b] != 0) acc += side.gram.at(a, b) * Rat(sv.vectors[i][b]);
            gv[i][a] = acc;
        }
    auto pair_ip = [&](size_t a, size_t b) {
        Rat acc(0);
        for (size_t c = 0; c < r; ++c)
            if (sv.vectors[a][c] != 0) acc += Rat(sv.vectors[a][c]) * gv[b][c];
        return acc;
    };

    for (size_t t = 0; t < sizes.size(); ++t) {
        size_t j = sizes[t];
        size_t k = isDual ? r - j : j;
        size_t upTo = 0;
        while (upTo < N && sv.normsSq[upTo] <= normBound[t]) ++upTo;
        if (upTo < j) continue;

        std::vector<size_t> chosen;
        Echelon ech;
        Rat prod(1);
        bool aborted = false;

        auto emit = [&]() {
            // Exact gram determinant of the chosen span.
            QMat g(j, j);
            for (size_t a = 0; a < j; ++a)
                for (size_t b = a; b < j; ++b) {
                    g.at(a, b) = pair_ip(chosen[a], chosen[b]);
                    g.at(b, a) = g.at(a, b);
                }
            Rat dspan = det(g);
            LogRational vSide = LogRational::half_log(Rat(1) / dspan);
            // Lower bound for the ndeg of the saturation in E.
            LogRational vE = isDual ? vSide + ndegE : vSide;

            RankBest& rb = out.best[k];
            bool poolOpen = out.pool.size() < kPoolCap;
            int c = rb.found ? vE.cmp(rb.value) : 1;
            if (c < 0 && !poolOpen) return;

            std::vector<const std::vector<Int>*> rows;
            for (size_t idx : chosen) rows.push_back(&sv.vectors[idx]);
            QMat span = rows_to_qmat(rows, r);
            QMat F = isDual ? integer_kernel(span) : saturate(span, r);
            std::string key = qmat_key(F);
            bool isNew = out.seen.insert(key).second;
            if (!isNew && c < 0) return;

            LogRational ndF = LogRational::half_log(Rat(1) / det(F * E.gram * F.transpose()));
            if (isNew && poolOpen) out.pool.push_back({F, ndF, k});
            if (!rb.found || ndF > rb.value) {
                rb.found = true;
                rb.value = ndF;
                rb.witness = F;
            } else if (ndF == rb.value && qmat_lex_less(F, rb.witness)) {
                rb.witness = F;
            }
        };

        std::function<void(size_t)> rec = [&](size_t start) {
            if (aborted) return;
            if (chosen.size() == j) {
                emit();
                return;
            }
            size_t need = j - chosen.size();
            for (size_t i = start; i < upTo; ++i) {
                if (aborted) return;
                if (upTo - i < need) break;
                if (subsetBudget == 0) {
                    aborted = true;
                    out.exact = false;
                    return;
                }
                --subsetBudget;
                // Minima vectors of a qualifying F multiply to at most the
                // product bound; later candidates only have larger norms.
                if (prod * rat_pow(sv.normsSq[i], static_cast<long>(need)) > prodBound[t]) break;
                if (!ech.try_add(to_rat_row(sv.vectors[i]))) continue;
                chosen.push_back(i);
                Rat keep = prod;
                prod *= sv.normsSq[i];
                rec(i + 1);
                prod = keep;
                chosen.pop_back();
                ech.pop();
            }
        };
        rec(0);
    }
}

struct HullPoint {
    size_t k;
    LogRational v;
};

std::vector<HullPoint> upper_hull(const std::vector<HullPoint>& pts) {
    std::vector<HullPoint> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            LogRational s1 = (b.v - a.v).scaled(make_rat(1, Int(static_cast<long>(b.k - a.k))));
            LogRational s2 = (p.v - b.v).scaled(make_rat(1, Int(static_cast<long>(p.k - b.k))));
            if (s1 <= s2)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    return hull;
}

ThresholdEnum run_threshold_enum(const Lattice& L, const LogRational& T,
                                 const EnumBudget& budget) {
    size_t r = L.rank;
    ThresholdEnum te;
    size_t subsetBudget = budget.maxSubsets;
    std::vector<size_t> directSizes, dualSizes;
    for (size_t k = 1; k + 1 <= r && 2 * k <= r; ++k) directSizes.push_back(k);
    for (size_t k = r / 2 + 1; k + 1 <= r; ++k) dualSizes.push_back(r - k);
    std::sort(dualSizes.begin(), dualSizes.end());
    LogRational nd = ndeg(L);
    enumerate_side(L, L, false, directSizes, nd, T, budget, subsetBudget, te);
    if (!dualSizes.empty())
        enumerate_side(L, dual(L), true, dualSizes, nd, T, budget, subsetBudget, te);
    return te;
}

} // namespace

ShortVectorList short_vectors(const Lattice& L, const Rat& bound, const EnumBudget& budget) {
    size_t n = L.rank;
    ShortVectorList out;
    out.bound = bound;
    if (bound <= 0) return out;
    LDL ldl = ldl_decompose(L.gram);

    std::vector<Int> x(n, Int(0));
    std::vector<std::pair<Rat, std::vector<Int>>> found;
    bool stop = false;

    // Levels from n-1 down to 0; at each level the residual quadratic form
    // bounds the coordinate to an exact integer interval.
    std::function<void(size_t, const Rat&)> rec = [&](size_t lvl, const Rat& used) {
        if (stop) return;
        size_t i = lvl - 1;
        Rat c(0);
        for (size_t j = i + 1; j < n; ++j)
            if (x[j] != 0) c += ldl.m.at(i, j) * Rat(x[j]);
        Rat T = (bound - used) / ldl.d[i];
        if (T < 0) return;
        Int loI = ceil_minus_sqrt(-c, T);
        Int hiI = floor_plus_sqrt(-c, T);
        for (Int xi = loI; xi <= hiI; ++xi) {
            if (stop) return;
            x[i] = xi;
            Rat term = Rat(xi) + c;
            Rat used2 = used + ldl.d[i] * term * term;
            if (used2 > bound) continue; // guards rounding at interval ends
            if (i == 0) {
                if (vec_is_zero(x)) continue;
                if (!vec_canonical_sign(x)) continue;
                if (!vec_primitive(x)) continue;
                if (found.size() >= budget.maxShortVectors) {
                    out.complete = false;
                    stop = true;
                    return;
                }
                found.emplace_back(used2, x);
            } else {
                rec(i, used2);
            }
        }
        x[i] = 0;
    };
    rec(n, Rat(0));

    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        int c = cmp(a.first, b.first);
        if (c != 0) return c < 0;
        return std::lexicographical_compare(a.second.begin(), a.second.end(), b.second.begin(),
                                            b.second.end());
    });
    for (auto& fv : found) {
        out.normsSq.push_back(fv.first);
        out.vectors.push_back(std::move(fv.second));
    }
    return out;
}

MinimaResult successive_minima_vectors(const Lattice& L) {
    size_t n = L.rank;
    EnumBudget budget = default_budget();
    Rat bound = min_diagonal(L.gram);
    while (true) {
        ShortVectorList sv = short_vectors(L, bound, budget);
        if (!sv.complete) throw std::runtime_error("short-vector budget exceeded");
        MinimaResult res;
        Echelon ech;
        for (size_t i = 0; i < sv.vectors.size() && res.vectors.size() < n; ++i) {
            if (ech.try_add(to_rat_row(sv.vectors[i]))) {
                res.lambdaSq.push_back(sv.normsSq[i]);
                res.vectors.push_back(sv.vectors[i]);
            }
        }
        if (res.vectors.size() == n) return res;
        bound *= 2;
    }
}

std::vector<LogRational> successive_minima(const Lattice& L) {
    MinimaResult res = successive_minima_vectors(L);
    std::vector<LogRational> out;
    for (const auto& l : res.lambdaSq) out.push_back(LogRational::half_log(Rat(1) / l));
    return out;
}

PolygonResult canonical_polygon_points(const Lattice& L, const EnumBudget& budget) {
    size_t r = L.rank;
    LogRational nd = ndeg(L);
    PolygonResult out;

    ThresholdEnum te;
    if (r > 1) te = run_threshold_enum(L, slope(L), budget);
    te.best[r] = {true, nd, QMat::identity(r)};
    out.exact = te.exact;
    out.exploredBound = te.explored;
    out.pool = std::move(te.pool);

    std::vector<HullPoint> pts{{0, LogRational::zero()}};
    for (const auto& [k, rb] : te.best)
        if (rb.found) pts.push_back({k, rb.value});
    std::vector<HullPoint> hull = upper_hull(pts);

    std::set<size_t> corners;
    for (const auto& h : hull) corners.insert(h.k);

    size_t seg = 0;
    for (size_t k = 0; k <= r; ++k) {
        while (seg + 1 < hull.size() && hull[seg + 1].k < k) ++seg;
        LogRational value;
        if (hull[seg].k == k)
            value = hull[seg].v;
        else {
            const auto& a = hull[seg];
            const auto& b = hull[seg + 1];
            value = a.v + (b.v - a.v).scaled(
                              make_rat(Int(static_cast<long>(k - a.k)),
                                       Int(static_cast<long>(b.k - a.k))));
        }
        PolygonPoint p{k, value, std::nullopt, corners.count(k) > 0};
        auto it = te.best.find(k);
        if (it != te.best.end() && it->second.found && it->second.value == value)
            p.witness = it->second.witness;
        out.points.push_back(std::move(p));
    }
    return out;
}

SlopeCertificate max_slope(const Lattice& L, const EnumBudget& budget) {
    size_t r = L.rank;
    LogRational nd = ndeg(L);
    LogRational mu = nd.scaled(make_rat(1, Int(static_cast<long>(r))));
    if (r == 1)
        return {nd, Sublattice(L, QMat::identity(1), true), min_diagonal(L.gram), CertMode::EXACT};

    // Seeds: the lattice itself and the shortest-vector line; the larger of
    // the two slopes is a valid enumeration threshold because it is attained.
    ShortVectorList sv0 = short_vectors(L, min_diagonal(L.gram), budget);
    if (!sv0.complete) throw std::runtime_error("short-vector budget exceeded");
    Rat l1 = sv0.normsSq.front();
    LogRational lineVal = LogRational::half_log(Rat(1) / l1);
    QMat lineBasis(1, r);
    for (size_t j = 0; j < r; ++j) lineBasis.at(0, j) = Rat(sv0.vectors.front()[j]);
    lineBasis = hnf_only(lineBasis);

    LogRational T = mu >= lineVal ? mu : lineVal;
    ThresholdEnum te = run_threshold_enum(L, T, budget);

    // Merge seeds.
    {
        RankBest& r1 = te.best[1];
        if (!r1.found || lineVal > r1.value) r1 = {true, lineVal, lineBasis};
        else if (lineVal == r1.value && qmat_lex_less(lineBasis, r1.witness))
            r1.witness = lineBasis;
        RankBest& rr = te.best[r];
        if (!rr.found || nd > rr.value) rr = {true, nd, QMat::identity(r)};
    }

    bool have = false;
    LogRational bestSlope;
    size_t bestRank = 0;
    const QMat* bestWitness = nullptr;
    for (const auto& [k, rb] : te.best) {
        if (!rb.found) continue;
        LogRational s = rb.value.scaled(make_rat(1, Int(static_cast<long>(k))));
        if (!have || s > bestSlope) {
            have = true;
            bestSlope = s;
            bestRank = k;
            bestWitness = &rb.witness;
        }
        // ties: the map iterates ranks ascending, and within a rank the
        // enumeration already kept the lexicographically smallest basis
    }
    (void)bestRank;
    return {bestSlope, Sublattice(L, *bestWitness, true),
            te.explored > 0 ? te.explored : min_diagonal(L.gram),
            te.exact ? CertMode::EXACT : CertMode::LOWER_BOUND};
}

SlopeCertificate first_degree_Z(const Lattice& L) {
    ShortVectorList sv = short_vectors(L, min_diagonal(L.gram), default_budget());
    if (!sv.complete) throw std::runtime_error("short-vector budget exceeded");
    Rat l1 = sv.normsSq.front();
    QMat basis(1, L.rank);
    for (size_t j = 0; j < L.rank; ++j) basis.at(0, j) = Rat(sv.vectors.front()[j]);
    return {LogRational::half_log(Rat(1) / l1), Sublattice(L, hnf_only(basis), true), sv.bound,
            CertMode::EXACT};
}

std::vector<QMat> automorphism_group(const Lattice& L, const EnumBudget& budget) {
    size_t n = L.rank;
    // Scale to an integral gram; the orthogonal group is scale-invariant.
    Int l(1);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) l = lcm(l, L.gram.at(i, j).get_den());
    QMat G = L.gram.scaled(Rat(l));
    Lattice scaled(G, L.label + "#int");

    Rat maxDiag = G.at(0, 0);
    for (size_t i = 1; i < n; ++i)
        if (G.at(i, i) > maxDiag) maxDiag = G.at(i, i);
    ShortVectorList sv = short_vectors(scaled, maxDiag, budget);
    if (!sv.complete) throw aut_cap_error({});

    // Signed candidate list, sorted for determinism.
    std::vector<std::vector<Int>> cand;
    std::vector<Rat> candNorm;
    for (size_t i = 0; i < sv.vectors.size(); ++i) {
        cand.push_back(sv.vectors[i]);
        candNorm.push_back(sv.normsSq[i]);
        std::vector<Int> neg(n);
        for (size_t j = 0; j < n; ++j) neg[j] = -sv.vectors[i][j];
        cand.push_back(std::move(neg));
        candNorm.push_back(sv.normsSq[i]);
    }
    std::vector<size_t> order(cand.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return std::lexicographical_compare(cand[a].begin(), cand[a].end(), cand[b].begin(),
                                            cand[b].end());
    });

    std::vector<std::vector<Rat>> gcand(cand.size(), std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < cand.size(); ++i)
        for (size_t a = 0; a < n; ++a) {
            Rat acc(0);
            for (size_t b = 0; b < n; ++b)
                if (cand[i][b] != 0) acc += G.at(a, b) * Rat(cand[i][b]);
            gcand[i][a] = acc;
        }
    auto ip = [&](size_t a, size_t b) {
        Rat acc(0);
        for (size_t c = 0; c < n; ++c)
            if (cand[a][c] != 0) acc += Rat(cand[a][c]) * gcand[b][c];
        return acc;
    };

    std::vector<QMat> group;
    std::vector<size_t> rowsIdx;
    std::function<void(size_t)> rec = [&](size_t row) {
        if (row == n) {
            QMat U(n, n);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) U.at(i, j) = Rat(cand[rowsIdx[i]][j]);
            if (group.size() >= budget.maxAutomorphisms) throw aut_cap_error(group);
            group.push_back(std::move(U));
            return;
        }
        for (size_t oi : order) {
            if (candNorm[oi] != G.at(row, row)) continue;
            bool ok = true;
            for (size_t prev = 0; prev < row && ok; ++prev)
                ok = ip(rowsIdx[prev], oi) == G.at(prev, row);
            if (!ok) continue;
            rowsIdx.push_back(oi);
            rec(row + 1);
            rowsIdx.pop_back();
        }
    };
    rec(0);
    return group;
}

size_t commutant_dimension(const std::vector<QMat>& group, size_t rank) {
    size_t n2 = rank * rank;
    QMat I = QMat::identity(rank);
    QMat S = QMat::identity(n2); // rows span the current commutant candidates
    for (const auto& U : group) {
        if (U == I || U == I.scaled(Rat(-1))) continue;
        QMat C = kron(I, U.transpose()) - kron(U, I); // row-major vec(XU - UX)
        QMat M = C * S.transpose();                   // constraints on combination coefficients
        QMat W = q_kernel(M);                         // rows w with M w^T = 0
        if (W.rows() == S.rows()) continue;           // no new constraint
        S = W * S;
        if (S.rows() <= 1) break; // the identity always commutes
    }
    return S.rows();
}

bool is_absolutely_irreducible(const std::vector<QMat>& group, size_t rank) {
    return commutant_dimension(group, rank) == 1;
}

} // namespace slopelab
