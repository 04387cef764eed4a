#include "slopelab/git.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace slopelab {

const char* to_string(GitSide s) {
    switch (s) {
        case GitSide::LEFT: return "left";
        case GitSide::RIGHT: return "right";
        default: return "both";
    }
}

const char* to_string(GitStatus s) {
    switch (s) {
        case GitStatus::UNSTABLE: return "UNSTABLE";
        case GitStatus::STABLE_CERTIFIED: return "STABLE_CERTIFIED";
        case GitStatus::SEMISTABLE_CERTIFIED: return "SEMISTABLE_CERTIFIED";
        default: return "LIKELY_SEMISTABLE";
    }
}

namespace {

std::string mat_string(const QMat& m) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? "," : "") << rat_to_string(m.at(i, j));
        os << "]";
    }
    os << "]";
    return os.str();
}

std::string dec6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", x);
    return buf;
}

// [lo, hi] with lo^2 <= x <= hi^2 and hi - lo = 2^-bits; bits grows until
// lo > 0 for positive x so the enclosure is usable as a divisor.
std::pair<Rat, Rat> rat_sqrt_interval(const Rat& x, unsigned bits) {
    if (x < 0) throw std::invalid_argument("negative radicand");
    if (x == 0) return {Rat(0), Rat(0)};
    for (;; bits += 16) {
        Int scale = ipow(Int(2), bits);
        Int s = floor_sqrt(Rat(scale) * Rat(scale) * x);
        if (s > 0) return {make_rat(s, scale), make_rat(s + 1, scale)};
    }
}

// E-side support of an element: the smallest E1 with s in E1 (x) F, i.e.
// the column space of its matrix.
QMat left_image(const TensorElement& s) { return row_space_basis(s.matrix.transpose()); }

TensorSubspace transpose_subspace(const TensorSubspace& V) {
    std::vector<QMat> gens;
    gens.reserve(V.generators.size());
    for (const auto& g : V.generators) gens.push_back(g.matrix.transpose());
    return TensorSubspace(V.right, V.left, std::move(gens));
}

// Candidate subspaces of E for the left-side rank criterion: images and
// left kernels of the generators and of pairwise sums/differences, joint
// images, and coordinate subspaces.
std::vector<QMat> default_pool(const TensorSubspace& V) {
    std::size_t m = V.left.rank;
    std::vector<QMat> out;
    auto push = [&](const QMat& cand) {
        QMat b = row_space_basis(cand);
        if (b.rows() == 0 || b.rows() >= m) return;
        for (const auto& prev : out)
            if (prev == b) return;
        out.push_back(b);
    };
    for (const auto& g : V.generators) {
        push(left_image(g));
        push(q_kernel(g.matrix.transpose()));
    }
    for (std::size_t i = 0; i < V.generators.size(); ++i)
        for (std::size_t j = i + 1; j < V.generators.size(); ++j) {
            const QMat& a = V.generators[i].matrix;
            const QMat& b = V.generators[j].matrix;
            push(row_space_basis((a + b).transpose()));
            push(row_space_basis((a - b).transpose()));
            push(left_image(V.generators[i]).vstack(left_image(V.generators[j])));
        }
    if (V.generators.size() > 2) {
        // joint image of every generator: when the projection is deficient
        // this candidate always exposes the violation
        QMat joint = left_image(V.generators[0]);
        for (std::size_t i = 1; i < V.generators.size(); ++i)
            joint = joint.vstack(left_image(V.generators[i]));
        push(joint);
    }
    if (m <= 4) {
        for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
            std::vector<std::vector<Rat>> rows;
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (1u << i)) {
                    std::vector<Rat> r(m, Rat(0));
                    r[i] = 1;
                    rows.push_back(std::move(r));
                }
            push(QMat::from_rows(rows));
        }
    } else {
        for (std::size_t k = 1; k < m; ++k) {
            std::vector<std::vector<Rat>> rows;
            for (std::size_t i = 0; i < k; ++i) {
                std::vector<Rat> r(m, Rat(0));
                r[i] = 1;
                rows.push_back(std::move(r));
            }
            push(QMat::from_rows(rows));
        }
    }
    return out;
}

std::size_t intersect_rank(const QMat& vflat, const QMat& e1, std::size_t nF) {
    return row_space_intersection(vflat, kron(e1, QMat::identity(nF))).rows();
}

std::size_t left_image_dim(const TensorSubspace& V) {
    QMat stacked = V.generators[0].matrix.transpose();
    for (std::size_t i = 1; i < V.generators.size(); ++i)
        stacked = stacked.vstack(V.generators[i].matrix.transpose());
    return row_space_basis(stacked).rows();
}

// ---- two-sided search ----------------------------------------------------

// Proper steps followed by the full space; mult[i] is the rank increment.
struct Flag {
    std::vector<QMat> steps;
    std::vector<std::size_t> mult;
};

std::vector<Flag> build_flags(const std::vector<QMat>& pool, std::size_t amb,
                              std::size_t maxFlags) {
    std::vector<Flag> out;
    auto push = [&](std::vector<QMat> chain) {
        if (out.size() >= maxFlags) return;
        chain.push_back(QMat::identity(amb));
        Flag f;
        f.steps = std::move(chain);
        std::size_t prev = 0;
        for (const auto& s : f.steps) {
            f.mult.push_back(s.rows() - prev);
            prev = s.rows();
        }
        for (const auto& e : out)
            if (e.steps == f.steps) return;
        out.push_back(std::move(f));
    };
    for (const auto& p : pool) push({p});
    for (const auto& a : pool)
        for (const auto& b : pool) {
            if (a.rows() >= b.rows()) continue;
            if (row_space_contained(a, b)) push({a, b});
        }
    return out;
}

Rat pair_gain(const QMat& vflat, const RFiltration<Rat>& fE, const RFiltration<Rat>& fG) {
    RFiltration<Rat> restricted = restrict_to(tensor(fE, fG), vflat);
    return restricted.expectation() - fE.expectation() - fG.expectation();
}

// Strictly larger gain / sqrt(normSq); candidates are compared without
// leaving the rationals by squaring after a sign split.
bool ratio_improves(const Rat& bestGain, const Rat& bestNorm, const Rat& g, const Rat& n) {
    int s1 = sgn(bestGain), s2 = sgn(g);
    if (s1 != s2) return s2 > s1;
    if (s2 == 0) return false;
    Rat lhs = g * g * bestNorm;
    Rat rhs = bestGain * bestGain * n;
    return s2 > 0 ? lhs > rhs : lhs < rhs;
}

// Filtration on the flag's steps with the given weakly decreasing weights
// (ties merged into the larger step).
RFiltration<Rat> flag_filtration(const Flag& flag, const std::vector<Rat>& w, std::size_t amb) {
    std::vector<QMat> steps;
    std::vector<Rat> ws;
    for (std::size_t i = 0; i < flag.steps.size(); ++i) {
        if (i + 1 < flag.steps.size() && w[i] == w[i + 1]) continue;
        steps.push_back(flag.steps[i]);
        ws.push_back(w[i]);
    }
    return RFiltration<Rat>(amb, std::move(steps), std::move(ws));
}

// Centered indicator of a proper subspace: weight 1 on it, 0 outside,
// shifted to zero expectation.
RFiltration<Rat> indicator_filtration(const QMat& sub, std::size_t amb) {
    Rat shift = make_rat(Int(sub.rows()), Int(amb));
    std::vector<QMat> steps{sub, QMat::identity(amb)};
    std::vector<Rat> ws{Rat(1) - shift, -shift};
    return RFiltration<Rat>(amb, std::move(steps), std::move(ws));
}

struct BestPair {
    bool have = false;
    Rat gain, normSq;
    std::optional<RFiltration<Rat>> fE, fG;
};

void offer(BestPair& best, const QMat& vflat, const RFiltration<Rat>& fE,
           const RFiltration<Rat>& fG) {
    Rat n = norm_sq(fE) + norm_sq(fG);
    if (n == 0) return;
    Rat g = pair_gain(vflat, fE, fG);
    if (!best.have || ratio_improves(best.gain, best.normSq, g, n)) {
        best.have = true;
        best.gain = g;
        best.normSq = n;
        best.fE = fE;
        best.fG = fG;
    }
}

// Linear extensions of the p x q grid order, visited as cell sequences;
// each prefix is an order ideal.  Returns false when the budget ran out.
bool enum_extensions(std::size_t p, std::size_t q,
                     std::vector<std::pair<std::size_t, std::size_t>>& order,
                     std::vector<std::size_t>& fill, std::size_t& budget,
                     const std::function<void(const std::vector<std::pair<std::size_t, std::size_t>>&)>& visit) {
    if (order.size() == p * q) {
        if (budget == 0) return false;
        --budget;
        visit(order);
        return true;
    }
    for (std::size_t i = 0; i < p; ++i) {
        if (fill[i] == q) continue;
        if (i > 0 && fill[i - 1] <= fill[i]) continue;
        order.emplace_back(i, fill[i]);
        ++fill[i];
        bool ok = enum_extensions(p, q, order, fill, budget, visit);
        --fill[i];
        order.pop_back();
        if (!ok) return false;
    }
    return true;
}

// rank(V cap sum of cells) for every order ideal of the grid, keyed by the
// ideal's column-count profile.  Each cell (i,j) spans step_i(E) (x)
// step_j(F) in flat coordinates.
std::map<std::vector<std::size_t>, std::size_t>
ideal_rank_table(const QMat& vflat, const Flag& fe, const Flag& fg) {
    std::size_t p = fe.steps.size(), q = fg.steps.size();
    std::map<std::vector<std::size_t>, std::size_t> table;
    std::vector<std::size_t> profile(p, 0);
    std::size_t v = vflat.rows();
    std::function<void(std::size_t)> rec = [&](std::size_t row) {
        if (row == p) {
            QEchelon span, joint;
            for (std::size_t r = 0; r < v; ++r) {
                std::vector<Rat> x(vflat.cols());
                for (std::size_t c = 0; c < vflat.cols(); ++c) x[c] = vflat.at(r, c);
                joint.try_add(std::move(x));
            }
            for (std::size_t i = 0; i < p; ++i) {
                if (profile[i] == 0) continue;
                QMat cell = kron(fe.steps[i], fg.steps[profile[i] - 1]);
                for (std::size_t r = 0; r < cell.rows(); ++r) {
                    std::vector<Rat> x(cell.cols());
                    for (std::size_t c = 0; c < cell.cols(); ++c) x[c] = cell.at(r, c);
                    std::vector<Rat> y = x;
                    span.try_add(std::move(x));
                    joint.try_add(std::move(y));
                }
            }
            table[profile] = v + span.size() - joint.size();
            return;
        }
        std::size_t cap = row == 0 ? q : profile[row - 1];
        for (std::size_t c = 0; c <= cap; ++c) {
            profile[row] = c;
            rec(row + 1);
        }
        profile[row] = 0;
    };
    rec(0);
    return table;
}

// Closed-form maximizer of sum(alpha_i a_i) over the weights with zero
// expectation and unit quadratic norm: the metric-orthogonal projection of
// the gradient, returned unnormalized (rational).
std::vector<Rat> projected_gradient(const std::vector<Rat>& alpha,
                                    const std::vector<std::size_t>& mult, std::size_t amb) {
    Rat total(0);
    for (const Rat& a : alpha) total += a;
    std::vector<Rat> out(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i)
        out[i] = make_rat(Int(amb), Int(mult[i])) * alpha[i] - total;
    return out;
}

void chamber_candidates(BestPair& best, const QMat& vflat, const Flag& fe, const Flag& fg,
                        std::size_t mE, std::size_t nF, std::size_t& budget) {
    std::size_t p = fe.steps.size(), q = fg.steps.size();
    auto table = ideal_rank_table(vflat, fe, fg);
    std::vector<std::pair<std::size_t, std::size_t>> order;
    std::vector<std::size_t> fill(p, 0);
    auto visit = [&](const std::vector<std::pair<std::size_t, std::size_t>>& cells) {
        std::vector<Rat> alpha(p, Rat(0)), beta(q, Rat(0));
        std::vector<std::size_t> profile(p, 0);
        std::size_t prev = 0;
        for (const auto& [i, j] : cells) {
            profile[i] = j + 1;
            std::size_t now = table.at(profile);
            if (now > prev) {
                Rat inc(static_cast<long>(now - prev));
                alpha[i] += inc;
                beta[j] += inc;
            }
            prev = now;
        }
        std::vector<Rat> a = projected_gradient(alpha, fe.mult, mE);
        std::vector<Rat> b = projected_gradient(beta, fg.mult, nF);
        bool zero = true;
        for (const Rat& x : a)
            if (x != 0) zero = false;
        for (const Rat& x : b)
            if (x != 0) zero = false;
        if (zero) return;
        for (std::size_t t = 0; t + 1 < cells.size(); ++t) {
            Rat cur = a[cells[t].first] + b[cells[t].second];
            Rat nxt = a[cells[t + 1].first] + b[cells[t + 1].second];
            if (cur < nxt) return; // maximizer left its cone
        }
        offer(best, vflat, flag_filtration(fe, a, mE), flag_filtration(fg, b, nF));
    };
    enum_extensions(p, q, order, fill, budget, visit);
}

std::pair<RFiltration<Rat>, RFiltration<Rat>>
normalize_pair(const RFiltration<Rat>& fE, const RFiltration<Rat>& fG) {
    auto lowest = [](const RFiltration<Rat>& f) { return f.weight(f.step_count() - 1); };
    RFiltration<Rat> a = translate(fE, -lowest(fE));
    RFiltration<Rat> b = translate(fG, -lowest(fG));
    Int den(1), num(0);
    auto absorb = [&](const RFiltration<Rat>& f) {
        for (std::size_t i = 0; i < f.step_count(); ++i) {
            den = lcm(den, f.weight(i).get_den());
            num = gcd(num, f.weight(i).get_num());
        }
    };
    absorb(a);
    absorb(b);
    if (num == 0) return {a, b};
    Rat factor = make_rat(den, num);
    if (factor < 0) factor = -factor;
    if (factor != 1) {
        a = dilate(a, factor);
        b = dilate(b, factor);
    }
    return {a, b};
}

} // namespace

SemistabilityVerdict left_right_check(const TensorSubspace& V, GitSide side,
                                      const std::vector<QMat>& extraPool) {
    if (side == GitSide::BOTH)
        throw std::invalid_argument("one-sided check needs LEFT or RIGHT");
    if (side == GitSide::RIGHT) {
        SemistabilityVerdict out = left_right_check(transpose_subspace(V), GitSide::LEFT, extraPool);
        out.side = GitSide::RIGHT;
        return out;
    }

    std::size_t m = V.left.rank, n = V.right.rank, v = V.dim();
    SemistabilityVerdict out;
    out.side = GitSide::LEFT;
    out.margin = Rat(0);

    if (m == 1) {
        out.status = GitStatus::STABLE_CERTIFIED;
        out.evidence = "ambient side has rank 1: no proper subspaces to test";
        return out;
    }

    if (v == 1) {
        std::size_t rho = tensorial_rank(V.generators[0]);
        if (rho == m) {
            out.status = GitStatus::STABLE_CERTIFIED;
            out.evidence = "line of full tensorial rank";
        } else {
            QMat img = left_image(V.generators[0]);
            out.status = GitStatus::UNSTABLE;
            out.witnessSubspace = img;
            out.margin = Rat(1) - make_rat(Int(rho), Int(m));
            out.evidence = "line of tensorial rank " + std::to_string(rho) +
                           " below the ambient rank";
        }
        return out;
    }

    QMat vflat = V.flat();
    std::vector<QMat> pool = default_pool(V);
    for (const QMat& e : extraPool) {
        if (e.cols() != m)
            throw std::invalid_argument("pool subspace has wrong ambient dimension");
        QMat b = row_space_basis(e);
        if (b.rows() == 0 || b.rows() >= m) continue;
        bool seen = false;
        for (const auto& prev : pool)
            if (prev == b) seen = true;
        if (!seen) pool.push_back(b);
    }

    bool equalityHit = false;
    for (const QMat& e1 : pool) {
        std::size_t k = e1.rows();
        std::size_t r = intersect_rank(vflat, e1, n);
        // compare r/v with k/m exactly
        long lhs = static_cast<long>(r * m), rhs = static_cast<long>(k * v);
        if (lhs > rhs) {
            out.status = GitStatus::UNSTABLE;
            out.witnessSubspace = e1;
            out.margin = make_rat(Int(r), Int(v)) - make_rat(Int(k), Int(m));
            out.evidence = "rank criterion violated: intersection rank " + std::to_string(r) +
                           " against subspace " + mat_string(e1);
            return out;
        }
        if (lhs == rhs) equalityHit = true;
    }

    // No pool violation; try to certify the criterion for all subspaces at
    // once.  For a k-dimensional E1, any w-dimensional subspace of
    // V cap (E1 (x) F) lies inside the rank <= k locus, so a certified
    // lower bound rho_w > k caps the intersection rank below w; and the
    // full space V itself needs E1 to contain the whole left image.
    RankProfile prof = rho_profile(V);
    std::size_t imgDim = left_image_dim(V);
    bool allStrict = true, allWeak = true;
    for (std::size_t k = 1; k < m; ++k) {
        std::size_t U = v;
        for (std::size_t w = 1; w <= v; ++w)
            if (prof.perIndex[w - 1].lo > k) {
                U = w - 1;
                break;
            }
        if (imgDim > k && U == v) U = v - 1;
        if (!(U * m < k * v)) allStrict = false;
        if (!(U * m <= k * v)) allWeak = false;
    }
    std::string poolNote = "pool of " + std::to_string(pool.size()) + " subspaces exhausted";
    if (allStrict && !equalityHit) {
        out.status = GitStatus::STABLE_CERTIFIED;
        out.evidence = poolNote + "; criterion certified by the tensorial-rank profile";
    } else if (allWeak) {
        out.status = GitStatus::SEMISTABLE_CERTIFIED;
        out.evidence = poolNote + "; non-strict criterion certified by the tensorial-rank profile";
    } else {
        out.status = GitStatus::LIKELY_SEMISTABLE;
        out.evidence = poolNote + "; no certificate for the remaining subspaces";
    }
    return out;
}

ThetaResult theta_minimize(const TensorSubspace& V, std::size_t restarts, std::uint64_t seed) {
    std::size_t m = V.left.rank, n = V.right.rank;
    QMat vflat = V.flat();
    TensorSubspace Vt = transpose_subspace(V);
    std::vector<QMat> leftPool;
    std::vector<QMat> rightPool;
    // A one-sided destabilizer always yields a destabilizing pair (pair its
    // centered indicator with the trivial filtration), so those witnesses go
    // in first, ahead of any capping.
    if (m > 1) {
        auto lr = left_right_check(V, GitSide::LEFT);
        if (lr.status == GitStatus::UNSTABLE && lr.witnessSubspace)
            leftPool.push_back(*lr.witnessSubspace);
    }
    if (n > 1) {
        auto rr = left_right_check(V, GitSide::RIGHT);
        if (rr.status == GitStatus::UNSTABLE && rr.witnessSubspace)
            rightPool.push_back(*rr.witnessSubspace);
    }
    for (auto& s : default_pool(V)) {
        if (leftPool.empty() || s != leftPool.front()) leftPool.push_back(std::move(s));
    }
    for (auto& s : default_pool(Vt)) {
        if (rightPool.empty() || s != rightPool.front()) rightPool.push_back(std::move(s));
    }
    std::size_t poolCap = m * n > 9 ? 12 : 20;
    if (leftPool.size() > poolCap) leftPool.resize(poolCap);
    if (rightPool.size() > poolCap) rightPool.resize(poolCap);

    // seeded random rank-1 candidates, alternating sides
    std::uint64_t state = seed;
    for (std::size_t r = 0; r < restarts; ++r) {
        bool left = (r % 2) == 0;
        std::size_t amb = left ? m : n;
        std::vector<Rat> row(amb);
        bool nonzero = false;
        for (std::size_t i = 0; i < amb; ++i) {
            state = splitmix64(state + 0x9e3779b97f4a7c15ULL);
            long e = static_cast<long>(state % 5) - 2;
            row[i] = Rat(e);
            if (e != 0) nonzero = true;
        }
        if (!nonzero) continue;
        QMat cand = row_space_basis(QMat::from_rows({row}));
        if (cand.rows() == 0 || cand.rows() >= amb) continue;
        auto& pool = left ? leftPool : rightPool;
        bool seen = false;
        for (const auto& p : pool)
            if (p == cand) seen = true;
        if (!seen) pool.push_back(cand);
    }
    if (leftPool.empty() && rightPool.empty())
        throw std::invalid_argument("no nontrivial filtrations");

    BestPair best;
    RFiltration<Rat> trivialE = RFiltration<Rat>::trivial(m);
    RFiltration<Rat> trivialG = RFiltration<Rat>::trivial(n);

    // centered indicators, one-sided and paired
    std::vector<RFiltration<Rat>> indE, indG;
    for (const QMat& p : leftPool) indE.push_back(indicator_filtration(p, m));
    for (const QMat& q : rightPool) indG.push_back(indicator_filtration(q, n));
    for (const auto& fe : indE) offer(best, vflat, fe, trivialG);
    for (const auto& fg : indG) offer(best, vflat, trivialE, fg);
    for (const auto& fe : indE)
        for (const auto& fg : indG) offer(best, vflat, fe, fg);

    // chamber search on flag pairs, longest flags first
    std::vector<Flag> flagsE = build_flags(leftPool, m, 16);
    std::vector<Flag> flagsF = build_flags(rightPool, n, 16);
    auto longer = [](const Flag& a, const Flag& b) { return a.steps.size() > b.steps.size(); };
    std::stable_sort(flagsE.begin(), flagsE.end(), longer);
    std::stable_sort(flagsF.begin(), flagsF.end(), longer);
    std::size_t budget = 100000;
    std::size_t pairCap = 36, pairs = 0;
    for (const Flag& fe : flagsE) {
        for (const Flag& fg : flagsF) {
            if (pairs >= pairCap || budget == 0) break;
            ++pairs;
            chamber_candidates(best, vflat, fe, fg, m, n, budget);
        }
        if (pairs >= pairCap || budget == 0) break;
    }

    if (!best.have) throw std::invalid_argument("no nontrivial filtrations");

    auto [slo, shi] = rat_sqrt_interval(best.normSq, 48);
    ThetaResult out{Rat(0), Rat(0), best.gain, best.normSq, *best.fE, *best.fG, sgn(best.gain) > 0};
    if (sgn(best.gain) > 0) {
        out.lo = -best.gain / slo;
        out.hi = -best.gain / shi;
    } else if (sgn(best.gain) < 0) {
        out.lo = -best.gain / shi;
        out.hi = -best.gain / slo;
    }
    return out;
}

SemistabilityVerdict both_sided_check(const TensorSubspace& V, std::size_t restarts,
                                      std::uint64_t seed) {
    ThetaResult t = theta_minimize(V, restarts, seed);
    SemistabilityVerdict out;
    out.side = GitSide::BOTH;
    out.margin = Rat(0);
    std::string enclosure = "theta in [" + dec6(rat_to_double(t.lo)) + ", " +
                            dec6(rat_to_double(t.hi)) + "]";
    if (t.destabilizing) {
        auto pair = normalize_pair(t.fLeft, t.fRight);
        Rat margin = pair_gain(V.flat(), pair.first, pair.second);
        out.status = GitStatus::UNSTABLE;
        out.witnessPair = pair;
        out.margin = margin;
        out.evidence = "destabilizing filtration pair found; " + enclosure;
    } else {
        out.status = GitStatus::LIKELY_SEMISTABLE;
        out.evidence = "no destabilizing pair found; best " + enclosure;
    }
    return out;
}

std::vector<CheckReport> constraint_checks(const TensorSubspace& V) {
    std::size_t m = V.left.rank, n = V.right.rank, v = V.dim();
    RankProfile prof = rho_profile(V);
    std::size_t lo = prof.perIndex[0].lo, hi = prof.perIndex[0].hi;
    std::vector<CheckReport> out;

    // The one-sided bounds come from testing the image of a minimal-rank
    // line, which must be a proper subspace of its ambient side; when the
    // minimal rank fills that side the constraint is vacuous.  properCap is
    // the largest rank with a proper image.
    auto lineCheck = [&](const std::string& suite, const Rat& lhs, const Rat& perRank,
                         std::size_t properCap) {
        CheckReport r;
        r.suite = suite;
        Rat rhsLo = perRank * Rat(static_cast<long>(lo));
        Rat rhsHi = perRank * Rat(static_cast<long>(hi));
        r.lhsExact = rat_to_string(lhs);
        r.rhsExact = lo == hi ? rat_to_string(rhsLo)
                              : "[" + rat_to_string(rhsLo) + ", " + rat_to_string(rhsHi) + "]";
        r.lhsFloat = rat_to_double(lhs);
        r.rhsFloat = rat_to_double((rhsLo + rhsHi) / 2);
        r.slackFloat = r.rhsFloat - r.lhsFloat;
        if (lo > properCap) {
            r.status = CheckStatus::PASS;
            if (!(lhs < rhsLo))
                r.witness = "minimal-rank image spans the ambient side: constraint vacuous";
        } else if (lhs < rhsLo) {
            r.status = CheckStatus::PASS;
        } else if (hi <= properCap && lhs >= rhsHi) {
            r.status = CheckStatus::FAIL;
            r.witness = "minimal tensorial rank in [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "] refutes the strict bound";
        } else {
            r.status = CheckStatus::INCONCLUSIVE;
            r.witness = "tensorial-rank enclosure too wide to decide";
        }
        out.push_back(std::move(r));
    };

    // The two-sided bound needs no properness guard: when the minimal rank
    // fills the smaller side it follows from the other side's inequality,
    // and when it fills both sides no line can be two-sided stable.
    Rat perBoth = make_rat(1, static_cast<long>(m)) + make_rat(1, static_cast<long>(n));
    lineCheck("constraint-line-both", make_rat(2, static_cast<long>(v)), perBoth, std::min(m, n));
    lineCheck("constraint-line-left", make_rat(1, static_cast<long>(v)),
              make_rat(1, static_cast<long>(m)), m - 1);
    lineCheck("constraint-line-right", make_rat(1, static_cast<long>(v)),
              make_rat(1, static_cast<long>(n)), n - 1);

    auto imageCheck = [&](const std::string& suite, const TensorSubspace& W, std::size_t amb) {
        CheckReport r;
        r.suite = suite;
        std::size_t dim = left_image_dim(W);
        std::size_t deficit = amb - dim;
        r.lhsExact = std::to_string(deficit);
        r.rhsExact = "0";
        r.lhsFloat = static_cast<double>(deficit);
        r.rhsFloat = 0.0;
        r.slackFloat = -r.lhsFloat;
        r.status = deficit == 0 ? CheckStatus::PASS : CheckStatus::FAIL;
        if (deficit != 0)
            r.witness = "projection image has rank " + std::to_string(dim) + " of " +
                        std::to_string(amb);
        out.push_back(std::move(r));
    };
    imageCheck("constraint-image-left", V, m);
    imageCheck("constraint-image-right", transpose_subspace(V), n);
    return out;
}

} // namespace slopelab
