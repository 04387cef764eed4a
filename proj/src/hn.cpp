#include "slopelab/hn.hpp"

#include <stdexcept>

namespace slopelab {

HNData hn_data(const Lattice& L, const EnumBudget& budget) {
    auto poly = canonical_polygon_points(L, budget);
    HNData out;
    out.mode = poly.exact ? CertMode::EXACT : CertMode::LOWER_BOUND;
    for (const auto& p : poly.points) out.polygon.emplace_back(p.rnk, p.value);
    for (size_t k = 1; k < poly.points.size(); ++k)
        out.slopes.push_back(poly.points[k].value - poly.points[k - 1].value);
    for (const auto& p : poly.points) {
        if (!p.vertex || p.rnk == 0) continue;
        if (!p.witness) continue; // only possible in LOWER_BOUND mode
        out.flag.emplace_back(L, *p.witness, true);
    }
    return out;
}

SemistabilityCertificate is_semistable(const Lattice& L, const EnumBudget& budget) {
    SemistabilityCertificate cert;
    if (L.rank == 1) {
        cert.verdict = Verdict::YES;
        cert.summary = "rank 1: no proper nonzero sublattice";
        return cert;
    }
    try {
        auto group = automorphism_group(L, budget);
        cert.autOrder = group.size();
        cert.commutantDim = commutant_dimension(group, L.rank);
        if (cert.commutantDim == 1) {
            cert.byAutomorphisms = true;
            cert.verdict = Verdict::YES;
            cert.summary = "isometry group of order " + std::to_string(cert.autOrder) +
                           " acts absolutely irreducibly (commutant dimension 1)";
            return cert;
        }
    } catch (const aut_cap_error&) {
        // group too large to certify this way; fall back to enumeration
    }
    auto ms = max_slope(L, budget);
    LogRational mu = slope(L);
    if (ms.value > mu) {
        // A found destabilizer is sound evidence whatever the search mode.
        cert.verdict = Verdict::NO;
        cert.destabilizer = ms.witness;
        cert.summary =
            "destabilizing sublattice of rank " + std::to_string(ms.witness.embedding.rows());
    } else if (ms.mode == CertMode::EXACT) {
        cert.verdict = Verdict::YES;
        cert.summary = "exhaustive search: maximal slope equals the slope";
    } else {
        cert.verdict = Verdict::INCONCLUSIVE;
        cert.summary = "budget exhausted before the maximal slope was certified";
    }
    cert.slope = std::move(ms);
    return cert;
}

RFiltration<LogRational> hn_rfiltration(const Lattice& L, const EnumBudget& budget) {
    auto hd = hn_data(L, budget);
    if (hd.mode != CertMode::EXACT)
        throw std::runtime_error("polygon is only a lower bound; raise the enumeration budget");
    std::vector<QMat> steps;
    std::vector<LogRational> ws;
    size_t prevRank = 0;
    LogRational prevVal = LogRational::zero();
    for (const auto& f : hd.flag) {
        size_t rk = f.embedding.rows();
        const LogRational& val = hd.polygon[rk].second;
        ws.push_back((val - prevVal).scaled(make_rat(1, Int(rk - prevRank))));
        steps.push_back(f.embedding);
        prevRank = rk;
        prevVal = val;
    }
    if (prevRank != L.rank) throw std::logic_error("polygon flag does not reach the full lattice");
    return RFiltration<LogRational>(L.rank, std::move(steps), std::move(ws));
}

LogRational bogomolov_functional(const Lattice& L, const RFiltration<Rat>& F) {
    if (F.ambient_dim() != L.rank)
        throw std::invalid_argument("filtration has wrong ambient dimension");
    LogRational acc = LogRational::zero();
    LogRational prev = LogRational::zero();
    for (size_t i = 0; i < F.step_count(); ++i) {
        QMat sat = saturate(F.step(i), L.rank);
        LogRational nd = ndeg(induced(Sublattice(L, sat, true)));
        acc = acc + (nd - prev).scaled(F.weight(i));
        prev = nd;
    }
    return acc.scaled(make_rat(1, Int(L.rank)));
}

Rat harmonic_ell(size_t r) {
    Rat acc(0);
    for (size_t j = 2; j <= r; ++j) acc += make_rat(1, Int(j));
    return acc;
}

LogInterval varsigma_estimate(const Lattice& L, const EnumBudget& budget) {
    auto poly = canonical_polygon_points(L, budget);
    size_t r = L.rank;
    LogRational nd = poly.points[r].value;

    // Upper end: the infimum runs over quotients measured by their first
    // degree over the algebraic closure, so only extension-invariant upper
    // bounds qualify.  Rank-one quotients contribute their exact degree;
    // the zero subspace contributes through first degree <= maximal slope,
    // exact when the polygon is.
    std::optional<LogRational> hi;
    auto offer = [&hi](LogRational c) {
        if (!hi || c < *hi) hi = std::move(c);
    };
    if (r == 1) {
        offer(nd);
    } else {
        if (poly.exact) {
            offer(poly.points[1].value);
            // the infimum never exceeds the minimal slope of a hermitian bundle
            offer(nd - poly.points[r - 1].value);
        }
        for (const auto& s : poly.pool)
            if (s.rnk == r - 1) offer(nd - s.nd);
        std::vector<std::vector<Rat>> rows(r - 1, std::vector<Rat>(r, Rat(0)));
        for (size_t i = 0; i + 1 < r; ++i) rows[i][i] = 1;
        QMat f0 = saturate(QMat::from_rows(rows), r);
        offer(ndeg(quotient(L, f0)));
    }

    // Lower end: the minimal slope minus half the harmonic sum.  A hull over
    // found points only over-estimates the terminal increment, so when the
    // polygon is inexact fall back to the Minkowski-side bound
    // mumin >= ndeg - (r-1) * (-log lambda_1 + 1/2 log r).
    LogRational muMin = nd - poly.points[r - 1].value;
    if (!poly.exact && r > 1) {
        LogRational mumaxUb =
            first_degree_Z(L).value + LogRational::half_log(Rat(static_cast<long>(r)));
        muMin = nd - mumaxUb.scaled(Rat(static_cast<long>(r - 1)));
    }
    LogRational lo = muMin - LogRational::rational(harmonic_ell(r) / 2);
    return LogInterval(std::move(lo), *hi);
}

namespace {

// One-sided knowledge about an exact scalar; a missing end means unbounded.
struct Bnd {
    std::optional<LogRational> lo, hi;

    static Bnd point(const LogRational& v) { return {v, v}; }
    Bnd operator+(const LogInterval& iv) const {
        Bnd out;
        if (lo) out.lo = *lo + iv.lo;
        if (hi) out.hi = *hi + iv.hi;
        return out;
    }
};

Bnd max_slope_bounds(const Lattice& L, const EnumBudget& budget) {
    auto ms = max_slope(L, budget);
    if (ms.mode == CertMode::EXACT) return Bnd::point(ms.value);
    return {ms.value, std::nullopt};
}

Bnd min_slope_bounds(const Lattice& L, const EnumBudget& budget) {
    auto poly = canonical_polygon_points(L, budget);
    LogRational v = poly.points[L.rank].value - poly.points[L.rank - 1].value;
    // Found-point hulls only over-estimate the terminal slope, so a
    // lower-bound polygon still yields a sound upper end here.
    if (poly.exact) return Bnd::point(v);
    return {std::nullopt, v};
}

} // namespace

CheckReport slope_inequality_check(const LinearMap& f, MapMode mode, const EnumBudget& budget) {
    size_t rnk = rank_of(f.matrix);
    switch (mode) {
        case MapMode::INJECTIVE:
            if (rnk != f.source.rank) throw std::invalid_argument("map is not injective");
            break;
        case MapMode::SURJECTIVE:
            if (rnk != f.target.rank) throw std::invalid_argument("map is not surjective");
            break;
        case MapMode::NONZERO:
            if (f.matrix.is_zero()) throw std::invalid_argument("map is zero");
            break;
    }
    LogInterval h = height(f);
    Bnd lhs, rhs;
    const char* name = "";
    switch (mode) {
        case MapMode::INJECTIVE:
            lhs = max_slope_bounds(f.source, budget);
            rhs = max_slope_bounds(f.target, budget) + h;
            name = "injective";
            break;
        case MapMode::SURJECTIVE:
            lhs = min_slope_bounds(f.source, budget);
            rhs = min_slope_bounds(f.target, budget) + h;
            name = "surjective";
            break;
        case MapMode::NONZERO:
            lhs = min_slope_bounds(f.source, budget);
            rhs = max_slope_bounds(f.target, budget) + h;
            name = "nonzero";
            break;
    }
    CheckReport rep;
    rep.suite = "slope-inequality";
    rep.witness = std::string(name) + " " + f.source.label + " -> " + f.target.label;
    auto render = [](const Bnd& b) {
        std::string lo = b.lo ? b.lo->to_string() : "-inf";
        std::string hi = b.hi ? b.hi->to_string() : "+inf";
        if (b.lo && b.hi && *b.lo == *b.hi) return lo;
        return "[" + lo + ", " + hi + "]";
    };
    rep.lhsExact = render(lhs);
    rep.rhsExact = render(rhs);
    rep.lhsFloat = lhs.lo   ? lhs.lo->to_double()
                   : lhs.hi ? lhs.hi->to_double()
                            : 0.0;
    rep.rhsFloat = rhs.lo   ? rhs.lo->to_double()
                   : rhs.hi ? rhs.hi->to_double()
                            : 0.0;
    if (lhs.hi && rhs.lo && !(*rhs.lo < *lhs.hi)) {
        rep.status = CheckStatus::PASS;
        rep.slackFloat = (*rhs.lo - *lhs.hi).to_double();
    } else if (lhs.lo && rhs.hi && *lhs.lo > *rhs.hi) {
        rep.status = CheckStatus::FAIL;
        rep.slackFloat = (*rhs.hi - *lhs.lo).to_double();
    } else {
        rep.status = CheckStatus::INCONCLUSIVE;
        rep.slackFloat = 0.0;
    }
    return rep;
}

} // namespace slopelab
