#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slopelab/enumeration.hpp"
#include "slopelab/hn.hpp"
#include "slopelab/iq.hpp"
#include "slopelab/lattice.hpp"

using namespace slopelab;

static QMat M(const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Rat>> q;
    for (const auto& r : rows) {
        q.emplace_back();
        for (long v : r) q.back().push_back(Rat(v));
    }
    return QMat::from_rows(q);
}

static Lattice Zn(size_t n) { return Lattice(gram_identity(n), "Z" + std::to_string(n)); }
static Lattice An(size_t n) { return Lattice(gram_An(n), "A" + std::to_string(n)); }

TEST_CASE("degree and slope basics") {
    CHECK(ndeg(Zn(3)).is_zero());
    CHECK(slope(An(2)) == LogRational::half_log(Rat(1, 3)).scaled(Rat(1, 2)));
    // det gram(A_n) = n + 1, so ndeg = -1/2 log(n+1) and slope divides by n
    for (size_t n = 1; n <= 6; ++n) {
        CHECK(ndeg(An(n)) == LogRational::half_log(Rat(1, n + 1)));
        CHECK(slope(An(n)) == LogRational::half_log(Rat(n + 1)).scaled(-make_rat(1, long(n))));
    }
    CHECK_THROWS_AS(Lattice(M({{1, 2}, {0, 1}}), "bad").validate(), std::invalid_argument);
    CHECK_THROWS_AS(Lattice(M({{0, 0}, {0, 0}}), "bad").validate(), std::invalid_argument);
}

TEST_CASE("duality, sums, tensor and exterior degrees") {
    Lattice a2 = An(2), d = Lattice(M({{1, 0}, {0, 4}}), "diag14");
    CHECK(ndeg(dual(a2)) == -ndeg(a2));
    CHECK(ndeg(direct_sum(a2, d)) == ndeg(a2) + ndeg(d));
    // ndeg(E (x) F) = rkF ndeg(E) + rkE ndeg(F)
    CHECK(ndeg(tensor(a2, d)) == ndeg(a2).scaled(Rat(2)) + ndeg(d).scaled(Rat(2)));
    // top exterior power is the determinant line
    CHECK(ndeg(exterior(a2, 2)) == ndeg(a2));
    CHECK(ndeg(det_line(a2)) == ndeg(a2));
    Lattice a3 = An(3);
    // ndeg(Lambda^k E) = binom(r-1, k-1) ndeg(E)
    CHECK(ndeg(exterior(a3, 2)) == ndeg(a3).scaled(Rat(2)));
    CHECK(exterior(a3, 2).rank == 3);
    CHECK(k_subsets(4, 2).size() == 6);
}

TEST_CASE("sublattices, quotients, complements") {
    Lattice a3 = An(3);
    QMat rows = M({{1, 1, 0}});
    Sublattice sub(a3, saturate(rows, 3), true);
    Lattice v = induced(sub);
    Lattice q = quotient(a3, sub.embedding);
    CHECK(q.rank == 2);
    // short exact sequence additivity
    CHECK(ndeg(a3) == ndeg(v) + ndeg(q));
    // orthogonal complement lives in the dual with ndeg(V-perp) = ndeg(V) - ndeg(L)
    Sublattice perp = orthogonal_complement(sub);
    CHECK(perp.embedding.rows() == 2);
    CHECK(ndeg(induced(perp)) == ndeg(v) - ndeg(a3));

    // non-saturated embedding: induced degree drops by log of the index
    Sublattice doubled(a3, sub.embedding.scaled(Rat(2)), false);
    CHECK(ndeg(induced(doubled)) == ndeg(v) - LogRational::log(Rat(2)));
}

TEST_CASE("successive minima oracles") {
    auto smZ = successive_minima(Zn(3));
    REQUIRE(smZ.size() == 3);
    for (const auto& v : smZ) CHECK(v.is_zero());

    auto smA2 = successive_minima(An(2));
    REQUIRE(smA2.size() == 2);
    CHECK(smA2[0] == LogRational::half_log(Rat(1, 2))); // -log lambda_1, lambda_1^2 = 2
    CHECK(smA2[1] == LogRational::half_log(Rat(1, 2)));

    auto smD = successive_minima(Lattice(M({{1, 0}, {0, 4}}), "diag14"));
    CHECK(smD[0].is_zero());
    CHECK(smD[1] == LogRational::half_log(Rat(1, 4)));

    // dual A_2 has lambda_1^2 = 2/3
    auto smDual = successive_minima(dual(An(2)));
    CHECK(smDual[0] == LogRational::half_log(Rat(3, 2)));
}

TEST_CASE("max slope certificates") {
    SlopeCertificate a2 = max_slope(An(2));
    CHECK(a2.mode == CertMode::EXACT);
    CHECK(a2.value == slope(An(2))); // A_2 is semistable
    CHECK(a2.witness.rows() == 2);

    SlopeCertificate d = max_slope(Lattice(M({{1, 0}, {0, 4}}), "diag14"));
    CHECK(d.mode == CertMode::EXACT);
    CHECK(d.value.is_zero());
    CHECK(d.witness.rows() == 1);

    SlopeCertificate z1 = first_degree_Z(An(2));
    CHECK(z1.value == LogRational::half_log(Rat(1, 2)));

    // budget exhaustion degrades to a lower bound instead of guessing
    EnumBudget tiny;
    tiny.maxShortVectors = 1;
    tiny.maxSubsets = 1;
    SlopeCertificate capped = max_slope(An(3), tiny);
    CHECK(capped.mode == CertMode::LOWER_BOUND);
    CHECK(capped.value <= max_slope(An(3)).value);
}

TEST_CASE("canonical polygon and flag") {
    Lattice d = Lattice(M({{1, 0}, {0, 4}}), "diag14");
    HNData hd = hn_data(d);
    CHECK(hd.mode == CertMode::EXACT);
    REQUIRE(hd.polygon.size() == 3);
    CHECK(hd.polygon[0].second.is_zero());
    CHECK(hd.polygon[1].second.is_zero());
    CHECK(hd.polygon[2].second == LogRational::half_log(Rat(1, 4)));
    REQUIRE(hd.slopes.size() == 2);
    CHECK(hd.slopes[0].is_zero());
    CHECK(hd.slopes[1] == LogRational::half_log(Rat(1, 4)));
    REQUIRE(hd.flag.size() == 2);
    CHECK(hd.flag[0].embedding == M({{1, 0}}));

    // semistable lattice: the polygon is a single segment
    HNData a2 = hn_data(An(2));
    CHECK(a2.slopes[0] == a2.slopes[1]);
}

TEST_CASE("slope transference under duality") {
    for (auto gram : {gram_An(3), M({{1, 0}, {0, 4}}), M({{2, 1}, {1, 3}})}) {
        Lattice L(gram, "t");
        HNData h = hn_data(L), hd = hn_data(dual(L));
        REQUIRE(h.mode == CertMode::EXACT);
        REQUIRE(hd.mode == CertMode::EXACT);
        size_t r = L.rank;
        for (size_t i = 0; i < r; ++i) CHECK(hd.slopes[i] == -h.slopes[r - 1 - i]);
    }
}

TEST_CASE("semistability certificates") {
    auto a2 = is_semistable(An(2));
    CHECK(a2.verdict == Verdict::YES);
    CHECK(a2.byAutomorphisms);
    CHECK(a2.autOrder == 12);
    CHECK(a2.commutantDim == 1);

    auto d = is_semistable(Lattice(M({{1, 0}, {0, 4}}), "diag14"));
    CHECK(d.verdict == Verdict::NO);
    REQUIRE(d.destabilizer.has_value());
    CHECK(d.destabilizer->embedding == M({{1, 0}}));
    CHECK(slope(induced(*d.destabilizer)) > slope(Lattice(M({{1, 0}, {0, 4}}), "diag14")));
}

TEST_CASE("automorphism groups and commutants") {
    auto g2 = automorphism_group(Zn(2));
    CHECK(g2.size() == 8); // signed permutations
    CHECK(commutant_dimension(g2, 2) == 1);
    CHECK(is_absolutely_irreducible(g2, 2));

    auto a2 = automorphism_group(An(2));
    CHECK(a2.size() == 12);

    auto d = automorphism_group(Lattice(M({{1, 0}, {0, 4}}), "diag14"));
    CHECK(d.size() == 4); // diag(+-1, +-1)
    CHECK(commutant_dimension(d, 2) == 2);
    CHECK_FALSE(is_absolutely_irreducible(d, 2));
}

TEST_CASE("heights of linear maps") {
    LinearMap f{Zn(2), Zn(3), M({{1, -1, 0}, {0, 1, -1}})};
    LogInterval h = height(f);
    CHECK(h.is_point());
    CHECK(h.lo == LogRational::half_log(Rat(3)));

    // scaling the matrix does not move the height (content normalizes)
    LinearMap g{Zn(2), Zn(3), f.matrix.scaled(Rat(7, 2))};
    CHECK(height(g).lo == h.lo);

    LinearMap id{Zn(2), Zn(2), QMat::identity(2)};
    CHECK(height(id).is_point());
    CHECK(height(id).lo.is_zero());
}

TEST_CASE("slope inequalities along maps") {
    // the identity Z^2 -> Z^2 is injective and surjective with height 0
    LinearMap id{Zn(2), Zn(2), QMat::identity(2)};
    CHECK(slope_inequality_check(id, MapMode::INJECTIVE).status == CheckStatus::PASS);
    CHECK(slope_inequality_check(id, MapMode::SURJECTIVE).status == CheckStatus::PASS);
    CHECK(slope_inequality_check(id, MapMode::NONZERO).status == CheckStatus::PASS);
    CHECK_THROWS(slope_inequality_check(LinearMap{Zn(2), Zn(2), QMat(2, 2)}, MapMode::NONZERO));
}

TEST_CASE("stable upper degree enclosure") {
    LogInterval vs = varsigma_estimate(Zn(2));
    CHECK(vs.lo <= LogRational::zero());
    CHECK(vs.hi >= LogRational::zero() - LogRational::rational(harmonic_ell(2) / 2));
    CHECK(vs.hi <= LogRational::zero()); // rank-1 quotient of Z^2 has degree 0

    LogInterval a2 = varsigma_estimate(An(2));
    CHECK(a2.lo <= a2.hi);
    // upper end is at most mumin = slope for a semistable lattice
    CHECK(a2.hi <= slope(An(2)));

    CHECK(harmonic_ell(1) == 0);
    CHECK(harmonic_ell(2) == Rat(1, 2));
    CHECK(harmonic_ell(3) == Rat(5, 6));
    CHECK(harmonic_ell(4) == Rat(13, 12));
}

TEST_CASE("bogomolov functional on filtrations") {
    Lattice d(M({{1, 0}, {0, 4}}), "diag14");
    RFiltration<Rat> hnFlag(2, {M({{1, 0}}), QMat::identity(2)}, {Rat(1), Rat(0)});
    // destabilizing direction: the functional exceeds slope * expectation
    CHECK(bogomolov_functional(d, hnFlag) > slope(d).scaled(hnFlag.expectation()));

    // semistable lattice: any filtration obeys the bound
    RFiltration<Rat> f(2, {M({{1, 0}}), QMat::identity(2)}, {Rat(2), Rat(-1)});
    CHECK(bogomolov_functional(An(2), f) <= slope(An(2)).scaled(f.expectation()));
}

TEST_CASE("imaginary quadratic arithmetic") {
    IQElem w{1, 1}, z{0, 1};
    CHECK(iq_norm(IQRing::EISENSTEIN, w) == 1);
    CHECK(iq_norm(IQRing::GAUSS, z) == 1);
    CHECK(iq_norm(IQRing::SQRT2, z) == 2);
    CHECK(iq_re(IQRing::EISENSTEIN, w) == Rat(1, 2));
    // omega * omega = -1 - omega
    IQElem w2 = iq_mul(IQRing::EISENSTEIN, z, z);
    CHECK(w2.a == -1);
    CHECK(w2.b == -1);
    IQElem g = iq_gcd(IQRing::GAUSS, IQElem{2, 0}, IQElem{1, 1});
    CHECK(iq_norm(IQRing::GAUSS, g) == 2); // 1+i divides 2
    CHECK_THROWS_WITH(iq_div_exact(IQRing::GAUSS, IQElem{1, 0}, IQElem{0, 0}),
                      "division by zero");
    CHECK_THROWS_WITH(iq_div_exact(IQRing::GAUSS, IQElem{1, 0}, IQElem{2, 0}),
                      "inexact division");
}

TEST_CASE("imaginary quadratic line degrees") {
    // Eisenstein line (1, omega) in A_2 achieves -1/2 log 3
    IQVector eis{IQRing::EISENSTEIN, {IQElem{1, 0}, IQElem{1, 1}}};
    CHECK(iq_line_degree(An(2), eis) == LogRational::half_log(Rat(1, 3)));

    // Gauss line (0, 1) in A_2: alpha = 2 support bound met with equality
    IQVector gau{IQRing::GAUSS, {IQElem{0, 0}, IQElem{1, 0}}};
    CHECK(iq_line_degree(An(2), gau) == LogRational::half_log(Rat(1, 2)));
    auto rep = check_An_alpha_bound(2, gau);
    CHECK(rep.status == CheckStatus::PASS);
    CHECK(rep.lhsExact == rep.rhsExact);

    auto repE = check_An_alpha_bound(2, eis);
    CHECK(repE.status == CheckStatus::PASS);

    CHECK_THROWS_WITH(iq_line_degree(An(2), IQVector{IQRing::GAUSS, {IQElem{0, 0}, IQElem{0, 0}}}),
                      "zero vector");
    CHECK_THROWS_WITH(iq_line_degree(An(2), IQVector{IQRing::GAUSS, {IQElem{1, 0}}}),
                      "vector has wrong ambient dimension");
}
