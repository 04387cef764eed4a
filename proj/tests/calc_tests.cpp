#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slopelab/filtration.hpp"
#include "slopelab/git.hpp"
#include "slopelab/harness.hpp"
#include "slopelab/tensor.hpp"

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

static RFiltration<Rat> F(size_t dim, std::vector<QMat> steps, std::vector<long> ws) {
    std::vector<Rat> w;
    for (long v : ws) w.push_back(Rat(v));
    return RFiltration<Rat>(dim, std::move(steps), std::move(w));
}

TEST_CASE("filtration construction rules") {
    CHECK_THROWS_WITH(F(0, {}, {}), "filtration needs a positive ambient dimension");
    CHECK_THROWS_WITH(F(2, {QMat::identity(2)}, {1, 2}),
                      "filtration needs matching steps and weights");
    CHECK_THROWS_WITH(F(2, {M({{1, 0}})}, {1}), "filtration must end at the full space");
    CHECK_THROWS_WITH(F(2, {M({{1, 0}}), QMat::identity(2)}, {1, 2}),
                      "filtration weights must be strictly decreasing");
    CHECK_THROWS_WITH(F(3, {M({{1, 0, 0}}), M({{0, 1, 0}, {0, 0, 1}}), QMat::identity(3)},
                        {2, 1, 0}),
                      "filtration steps must be nested");
}

TEST_CASE("lambda, expectation, jump data") {
    auto f = F(3, {M({{1, 0, 0}}), QMat::identity(3)}, {2, -1});
    CHECK(f.step_count() == 2);
    CHECK(f.step_rank(0) == 1);
    CHECK(f.weight(1) == Rat(-1));
    CHECK(f.expectation() == Rat(0)); // (2 - 1 - 1)/3

    auto lam = f.lambda({Rat(1), Rat(0), Rat(0)});
    REQUIRE(lam.has_value());
    CHECK(*lam == Rat(2));
    auto lam2 = f.lambda({Rat(1), Rat(1), Rat(0)});
    REQUIRE(lam2.has_value());
    CHECK(*lam2 == Rat(-1));
    CHECK_FALSE(f.lambda({Rat(0), Rat(0), Rat(0)}).has_value());

    CHECK(f == f);
    CHECK(RFiltration<Rat>::trivial(3).expectation() == Rat(0));
}

TEST_CASE("translate dilate dual laws") {
    auto f = F(3, {M({{1, 0, 0}}), QMat::identity(3)}, {2, -1});
    CHECK(translate(f, Rat(3, 2)).expectation() == f.expectation() + Rat(3, 2));
    CHECK(dilate(f, Rat(2, 3)).expectation() == f.expectation() * Rat(2, 3));
    CHECK_THROWS_WITH(dilate(f, Rat(0)), "dilation requires a positive factor");
    CHECK(dual(f).expectation() == -f.expectation());
    CHECK(dual(dual(f)) == f);
    CHECK(dual(translate(f, Rat(1))) == translate(dual(f), Rat(-1)));
    // dilation scales the norm quadratically
    CHECK(norm_sq(dilate(f, Rat(3))) == norm_sq(f) * Rat(9));
}

TEST_CASE("tensor and exterior expectations") {
    auto f = F(2, {M({{1, 0}}), QMat::identity(2)}, {1, 0});
    auto g = F(3, {M({{0, 0, 1}}), QMat::identity(3)}, {2, -1});
    auto t = tensor(f, g);
    CHECK(t.ambient_dim() == 6);
    CHECK(t.expectation() == f.expectation() + g.expectation());

    auto e2 = exterior(g, 2);
    CHECK(e2.ambient_dim() == 3);
    auto top = exterior(g, 3);
    CHECK(top.ambient_dim() == 1);
    CHECK(top.expectation() == g.expectation() * Rat(3));

    CHECK(direct_sum(f, g).ambient_dim() == 5);
    CHECK(direct_sum(f, g).expectation() == (f.expectation() * 2 + g.expectation() * 3) / 5);
}

TEST_CASE("restriction and quotient rank identity") {
    auto g = F(3, {M({{0, 0, 1}}), QMat::identity(3)}, {2, -1});
    QMat w = M({{1, 0, 0}, {0, 0, 1}});
    auto rest = restrict_to(g, w);
    auto quot = quotient(g, w);
    CHECK(rest.ambient_dim() == 2);
    CHECK(quot.ambient_dim() == 1);
    CHECK(rest.expectation() * 2 + quot.expectation() * 1 == g.expectation() * 3);
}

TEST_CASE("inner product and norm") {
    auto f = F(2, {M({{1, 0}}), QMat::identity(2)}, {1, 0});
    auto g = F(2, {M({{0, 1}}), QMat::identity(2)}, {3, 1});
    CHECK(inner(f, f) == norm_sq(f));
    CHECK(inner(f, g) == inner(g, f));
    // translation shifts inner products by a * E[g]
    CHECK(inner(translate(f, Rat(2)), g) == inner(f, g) + Rat(2) * g.expectation());
    CHECK(norm_sq(dual(f)) == norm_sq(f));
    // Cauchy-Schwarz with exact rationals
    CHECK(inner(f, g) * inner(f, g) <= norm_sq(f) * norm_sq(g));
}

TEST_CASE("common refinement") {
    auto f = F(2, {M({{1, 0}}), QMat::identity(2)}, {1, 0});
    auto g = F(2, {M({{0, 1}}), QMat::identity(2)}, {3, 1});
    auto basis = common_compatible_basis(f, g);
    CHECK(basis.rows() == 2);
    for (size_t i = 0; i < 2; ++i) {
        CHECK(f.lambda(basis.row(i)).has_value());
        CHECK(g.lambda(basis.row(i)).has_value());
    }

    // re-weight the graded pieces through per-step refinements
    auto r = refine(f, {RFiltration<Rat>::trivial(1, Rat(5)), RFiltration<Rat>::trivial(1, Rat(3))});
    CHECK(r.step_count() == 2);
    CHECK(r.step_rank(0) == 1);
    CHECK(r.weight(0) == Rat(5));
    CHECK(r.weight(1) == Rat(3));
    CHECK_THROWS_WITH((void)refine(f, {RFiltration<Rat>::trivial(1)}),
                      "refinement shape mismatch");

    auto ec = semist_expectation_check(QMat::identity(2), f, g);
    CHECK(ec.pass);
    CHECK(ec.lhs <= ec.rhs);
    CHECK(ec.rhs == f.expectation() + g.expectation());
    CHECK_THROWS_WITH((void)semist_expectation_check(M({{1, 1}, {2, 2}}), f, g),
                      "expectation check requires an invertible element");
}

TEST_CASE("tensor elements and ranks") {
    Lattice a2 = An(2);
    TensorElement id(a2, a2, QMat::identity(2));
    CHECK(tensorial_rank(id) == 2);
    CHECK(tensorial_rank(TensorElement(a2, a2, M({{1, 0}, {0, 0}}))) == 1);
    CHECK_THROWS_WITH(tensorial_rank(TensorElement(a2, a2, QMat(2, 2))), "zero element");

    CHECK(trace_element(a2).matrix == QMat::identity(2));
    CHECK(tensor_vec(id).size() == 4);

    TensorSubspace full(a2, a2, {M({{1, 0}, {0, 0}}), M({{0, 1}, {0, 0}}),
                                 M({{0, 0}, {1, 0}}), M({{0, 0}, {0, 1}})});
    CHECK(full.dim() == 4);
    CHECK(full.flat() == QMat::identity(4));
    RankProfile prof = rho_profile(full);
    REQUIRE(prof.perIndex.size() == 4);
    // D_1 meets the full space in the 3-dimensional cone of split tensors
    CHECK(prof.perIndex[0].lo == 1);
    CHECK(prof.perIndex[2].hi == 1);
    CHECK(prof.perIndex[3].lo == 2);
}

TEST_CASE("hermitian and epsilon norms") {
    Lattice z2 = Zn(2);
    TensorElement id(z2, z2, QMat::identity(2));
    CHECK(hs_norm_sq(id) == Rat(2));
    EigenInterval eps = eps_norm_sq(id);
    CHECK(eps.exact);
    CHECK(eps.lower == Rat(1)); // operator norm of the identity

    // split elements: the two norms agree
    TensorElement split(z2, z2, M({{1, 2}, {2, 4}}));
    EigenInterval se = eps_norm_sq(split);
    CHECK(se.exact);
    CHECK(se.lower == hs_norm_sq(split));

    // rank >= 2: epsilon strictly below hermitian
    CHECK(eps.upper < hs_norm_sq(id));

    CHECK(line_degree_hermitian(trace_element(An(2))) == LogRational::half_log(Rat(1, 2)));
    LogInterval le = line_degree_eps(id);
    LogRational lh = line_degree_hermitian(id);
    CHECK(le.lo >= lh); // smaller norm, larger degree
    LogInterval viaEnum = line_degree(id, TensorMetric::EPSILON);
    CHECK(viaEnum.lo == le.lo);
    CHECK(line_degree(id, TensorMetric::HERMITIAN).is_point());
}

TEST_CASE("rank-penalized line bounds") {
    Lattice a2 = An(2);
    TensorElement id(a2, a2, QMat::identity(2));
    auto rep = check_majoration(id);
    CHECK(rep.status == CheckStatus::PASS);
    auto eps = check_eps_first_degree(id);
    CHECK(eps.status != CheckStatus::FAIL);

    TensorSubspace diag(a2, a2, {QMat::identity(2)});
    auto mu = check_majo_de_mu(diag);
    CHECK(mu.status == CheckStatus::PASS);
}

TEST_CASE("saturated span degrees") {
    Lattice z2 = Zn(2);
    // V = Q * (e1 (x) e1 + e2 (x) e2) inside Z^2 (x) Z^2: primitive, norm 2
    TensorSubspace diag(z2, z2, {QMat::identity(2)});
    Lattice span = saturated_span(diag);
    CHECK(span.rank == 1);
    CHECK(ndeg(span) == LogRational::half_log(Rat(1, 2)));

    // a non-primitive generator saturates down to the primitive line
    TensorSubspace scaled(z2, z2, {QMat::identity(2).scaled(Rat(3))});
    CHECK(ndeg(saturated_span(scaled)) == LogRational::half_log(Rat(1, 2)));
}

TEST_CASE("siegel line decompositions") {
    SiegelLines sl = siegel_lines(An(2));
    CHECK(sl.complete);
    REQUIRE(sl.degrees.size() == 2);
    CHECK(sl.degrees[0] == LogRational::half_log(Rat(1, 2)));
    CHECK(sl.degreeSum == LogRational::log(Rat(1, 2)));
    // ndeg = sum + corrections, exactly
    CHECK(ndeg(An(2)) == sl.degreeSum + sl.gramCorrection + sl.indexCorrection);
    CHECK(sl.gramCorrection >= LogRational::zero());
    CHECK(sl.indexCorrection >= LogRational::zero());
    CHECK(sl.zhangRight != CheckStatus::FAIL);

    TensorSubspace diag(Zn(2), Zn(2), {QMat::identity(2)});
    SiegelLines slV = siegel_lines(diag);
    CHECK(slV.degrees.size() == 1);
}

TEST_CASE("split plane bounds") {
    auto rep = check_2stable(An(2), An(2), QMat::identity(2), QMat::identity(2));
    CHECK(rep.status == CheckStatus::PASS);
    auto loc = check_rk2loc(An(2), An(2), QMat::identity(2), QMat::identity(2));
    CHECK(loc.status == CheckStatus::PASS);
    auto loc2 = check_rk2loc(Zn(2), An(2), M({{2, 1}, {1, 1}}), M({{1, -1}, {0, 3}}));
    CHECK(loc2.status == CheckStatus::PASS);
}

static TensorSubspace counterexample() {
    Lattice e = Zn(3), f = Zn(3);
    return TensorSubspace(e, f, {M({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}),
                                 M({{0, 0, 1}, {0, 0, 0}, {1, 0, 0}})});
}

TEST_CASE("one-sided verdicts on the symmetric counterexample") {
    TensorSubspace v = counterexample();
    auto left = left_right_check(v, GitSide::LEFT);
    CHECK(left.status == GitStatus::STABLE_CERTIFIED);
    CHECK(left.margin == 0);
    auto right = left_right_check(v, GitSide::RIGHT);
    CHECK(right.status == GitStatus::STABLE_CERTIFIED);
    CHECK_THROWS_WITH((void)left_right_check(v, GitSide::BOTH),
                      "one-sided check needs LEFT or RIGHT");
    CHECK_THROWS_WITH((void)left_right_check(v, GitSide::LEFT, {M({{1, 0}})}),
                      "pool subspace has wrong ambient dimension");
}

TEST_CASE("two-sided instability of the counterexample") {
    TensorSubspace v = counterexample();
    auto both = both_sided_check(v, 8, 1);
    CHECK(both.status == GitStatus::UNSTABLE);
    CHECK(both.margin == Rat(1, 3));
    REQUIRE(both.witnessPair.has_value());
    const auto& [fl, fr] = *both.witnessPair;
    // witness weights are integers normalized to min 0, gcd 1
    for (size_t i = 0; i < fl.step_count(); ++i) CHECK(fl.weight(i).get_den() == 1);
    CHECK(fl.weight(fl.step_count() - 1) == 0);
    CHECK(fr.weight(fr.step_count() - 1) == 0);

    ThetaResult th = theta_minimize(v, 8, 1);
    CHECK(th.destabilizing);
    // theta = -1/2 exactly: enclosure collapses onto it
    CHECK(th.lo == Rat(-1, 2));
    CHECK(th.hi == Rat(-1, 2));
    CHECK(th.restrictedGain > 0);
}

TEST_CASE("unstable subspaces expose witnesses") {
    Lattice z2 = Zn(2);
    // V = line through e1 (x) e1: rank-1 image on both sides
    TensorSubspace line(z2, z2, {M({{1, 0}, {0, 0}})});
    auto left = left_right_check(line, GitSide::LEFT);
    CHECK(left.status == GitStatus::UNSTABLE);
    REQUIRE(left.witnessSubspace.has_value());
    CHECK(left.witnessSubspace->rows() == 1);
    CHECK(left.margin == Rat(1, 2)); // 1/1 - 1/2

    auto both = both_sided_check(line, 4, 0);
    CHECK(both.status == GitStatus::UNSTABLE);
    REQUIRE(both.witnessPair.has_value());
}

TEST_CASE("full-rank lines are one-sided stable with vacuous line constraints") {
    Lattice z2 = Zn(2);
    TensorSubspace line(z2, z2, {QMat::identity(2)});
    auto left = left_right_check(line, GitSide::LEFT);
    CHECK(left.status == GitStatus::STABLE_CERTIFIED);

    auto rows = constraint_checks(line);
    REQUIRE(rows.size() == 5);
    // rho_1 = rk E: the one-sided line bounds carry no content here
    CHECK(rows[1].suite == "constraint-line-left");
    CHECK(rows[1].status == CheckStatus::PASS);
    CHECK(rows[1].witness.find("vacuous") != std::string::npos);
    CHECK(rows[2].status == CheckStatus::PASS);
    // the two-sided bound is live: 2/1 < 2 fails, certifying that a
    // full-rank line is never two-sided stable (it is still semistable)
    CHECK(rows[0].suite == "constraint-line-both");
    CHECK(rows[0].status == CheckStatus::FAIL);
    CHECK(rows[3].status == CheckStatus::PASS);
    CHECK(rows[4].status == CheckStatus::PASS);
    auto both = both_sided_check(line, 4, 0);
    CHECK(both.status != GitStatus::UNSTABLE);
    CHECK(both.status != GitStatus::STABLE_CERTIFIED);
}

TEST_CASE("projection deficits certify instability") {
    Lattice z3 = Zn(3);
    // every generator maps into span(e1, e2) on the left
    TensorSubspace v(z3, z3, {M({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}),
                              M({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}),
                              M({{0, 0, 1}, {0, 1, 0}, {0, 0, 0}})});
    auto rows = constraint_checks(v);
    bool sawImageFail = false;
    for (const auto& r : rows)
        if (r.suite == "constraint-image-left") sawImageFail = r.status == CheckStatus::FAIL;
    CHECK(sawImageFail);
    auto left = left_right_check(v, GitSide::LEFT);
    CHECK(left.status == GitStatus::UNSTABLE);
    REQUIRE(left.witnessSubspace.has_value());
    CHECK(rank_of(*left.witnessSubspace) <= 2);
}

TEST_CASE("theta rejects rank-one-by-rank-one ambients") {
    TensorSubspace v(Zn(1), Zn(1), {M({{1}})});
    CHECK_THROWS_WITH((void)theta_minimize(v), "no nontrivial filtrations");
}

TEST_CASE("two-sided verdicts cohere with one-sided ones") {
    // spot check on a small deterministic family
    for (std::uint64_t t = 0; t < 6; ++t) {
        TrialRng rng(99, t);
        Lattice e = random_lattice(rng, 2, 2, "E");
        Lattice f = random_lattice(rng, 3, 2, "F");
        std::size_t dim = 1 + t % 3;
        TensorSubspace v = random_subspace(rng, e, f, dim);
        auto left = left_right_check(v, GitSide::LEFT);
        auto right = left_right_check(v, GitSide::RIGHT);
        auto both = both_sided_check(v, 4, t);
        if (left.status == GitStatus::UNSTABLE || right.status == GitStatus::UNSTABLE)
            CHECK(both.status == GitStatus::UNSTABLE);
        if (both.status == GitStatus::UNSTABLE) {
            CHECK(both.margin > 0);
            CHECK(both.witnessPair.has_value());
        }
    }
}
