#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "slopelab/harness.hpp"

using namespace slopelab;

static QMat M(const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Rat>> q;
    for (const auto& r : rows) {
        q.emplace_back();
        for (long v : r) q.back().push_back(Rat(v));
    }
    return QMat::from_rows(q);
}

TEST_CASE("trial rng is a deterministic per-case stream") {
    TrialRng a(42, 7), b(42, 7), c(42, 8);
    CHECK(a.next() == b.next());
    CHECK(a.next() == b.next());
    TrialRng a2(42, 7);
    CHECK(a2.next() != c.next());
    for (int i = 0; i < 200; ++i) {
        long v = a.uniform(-3, 3);
        CHECK(v >= -3);
        CHECK(v <= 3);
    }
}

TEST_CASE("random generators respect their contracts") {
    TrialRng rng(5, 0);
    QMat b = random_basis(rng, 3, 2);
    CHECK(rank_of(b) == 3);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            CHECK(b.at(i, j) <= 2);
            CHECK(b.at(i, j) >= -2);
        }
    CHECK_THROWS_AS(random_basis(rng, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(random_basis(rng, 2, 0), std::invalid_argument);

    Lattice L = random_lattice(rng, 3, 2, "r");
    L.validate(); // positive definite by construction
    CHECK(L.label == "r");

    TensorSubspace v = random_subspace(rng, L, L, 2);
    CHECK(v.dim() == 2);
    CHECK(rank_of(v.flat()) == 2);

    RFiltration<Rat> f = random_filtration(rng, 4);
    CHECK(f.ambient_dim() == 4);
    CHECK(f.step_rank(f.step_count() - 1) == 4);
}

TEST_CASE("single-lattice checks on fixed inputs") {
    Lattice z3(gram_identity(3), "Z3");
    CHECK(minkowski_check(z3).status == CheckStatus::PASS);
    CHECK(transference_check(z3).status == CheckStatus::PASS);

    Lattice a3(gram_An(3), "A3");
    CHECK(minkowski_check(a3).status == CheckStatus::PASS);
    CHECK(transference_check(a3).status == CheckStatus::PASS);

    auto rows = duality_ses_checks(a3, M({{1, 1, 0}}));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].suite == "duality-orthogonal");
    CHECK(rows[0].status == CheckStatus::PASS);
    CHECK(rows[1].suite == "ses-additivity");
    CHECK(rows[1].status == CheckStatus::PASS);
    CHECK_THROWS_WITH((void)duality_ses_checks(a3, QMat::identity(3)),
                      "proper nonzero sublattice required");

    CHECK(submodularity_check(a3, M({{1, 0, 0}, {0, 1, 0}}), M({{0, 1, 1}})).status ==
          CheckStatus::PASS);
    CHECK(submodularity_check(a3, M({{1, 0, 0}, {0, 1, 0}}), M({{0, 1, 0}, {0, 0, 1}})).status ==
          CheckStatus::PASS);
}

TEST_CASE("oracle suite is fixed and green") {
    auto rows = suite_oracles();
    CHECK(rows.size() == 32);
    ReportStats st = tally(rows);
    CHECK(st.passed == rows.size());
    CHECK(st.failed == 0);
    CHECK(st.inconclusive == 0);
    std::set<std::string> suites;
    for (const auto& r : rows) suites.insert(r.suite);
    CHECK(suites.count("oracle-an-slope"));
    CHECK(suites.count("oracle-counterexample-both"));
    CHECK(suites.count("oracle-minkowski-boundary"));
    // deterministic: two computations agree byte for byte
    CHECK(reports_csv(suite_oracles()) == reports_csv(suite_oracles()));
}

TEST_CASE("suite dispatch and seeding") {
    CHECK_THROWS_AS((void)run_config(TrialConfig{1, 1, 2, 2, 1, "nope"}), std::invalid_argument);
    CHECK(suite_names().size() == 6);

    TrialConfig cfg;
    cfg.trials = 4;
    cfg.suite = "filtrations";
    cfg.seed = 11;
    auto a = run_config(cfg);
    auto b = run_config(cfg);
    CHECK(reports_csv(a) == reports_csv(b));
    cfg.seed = 12;
    CHECK(reports_csv(run_config(cfg)) != reports_csv(a));
}

TEST_CASE("small randomized runs stay clean") {
    TrialConfig cfg;
    cfg.trials = 6;
    cfg.seed = 3;
    for (const auto& name : suite_names()) {
        cfg.suite = name;
        auto rows = run_config(cfg);
        ReportStats st = tally(rows);
        INFO("suite " << name);
        CHECK(st.failed == 0);
        CHECK(rows.size() >= cfg.trials);
        for (const auto& r : rows) {
            CHECK(!r.suite.empty());
            if (r.status == CheckStatus::FAIL) {
                // a FAIL row must carry enough to rebuild the trial
                CHECK(!r.witness.empty());
            }
        }
    }
}

TEST_CASE("all fans out over every suite in order") {
    TrialConfig cfg;
    cfg.trials = 2;
    cfg.suite = "all";
    auto rows = run_config(cfg);
    std::set<std::string> prefixes;
    for (const auto& r : rows) prefixes.insert(r.suite.substr(0, r.suite.find('-')));
    CHECK(prefixes.count("theoremA"));
    CHECK(prefixes.count("theoremB"));
    CHECK(prefixes.count("tenserr"));
    CHECK(prefixes.count("filt"));
    CHECK(prefixes.count("git"));
    CHECK(prefixes.count("oracle"));
}

TEST_CASE("csv rows are sorted and stable") {
    TrialConfig cfg;
    cfg.trials = 3;
    cfg.suite = "theoremB";
    auto rows = run_config(cfg);
    std::string csv = reports_csv(rows);
    // shuffling the input does not change the output
    std::vector<CheckReport> shuffled(rows.rbegin(), rows.rend());
    CHECK(reports_csv(shuffled) == csv);
}
