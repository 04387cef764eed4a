// Acceptance gate: ten fixed criteria, one pass/fail line each.  Every
// criterion re-derives its answer from scratch with pinned seeds and verifies
// wall-clock limits where a budget is part of the requirement.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "slopelab/enumeration.hpp"
#include "slopelab/harness.hpp"
#include "slopelab/hn.hpp"
#include "slopelab/iq.hpp"
#include "slopelab/tensor.hpp"
#include "slopelab/git.hpp"

using namespace slopelab;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int n, bool ok, const std::string& detail, double secs, double limit) {
    if (limit > 0 && secs > limit) ok = false;
    if (!ok) ++failures;
    std::printf("criterion %2d: %s — %s (%.2fs%s)\n", n, ok ? "pass" : "FAIL", detail.c_str(),
                secs, limit > 0 ? (" / limit " + std::to_string(int(limit)) + "s").c_str() : "");
    std::fflush(stdout);
}

Lattice An(size_t n) { return Lattice(gram_An(n), "A" + std::to_string(n)); }

void criterion1() {
    Timer t;
    bool ok = true;
    for (size_t n = 1; n <= 6 && ok; ++n) {
        SlopeCertificate c = max_slope(An(n));
        ok = c.mode == CertMode::EXACT &&
             c.value == LogRational::half_log(Rat(n + 1)).scaled(-make_rat(1, long(n)));
    }
    report(1, ok, "slope(A_n) = -(1/2n) log(n+1) for n = 1..6, exact", t.seconds(), 1);
}

void criterion2() {
    Timer t;
    Lattice a2 = An(2);
    auto cert = is_semistable(a2);
    bool ok = cert.verdict == Verdict::YES && cert.byAutomorphisms && cert.autOrder == 12 &&
              cert.commutantDim == 1;

    SlopeCertificate mu = max_slope(a2);
    LogRational muMax = LogRational::half_log(Rat(1, 3)).scaled(Rat(1, 2)); // -1/4 log 3
    ok = ok && mu.mode == CertMode::EXACT && mu.value == muMax;

    SlopeCertificate zline = first_degree_Z(a2);
    ok = ok && zline.value == LogRational::half_log(Rat(1, 2)); // -1/2 log 2

    IQVector eis{IQRing::EISENSTEIN, {IQElem{1, 0}, IQElem{1, 1}}};
    ok = ok && iq_line_degree(a2, eis) == LogRational::half_log(Rat(1, 3)); // -1/2 log 3

    // best found line is the Z-line; the gap below the maximal slope is exact
    LogRational gap = mu.value - zline.value;
    ok = ok && gap == LogRational::half_log(Rat(4, 3)).scaled(Rat(1, 2)); // 1/4 log(4/3)

    report(2, ok, "A_2: |Aut| 12, commutant 1, mumax -1/4 log 3, lines and gap exact",
           t.seconds(), 5);
}

void criterion3() {
    Timer t;
    size_t pass = 0, fail = 0, undecided = 0;
    for (std::uint64_t k = 0; k < 500; ++k) {
        TrialRng rng(2026, k);
        size_t rank = static_cast<size_t>(rng.uniform(1, 4));
        Lattice L = random_lattice(rng, rank, 5, "m" + std::to_string(k));
        try {
            CheckReport r = minkowski_check(L);
            if (r.status == CheckStatus::PASS) ++pass;
            else if (r.status == CheckStatus::FAIL) ++fail;
            else ++undecided;
        } catch (const std::exception&) {
            ++undecided;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "Minkowski sandwich on 500 lattices (rank <= 4, entries <= 5): %zu exact pass, "
                  "%zu violations, %zu undecided",
                  pass, fail, undecided);
    report(3, fail == 0 && undecided == 0 && pass == 500, buf, t.seconds(), 300);
}

void criterion4() {
    Timer t;
    size_t pass = 0;
    for (std::uint64_t k = 0; k < 100; ++k) {
        TrialRng rng(4026, k);
        size_t rank = static_cast<size_t>(rng.uniform(1, 3));
        Lattice L = random_lattice(rng, rank, 5, "t" + std::to_string(k));
        if (transference_check(L).status == CheckStatus::PASS) ++pass;
    }
    char buf[120];
    std::snprintf(buf, sizeof buf,
                  "dual slope transference exact on %zu/100 lattices of rank <= 3", pass);
    report(4, pass == 100, buf, t.seconds(), 0);
}

void criterion5() {
    Timer t;
    TrialConfig cfg;
    cfg.seed = 5;
    cfg.trials = 300;
    cfg.rankMax = 3;
    cfg.suite = "theoremA";
    auto rows = suite_theoremA(cfg);
    ReportStats st = tally(rows);
    size_t mainRows = 0, mainExact = 0;
    for (const auto& r : rows)
        if (r.suite == "theoremA") {
            ++mainRows;
            if (r.status == CheckStatus::PASS) ++mainExact;
        }
    bool ok = st.failed == 0 && mainRows == 300 && 20 * mainExact >= 19 * mainRows;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "tensor maximal-slope bound: 300 pairs, %zu fail, %zu/%zu exact certificates",
                  st.failed, mainExact, mainRows);
    report(5, ok, buf, t.seconds(), 1800);
}

void criterion6() {
    Timer t;
    TrialConfig cfg;
    cfg.seed = 6;
    cfg.trials = 1000;
    cfg.rankMax = 3;
    cfg.suite = "theoremB";
    auto rows = suite_theoremB(cfg);
    ReportStats st = tally(rows);
    size_t lineRows = 0, lineFail = 0;
    for (const auto& r : rows)
        if (r.suite == "theoremB-sudeg2") {
            ++lineRows;
            if (r.status == CheckStatus::FAIL) ++lineFail;
        }
    bool ok = st.failed == 0 && lineRows > 0 && lineFail == 0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "subspace slope bound: 1000 subspaces, %zu fail; rank-penalised line bound on "
                  "%zu rank-1 cases, %zu fail",
                  st.failed, lineRows, lineFail);
    report(6, ok, buf, t.seconds(), 0);
}

void criterion7() {
    Timer t;
    TrialConfig cfg;
    cfg.seed = 7;
    cfg.trials = 1250; // 8 identity rows per trial
    cfg.suite = "filtrations";
    auto rows = suite_filtrations(cfg);
    ReportStats st = tally(rows);
    bool ok = rows.size() == 10000 && st.passed == rows.size();
    char buf[120];
    std::snprintf(buf, sizeof buf, "filtration calculus: %zu/%zu identity checks exact",
                  st.passed, rows.size());
    report(7, ok, buf, t.seconds(), 60);
}

void criterion8() {
    Timer t;
    Lattice e(gram_identity(3), "E"), f(gram_identity(3), "F");
    QMat g1 = QMat::from_rows({{Rat(0), Rat(1), Rat(0)},
                               {Rat(1), Rat(0), Rat(0)},
                               {Rat(0), Rat(0), Rat(0)}});
    QMat g2 = QMat::from_rows({{Rat(0), Rat(0), Rat(1)},
                               {Rat(0), Rat(0), Rat(0)},
                               {Rat(1), Rat(0), Rat(0)}});
    TensorSubspace v(e, f, {g1, g2});
    auto left = left_right_check(v, GitSide::LEFT);
    auto right = left_right_check(v, GitSide::RIGHT);
    auto both = both_sided_check(v, 8, 1);
    auto again = both_sided_check(v, 8, 1);
    bool ok = left.status == GitStatus::STABLE_CERTIFIED &&
              right.status == GitStatus::STABLE_CERTIFIED &&
              both.status == GitStatus::UNSTABLE && both.margin == Rat(1, 3) &&
              both.witnessPair.has_value() && again.witnessPair.has_value() &&
              again.margin == both.margin &&
              again.witnessPair->first == both.witnessPair->first &&
              again.witnessPair->second == both.witnessPair->second;
    report(8, ok,
           "symmetric-square counterexample: left and right stable, two-sided unstable with "
           "margin 1/3 and a reproducible witness pair",
           t.seconds(), 0);
}

void criterion9() {
    Timer t;
    size_t pass = 0, total = 0;
    for (std::uint64_t k = 0; k < 500; ++k) {
        TrialRng rng(9026, k);
        size_t rank = static_cast<size_t>(rng.uniform(2, 4));
        Lattice L = random_lattice(rng, rank, 5, "d" + std::to_string(k));
        size_t cut = static_cast<size_t>(rng.uniform(1, long(rank) - 1));
        std::vector<size_t> idx;
        for (size_t i = 0; i < cut; ++i) idx.push_back(i);
        QMat sub = saturate(random_basis(rng, rank, 2).select_rows(idx), rank);
        for (const auto& r : duality_ses_checks(L, sub)) {
            ++total;
            if (r.status == CheckStatus::PASS) ++pass;
        }
        QMat a = random_basis(rng, rank, 2), b = random_basis(rng, rank, 2);
        std::vector<size_t> ia, ib;
        for (size_t i = 0; i < static_cast<size_t>(rng.uniform(1, long(rank))); ++i)
            ia.push_back(i);
        for (size_t i = 0; i < static_cast<size_t>(rng.uniform(1, long(rank))); ++i)
            ib.push_back(i);
        ++total;
        if (submodularity_check(L, a.select_rows(ia), b.select_rows(ib)).status ==
            CheckStatus::PASS)
            ++pass;
    }
    char buf[140];
    std::snprintf(buf, sizeof buf,
                  "duality, exactness and submodularity: %zu/%zu exact on 500 pairs", pass, total);
    report(9, pass == total, buf, t.seconds(), 0);
}

void criterion10() {
    Timer t;
    size_t epsOk = 0;
    for (std::uint64_t k = 0; k < 1000; ++k) {
        TrialRng rng(10026, k);
        size_t m = static_cast<size_t>(rng.uniform(1, 3));
        size_t n = static_cast<size_t>(rng.uniform(1, 3));
        Lattice E = random_lattice(rng, m, 3, "E"), F = random_lattice(rng, n, 3, "F");
        QMat c(m, n);
        bool zero = true;
        while (zero)
            for (size_t i = 0; i < m; ++i)
                for (size_t j = 0; j < n; ++j) {
                    c.at(i, j) = Rat(rng.uniform(-3, 3));
                    if (c.at(i, j) != 0) zero = false;
                }
        TensorElement s(E, F, c);
        if (eps_norm_sq(s).upper <= hs_norm_sq(s)) ++epsOk;
    }
    size_t locOk = 0;
    for (std::uint64_t k = 0; k < 1000; ++k) {
        TrialRng rng(10126, k);
        Lattice E = random_lattice(rng, 2, 3, "E"), F = random_lattice(rng, 2, 3, "F");
        QMat eb = random_basis(rng, 2, 3), fb = random_basis(rng, 2, 3);
        if (check_rk2loc(E, F, eb, fb).status == CheckStatus::PASS) ++locOk;
    }
    char buf[140];
    std::snprintf(buf, sizeof buf,
                  "operator vs hermitian norm: %zu/1000 enclosures below; rank-2 local "
                  "inequality exact on %zu/1000",
                  epsOk, locOk);
    report(10, epsOk == 1000 && locOk == 1000, buf, t.seconds(), 0);
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all criteria passed\n");
    return failures ? 1 : 0;
}
