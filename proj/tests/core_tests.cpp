#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slopelab/charpoly.hpp"
#include "slopelab/log_rational.hpp"
#include "slopelab/matrix.hpp"
#include "slopelab/rational.hpp"

using namespace slopelab;

static QMat M(const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Rat>> q;
    for (const auto& r : rows) {
        q.emplace_back();
        for (long v : r) q.back().push_back(Rat(v));
    }
    return QMat::from_rows(q);
}

TEST_CASE("rational helpers") {
    CHECK(make_rat(2, -4) == Rat(-1, 2));
    CHECK_THROWS_AS(make_rat(1, 0), std::invalid_argument);
    CHECK(ipow(Int(3), 5) == 243);
    CHECK(rat_pow(Rat(2, 3), 3) == Rat(8, 27));
    CHECK(rat_pow(Rat(2, 3), -2) == Rat(9, 4));
    CHECK(floor_sqrt(Int(35)) == 5);
    CHECK(floor_sqrt(Int(36)) == 6);
    CHECK(floor_root(Int(80), 4) == 2);
    CHECK(exact_root(Int(81), 4) == Int(3));
    CHECK_FALSE(exact_root(Int(80), 4).has_value());
    CHECK(rat_to_double(Rat(1, 4)) == doctest::Approx(0.25));
    // the per-trial stream constant: fixed forever for reproducibility
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("matrix arithmetic and decompositions") {
    QMat a = M({{1, 2}, {3, 4}});
    CHECK(det(a) == Rat(-2));
    CHECK(rank_of(a) == 2);
    CHECK(inverse(a) * a == QMat::identity(2));
    CHECK_THROWS_AS(inverse(M({{1, 2}, {2, 4}})), std::domain_error);

    QMat b = M({{2, 0}, {1, 1}});
    CHECK(solve_left(a, a * b) * a == a * b);

    auto x = solve_column(a, {Rat(5), Rat(11)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Rat(1));
    CHECK((*x)[1] == Rat(2));
    CHECK_FALSE(solve_column(M({{1, 2}, {2, 4}}), {Rat(0), Rat(1)}).has_value());

    QMat k = q_kernel(M({{1, 1, 1}}));
    CHECK(k.rows() == 2);
    CHECK((M({{1, 1, 1}}) * k.transpose()).is_zero());

    CHECK(kron(a, QMat::identity(2)).rows() == 4);
    CHECK(det(kron(a, b)) == det(a) * det(a) * det(b) * det(b));
    CHECK(minor_det(a, {0}, {1}) == Rat(2));
}

TEST_CASE("row space operations") {
    QMat a = M({{1, 0, 1}, {0, 1, 1}});
    QMat b = M({{1, 1, 2}, {0, 0, 1}});
    CHECK(row_space_basis(M({{2, 0, 2}, {1, 0, 1}})) == M({{1, 0, 1}}));
    CHECK(row_space_contained(M({{1, 1, 2}}), a));
    CHECK_FALSE(row_space_contained(M({{1, 0, 0}}), a));
    QMat inter = row_space_intersection(a, b);
    CHECK(inter.rows() == 1);
    CHECK(row_space_contained(inter, a));
    CHECK(row_space_contained(inter, b));
}

TEST_CASE("hermite form, saturation, integer kernel") {
    QMat m = M({{2, 4}, {6, 8}});
    auto [h, u] = hnf(m);
    CHECK(u * m == h);
    CHECK(h == hnf_only(m));
    CHECK(h.at(1, 0) == 0);

    // index-2 sublattice of Z^2: saturation recovers the full row space basis
    QMat sat = saturate(M({{2, 0}, {0, 1}}), 2);
    CHECK(det(sat) * det(sat) == 1);

    CHECK_THROWS_WITH(saturate(M({{0, 0}}), 2), "empty saturation");

    QMat ik = integer_kernel(M({{2, 4, 6}}));
    CHECK(ik.rows() == 2);
    CHECK(ik.is_integral());
    CHECK((M({{2, 4, 6}}) * ik.transpose()).is_zero());

    CHECK(content(M({{4, 6}, {8, 10}})) == Rat(2));
    CHECK(content(M({{1, 2}}).scaled(Rat(1, 3))) == Rat(1, 3));
}

TEST_CASE("quotient lifts complete a sublattice basis") {
    QMat b = M({{1, 1, 0}});
    QMat lifts = quotient_lifts(b);
    CHECK(lifts.rows() == 2);
    QMat full = b.vstack(lifts);
    Rat d = det(full);
    CHECK((d == 1 || d == -1));
}

TEST_CASE("log rational exact ordering") {
    LogRational halfLog2 = LogRational::half_log(Rat(2));
    LogRational thirdLog3 = LogRational::log(Rat(3)).scaled(Rat(1, 3));
    // 2^3 < 3^2, so (1/2) log 2 < (1/3) log 3
    CHECK(halfLog2 < thirdLog3);
    CHECK(LogRational::log(Rat(4)) == LogRational::log(Rat(2)).scaled(Rat(2)));
    CHECK(LogRational::half_log(Rat(1, 3)) == -LogRational::half_log(Rat(3)));

    // mixed log + rational offsets: log 3 vs 1 + 1/10 needs the e-power route
    LogRational log3 = LogRational::log(Rat(3));
    CHECK(log3 > LogRational::rational(Rat(11, 10)));
    CHECK(log3 < LogRational::rational(Rat(6, 5)));
    CHECK(LogRational::rational(Rat(-1, 2)).sign() == -1);
    CHECK(LogRational::zero().is_zero());
    CHECK(LogRational::rational(Rat(3, 4)).is_rational());
    CHECK_FALSE(log3.is_rational());

    LogRational sum = halfLog2 + halfLog2;
    CHECK(sum == LogRational::log(Rat(2)));
    CHECK((log3 - log3).is_zero());
    CHECK(log3.to_double() == doctest::Approx(1.0986122886681098));
}

TEST_CASE("log rational rendering") {
    CHECK(LogRational::rational(Rat(3, 4)).to_string() == "3/4");
    CHECK(LogRational::zero().to_string() == "0");
    std::string s = LogRational::half_log(Rat(3)).to_string();
    CHECK(s.find("log(3)") != std::string::npos);
    LogInterval point(LogRational::half_log(Rat(3)));
    CHECK(point.is_point());
    CHECK(point.to_string() == s);
    LogInterval wide(LogRational::zero(), LogRational::log(Rat(2)));
    CHECK(wide.to_string().find(", ") != std::string::npos);
    CHECK(wide.cmp_certified(LogRational::rational(Rat(-1))) == 1);
    CHECK(wide.cmp_certified(LogRational::rational(Rat(2))) == -1);
    CHECK(wide.cmp_certified(LogRational::half_log(Rat(2))) == 0);
}

TEST_CASE("characteristic polynomials") {
    QMat a = M({{2, 1}, {1, 2}});
    auto p = charpoly(a); // (x-1)(x-3) = 3 - 4x + x^2 up to sign convention
    REQUIRE(p.size() == 3);
    CHECK(poly_eval(p, Rat(1)) == 0);
    CHECK(poly_eval(p, Rat(3)) == 0);
    CHECK(sturm_count(p, Rat(0), Rat(4)) == 2);
    CHECK(sturm_count(p, Rat(0), Rat(2)) == 1);

    auto d = poly_derivative(p);
    REQUIRE(d.size() == 2);
    CHECK(poly_eval(d, Rat(2)) == 0);
}

TEST_CASE("largest eigenvalue enclosures") {
    // rational spectrum is pinned exactly
    EigenInterval e = max_eigenvalue_interval(M({{2, 1}, {1, 2}}), Rat(1, 1000));
    CHECK(e.exact);
    CHECK(e.lower == Rat(3));

    // irrational spectrum: x^2 - 2x - 1, largest root 1 + sqrt(2)
    EigenInterval s = largest_root_interval({Rat(-1), Rat(-2), Rat(1)}, Rat(1, 1000000));
    CHECK_FALSE(s.exact);
    CHECK(s.upper - s.lower <= Rat(1, 1000000));
    CHECK(rat_to_double(s.lower) == doctest::Approx(2.4142135623).epsilon(1e-5));

    // pencil: largest lambda with det(lambda*B - A) = 0, here A = diag(1,4),
    // B = diag(1,2) gives 2
    EigenInterval p = max_pencil_eigenvalue(M({{1, 0}, {0, 4}}), M({{1, 0}, {0, 2}}), Rat(1, 1000));
    CHECK(p.exact);
    CHECK(p.lower == Rat(2));

    LogInterval h = half_log_interval(p);
    CHECK(h.is_point());
    CHECK(h.lo == LogRational::half_log(Rat(2)));
}
