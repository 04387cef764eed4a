#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "slopelab/harness.hpp"
#include "slopelab/io.hpp"

using namespace slopelab;

static std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = "io_test_" + name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.close();
    return path;
}

static void drop(const std::string& path) { std::remove(path.c_str()); }

TEST_CASE("lattice parsing") {
    Lattice a2 = parse_lattice(R"({"label": "A2", "gram": [[2, -1], [-1, 2]]})", "t");
    CHECK(a2.label == "A2");
    CHECK(a2.rank == 2);
    CHECK(a2.gram == gram_An(2));

    // rationals as {"n","d"}, big integers as digit strings
    Lattice q = parse_lattice(R"({"label": "q", "gram": [[{"n": 1, "d": 2}]]})", "t");
    CHECK(q.gram.at(0, 0) == Rat(1, 2));
    Lattice big = parse_lattice(
        R"({"label": "big", "gram": [[{"n": "36893488147419103232", "d": 1}]]})", "t");
    CHECK(big.gram.at(0, 0) == Rat(Int(1) << 65));
}

TEST_CASE("lattice parse diagnostics carry the field path") {
    CHECK_THROWS_WITH(parse_lattice(R"({"label": "x", "gram": [[2, "y"], [1, 2]]})", "g.json"),
                      doctest::Contains("g.json: $.gram[0][1]"));
    CHECK_THROWS_WITH(parse_lattice(R"({"gram": [[1]]})", "g.json"),
                      doctest::Contains("$.label"));
    CHECK_THROWS_WITH(parse_lattice(R"({"label": "x"})", "g.json"), doctest::Contains("$.gram"));
    // asymmetric gram is rejected at validation
    CHECK_THROWS(parse_lattice(R"({"label": "x", "gram": [[1, 1], [0, 1]]})", "g.json"));
    // syntax errors keep the parser's position report
    CHECK_THROWS_WITH(parse_lattice("{", "g.json"), doctest::Contains("g.json"));
    CHECK_THROWS_WITH(parse_lattice(R"({"label": "x", "gram": [[1], [2]]})", "g.json"),
                      doctest::Contains("gram"));
}

TEST_CASE("lattice round trip") {
    Lattice a2(gram_An(2), "A2");
    Lattice back = parse_lattice(lattice_json(a2), "t");
    CHECK(back.label == a2.label);
    CHECK(back.gram == a2.gram);

    Lattice half(QMat::from_rows({{Rat(1, 2)}}), "half");
    Lattice hback = parse_lattice(lattice_json(half), "t");
    CHECK(hback.gram == half.gram);
}

TEST_CASE("subspace parsing with inline and file lattices") {
    std::string inlineText = R"({
        "left": {"label": "E", "gram": [[1, 0], [0, 1]]},
        "right": {"label": "F", "gram": [[1, 0], [0, 1]]},
        "generators": [[[1, 0], [0, 1]]]
    })";
    TensorSubspace v = parse_subspace(inlineText, "t");
    CHECK(v.dim() == 1);
    CHECK(v.left.rank == 2);
    CHECK(v.generators[0].matrix == QMat::identity(2));

    std::string lat = write_temp("lat.json", R"({"label": "E", "gram": [[1, 0], [0, 1]]})");
    std::string sub = write_temp(
        "sub.json", R"({"left": ")" + lat + R"(", "right": ")" + lat +
                        R"(", "generators": [[[0, 1], [1, 0]]]})");
    TensorSubspace w = load_subspace(sub);
    CHECK(w.left.label == "E");
    CHECK(w.generators[0].matrix == QMat::from_rows({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}}));
    drop(lat);
    drop(sub);

    CHECK_THROWS_WITH(parse_subspace(R"({"left": 3, "right": 4, "generators": []})", "s.json"),
                      doctest::Contains("$.left"));
    CHECK_THROWS_WITH(
        parse_subspace(R"({
            "left": {"label": "E", "gram": [[1]]},
            "right": {"label": "F", "gram": [[1]]},
            "generators": [[[1, 1]]]
        })", "s.json"),
        doctest::Contains("generators"));
}

TEST_CASE("subspace round trip") {
    TensorSubspace v(Lattice(gram_identity(3), "E"), Lattice(gram_identity(3), "F"),
                     {QMat::from_rows({{Rat(0), Rat(1), Rat(0)}, {Rat(1), Rat(0), Rat(0)},
                                       {Rat(0), Rat(0), Rat(0)}})});
    TensorSubspace back = parse_subspace(subspace_json(v), "t");
    CHECK(back.dim() == v.dim());
    CHECK(back.left.gram == v.left.gram);
    CHECK(back.generators[0].matrix == v.generators[0].matrix);
}

TEST_CASE("filtration parsing and round trip") {
    RFiltration<Rat> f = parse_filtration(R"({
        "dim": 3,
        "steps": [
            {"basis": [[1, 0, 0]], "weight": 2},
            {"basis": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "weight": {"n": -1, "d": 2}}
        ]
    })", "t");
    CHECK(f.ambient_dim() == 3);
    CHECK(f.step_count() == 2);
    CHECK(f.weight(1) == Rat(-1, 2));
    CHECK(parse_filtration(filtration_json(f), "t") == f);

    CHECK_THROWS_WITH(parse_filtration(R"({"dim": 2, "steps": []})", "f.json"),
                      doctest::Contains("steps"));
    CHECK_THROWS_WITH(parse_filtration(R"({
        "dim": 2,
        "steps": [{"basis": [[1, 0]], "weight": "x"}]
    })", "f.json"), doctest::Contains("weight"));
}

TEST_CASE("iq vector parsing and round trip") {
    IQVector v = parse_iq_vector(R"({"ring": "eisenstein", "coords": [[1, 0], [1, 1]]})", "t");
    CHECK(v.ring == IQRing::EISENSTEIN);
    REQUIRE(v.coords.size() == 2);
    CHECK(v.coords[1].a == 1);
    CHECK(v.coords[1].b == 1);
    IQVector back = parse_iq_vector(iq_vector_json(v), "t");
    CHECK(back.ring == v.ring);
    CHECK(back.coords[0].a == v.coords[0].a);

    CHECK_THROWS_WITH(parse_iq_vector(R"({"ring": "golden", "coords": []})", "v.json"),
                      doctest::Contains("ring"));
    CHECK_THROWS_WITH(parse_iq_vector(R"({"ring": "gauss", "coords": [[1]]})", "v.json"),
                      doctest::Contains("coords"));
}

TEST_CASE("load reports missing files by name") {
    CHECK_THROWS_WITH(load_lattice("definitely_missing.json"),
                      doctest::Contains("definitely_missing.json"));
}

TEST_CASE("csv report shape") {
    CheckReport a;
    a.suite = "s";
    a.caseId = 2;
    a.seed = 7;
    a.lhsExact = "log(2)";
    a.rhsExact = "[0, 1]"; // contains a comma: must be quoted
    a.status = CheckStatus::PASS;
    CheckReport b = a;
    b.caseId = 1;
    b.witness = "say \"hi\"";
    std::string csv = reports_csv({a, b});
    CHECK(csv.find("suite,case_id,seed,lhs_exact,rhs_exact,lhs_float,rhs_float,slack_float,"
                   "status,witness") == 0);
    CHECK(csv.find("\"[0, 1]\"") != std::string::npos);
    CHECK(csv.find("\"say \"\"hi\"\"\"") != std::string::npos);
    // rows sorted by case id within the suite
    CHECK(csv.find(",1,") < csv.find(",2,"));
    // timestamp header is opt-in and prefixed as a comment
    std::string stamped = reports_csv({a}, true);
    CHECK(stamped.rfind("# generated ", 0) == 0);
}
