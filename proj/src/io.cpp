#include "slopelab/io.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace slopelab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& path,
                       const std::string& what) {
    throw std::runtime_error(origin + ": " + path + ": " + what);
}

json parse_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        std::size_t cut = msg.find("] ");
        if (cut != std::string::npos) msg = msg.substr(cut + 2);
        throw std::runtime_error(origin + ": " + msg);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Int int_field(const json& j, const std::string& origin, const std::string& path) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
        bool digits = s.size() > start;
        for (std::size_t i = start; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) digits = false;
        if (!digits) fail(origin, path, "expected an integer");
        return Int(s);
    }
    fail(origin, path, "expected an integer");
}

Rat rat_field(const json& j, const std::string& origin, const std::string& path) {
    if (j.is_number_integer() || j.is_string()) return Rat(int_field(j, origin, path));
    if (j.is_object()) {
        if (!j.contains("n") || !j.contains("d"))
            fail(origin, path, "expected an integer or {\"n\", \"d\"}");
        Int n = int_field(j.at("n"), origin, path + ".n");
        Int d = int_field(j.at("d"), origin, path + ".d");
        if (d == 0) fail(origin, path + ".d", "zero denominator");
        return make_rat(n, d);
    }
    fail(origin, path, "expected an integer or {\"n\", \"d\"}");
}

QMat matrix_field(const json& j, const std::string& origin, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(origin, path, "expected a non-empty array of rows");
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& row = j[i];
        std::string rp = path + "[" + std::to_string(i) + "]";
        if (!row.is_array() || row.empty()) fail(origin, rp, "expected a non-empty row");
        if (i > 0 && row.size() != rows[0].size()) fail(origin, rp, "rows have unequal lengths");
        std::vector<Rat> out;
        out.reserve(row.size());
        for (std::size_t k = 0; k < row.size(); ++k)
            out.push_back(rat_field(row[k], origin, rp + "[" + std::to_string(k) + "]"));
        rows.push_back(std::move(out));
    }
    return QMat::from_rows(rows);
}

const json& member(const json& j, const char* key, const std::string& origin,
                   const std::string& path) {
    if (!j.is_object()) fail(origin, path, "expected an object");
    if (!j.contains(key)) fail(origin, path, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

Lattice lattice_from_json(const json& j, const std::string& origin, const std::string& path) {
    QMat gram = matrix_field(member(j, "gram", origin, path), origin, path + ".gram");
    std::string label;
    if (j.contains("label")) {
        if (!j.at("label").is_string()) fail(origin, path + ".label", "expected a string");
        label = j.at("label").get<std::string>();
    }
    try {
        return Lattice(gram, label);
    } catch (const std::exception& e) {
        fail(origin, path + ".gram", e.what());
    }
}

// "left"/"right" is either an inline lattice object or a path relative to
// the referencing file.
Lattice side_lattice(const json& j, const std::string& origin, const std::string& path,
                     const std::filesystem::path& baseDir) {
    if (j.is_string()) {
        std::filesystem::path ref = j.get<std::string>();
        if (ref.is_relative()) ref = baseDir / ref;
        return load_lattice(ref.string());
    }
    if (j.is_object()) return lattice_from_json(j, origin, path);
    fail(origin, path, "expected a file name or an inline lattice");
}

TensorSubspace subspace_from_json(const json& j, const std::string& origin,
                                  const std::filesystem::path& baseDir) {
    Lattice left = side_lattice(member(j, "left", origin, "$"), origin, "$.left", baseDir);
    Lattice right = side_lattice(member(j, "right", origin, "$"), origin, "$.right", baseDir);
    const json& gens = member(j, "generators", origin, "$");
    if (!gens.is_array() || gens.empty())
        fail(origin, "$.generators", "expected a non-empty array of matrices");
    std::vector<QMat> mats;
    for (std::size_t i = 0; i < gens.size(); ++i)
        mats.push_back(matrix_field(gens[i], origin, "$.generators[" + std::to_string(i) + "]"));
    try {
        return TensorSubspace(left, right, std::move(mats));
    } catch (const std::exception& e) {
        fail(origin, "$.generators", e.what());
    }
}

RFiltration<Rat> filtration_from_json(const json& j, const std::string& origin) {
    const json& dimField = member(j, "dim", origin, "$");
    if (!dimField.is_number_integer() || dimField.get<long long>() <= 0)
        fail(origin, "$.dim", "expected a positive integer");
    std::size_t dim = dimField.get<std::size_t>();
    const json& steps = member(j, "steps", origin, "$");
    if (!steps.is_array() || steps.empty())
        fail(origin, "$.steps", "expected a non-empty array of steps");
    std::vector<QMat> bases;
    std::vector<Rat> weights;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        std::string sp = "$.steps[" + std::to_string(i) + "]";
        bases.push_back(matrix_field(member(steps[i], "basis", origin, sp), origin, sp + ".basis"));
        weights.push_back(rat_field(member(steps[i], "weight", origin, sp), origin, sp + ".weight"));
    }
    try {
        return RFiltration<Rat>(dim, std::move(bases), std::move(weights));
    } catch (const std::exception& e) {
        fail(origin, "$.steps", e.what());
    }
}

IQVector iq_from_json(const json& j, const std::string& origin) {
    const json& ring = member(j, "ring", origin, "$");
    if (!ring.is_string()) fail(origin, "$.ring", "expected a string");
    std::string name = ring.get<std::string>();
    IQVector out;
    if (name == "gauss")
        out.ring = IQRing::GAUSS;
    else if (name == "eisenstein")
        out.ring = IQRing::EISENSTEIN;
    else if (name == "sqrt2")
        out.ring = IQRing::SQRT2;
    else
        fail(origin, "$.ring", "unknown ring \"" + name + "\"");
    const json& coords = member(j, "coords", origin, "$");
    if (!coords.is_array() || coords.empty())
        fail(origin, "$.coords", "expected a non-empty array of [a, b] pairs");
    for (std::size_t i = 0; i < coords.size(); ++i) {
        std::string cp = "$.coords[" + std::to_string(i) + "]";
        const json& c = coords[i];
        if (!c.is_array() || c.size() != 2) fail(origin, cp, "expected an [a, b] pair");
        out.coords.push_back(
            {int_field(c[0], origin, cp + "[0]"), int_field(c[1], origin, cp + "[1]")});
    }
    return out;
}

json int_json(const Int& x) {
    if (x.fits_slong_p()) return json(static_cast<long long>(x.get_si()));
    return json(x.get_str());
}

json rat_json(const Rat& q) {
    if (q.get_den() == 1) return int_json(q.get_num());
    return json{{"n", int_json(q.get_num())}, {"d", int_json(q.get_den())}};
}

json matrix_json(const QMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rat_json(m.at(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json lattice_to_json(const Lattice& L) {
    return json{{"label", L.label}, {"gram", matrix_json(L.gram)}};
}

} // namespace

Lattice parse_lattice(const std::string& text, const std::string& origin) {
    return lattice_from_json(parse_text(text, origin), origin, "$");
}

Lattice load_lattice(const std::string& path) { return parse_lattice(read_file(path), path); }

TensorSubspace parse_subspace(const std::string& text, const std::string& origin) {
    return subspace_from_json(parse_text(text, origin), origin,
                              std::filesystem::path(origin).parent_path());
}

TensorSubspace load_subspace(const std::string& path) {
    return parse_subspace(read_file(path), path);
}

RFiltration<Rat> parse_filtration(const std::string& text, const std::string& origin) {
    return filtration_from_json(parse_text(text, origin), origin);
}

RFiltration<Rat> load_filtration(const std::string& path) {
    return parse_filtration(read_file(path), path);
}

IQVector parse_iq_vector(const std::string& text, const std::string& origin) {
    return iq_from_json(parse_text(text, origin), origin);
}

IQVector load_iq_vector(const std::string& path) {
    return parse_iq_vector(read_file(path), path);
}

std::string lattice_json(const Lattice& L) { return lattice_to_json(L).dump(); }

std::string subspace_json(const TensorSubspace& V) {
    json gens = json::array();
    for (const auto& g : V.generators) gens.push_back(matrix_json(g.matrix));
    json j{{"left", lattice_to_json(V.left)},
           {"right", lattice_to_json(V.right)},
           {"generators", std::move(gens)}};
    return j.dump();
}

std::string filtration_json(const RFiltration<Rat>& f) {
    json steps = json::array();
    for (std::size_t i = 0; i < f.step_count(); ++i)
        steps.push_back(json{{"basis", matrix_json(f.step(i))}, {"weight", rat_json(f.weight(i))}});
    json j{{"dim", f.ambient_dim()}, {"steps", std::move(steps)}};
    return j.dump();
}

std::string iq_vector_json(const IQVector& v) {
    json coords = json::array();
    for (const IQElem& c : v.coords) coords.push_back(json::array({int_json(c.a), int_json(c.b)}));
    json j{{"ring", to_string(v.ring)}, {"coords", std::move(coords)}};
    return j.dump();
}

} // namespace slopelab
