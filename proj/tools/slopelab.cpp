#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slopelab/enumeration.hpp"
#include "slopelab/filtration.hpp"
#include "slopelab/git.hpp"
#include "slopelab/harness.hpp"
#include "slopelab/hn.hpp"
#include "slopelab/io.hpp"
#include "slopelab/lattice.hpp"
#include "slopelab/tensor.hpp"

namespace {

using namespace slopelab;

std::string approx(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

std::string mat_str(const QMat& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) out += ", ";
        out += "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ", ";
            out += m.at(i, j).get_str();
        }
        out += "]";
    }
    return out + "]";
}

// exact value followed by a rounded decimal, e.g. "-log(3)/2 ≈ -0.549306"
std::string lr_str(const LogRational& v) {
    return v.to_string() + " ≈ " + approx(v.to_double());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Rat rat_from_json(const nlohmann::json& j, const std::string& origin, const std::string& path) {
    auto fail = [&]() -> Rat {
        throw std::runtime_error(origin + ": " + path + ": expected an integer or {\"n\", \"d\"}");
    };
    auto intpart = [&](const nlohmann::json& v, const std::string& p) -> Int {
        if (v.is_number_integer()) return Int(static_cast<long>(v.get<long long>()));
        if (v.is_string()) return Int(v.get<std::string>());
        throw std::runtime_error(origin + ": " + p + ": expected an integer");
    };
    if (j.is_number_integer()) return Rat(intpart(j, path));
    if (j.is_string()) return Rat(intpart(j, path));
    if (j.is_object() && j.contains("n") && j.contains("d")) {
        Int n = intpart(j.at("n"), path + ".n");
        Int d = intpart(j.at("d"), path + ".d");
        return make_rat(n, d);
    }
    return fail();
}

QMat matrix_from_text(const std::string& text, const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(origin + ": " + e.what());
    }
    if (!j.is_array() || j.empty())
        throw std::runtime_error(origin + ": $: expected a nonempty array of rows");
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& r = j[i];
        std::string rp = "$[" + std::to_string(i) + "]";
        if (!r.is_array() || r.empty())
            throw std::runtime_error(origin + ": " + rp + ": expected a nonempty row");
        std::vector<Rat> row;
        for (std::size_t k = 0; k < r.size(); ++k)
            row.push_back(rat_from_json(r[k], origin, rp + "[" + std::to_string(k) + "]"));
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error(origin + ": " + rp + ": ragged rows");
        rows.push_back(std::move(row));
    }
    return QMat::from_rows(rows);
}

// --element accepts either a file name or an inline JSON matrix
QMat element_matrix(const std::string& spec) {
    std::size_t i = spec.find_first_not_of(" \t\r\n");
    if (i != std::string::npos && spec[i] == '[') return matrix_from_text(spec, "<element>");
    return matrix_from_text(slurp(spec), spec);
}

Rat rat_arg(const std::string& text, const std::string& flag) {
    try {
        Rat q(text);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw std::runtime_error(flag + ": expected a rational like 3 or -5/2, got '" + text + "'");
    }
}

void print_check_row(const CheckReport& r) {
    std::cout << "  " << r.suite << ": " << to_string(r.status)
              << "  lhs = " << r.lhsExact << ", rhs = " << r.rhsExact;
    if (!r.witness.empty()) std::cout << "  — " << r.witness;
    std::cout << "\n";
}

void print_filtration_steps(const RFiltration<Rat>& f) {
    std::cout << "dim " << f.ambient_dim() << ", steps " << f.step_count() << "\n";
    for (std::size_t i = 0; i < f.step_count(); ++i)
        std::cout << "  step " << i + 1 << ": rank " << f.step_rank(i) << ", weight "
                  << rat_str(f.weight(i)) << ", basis " << mat_str(f.step(i)) << "\n";
}

int cmd_lat_info(const std::string& file) {
    Lattice L = load_lattice(file);
    auto cert = is_semistable(L);
    const char* verdict = cert.verdict == Verdict::YES    ? "true"
                          : cert.verdict == Verdict::NO   ? "false"
                                                          : "inconclusive";
    std::cout << "label: " << L.label << "\n";
    std::cout << "rank " << L.rank << ", ndeg = " << lr_str(ndeg(L))
              << ", semistable: " << verdict << "\n";
    std::cout << "slope = " << lr_str(slope(L)) << "\n";
    if (cert.verdict != Verdict::YES && !cert.summary.empty())
        std::cout << "note: " << cert.summary << "\n";
    if (cert.destabilizer)
        std::cout << "destabilizer: " << mat_str(cert.destabilizer->embedding) << "\n";
    return 0;
}

int cmd_lat_hn(const std::string& file) {
    Lattice L = load_lattice(file);
    HNData hd = hn_data(L);
    std::cout << "label: " << L.label << "\n";
    std::cout << "mode: " << (hd.mode == CertMode::EXACT ? "EXACT" : "LOWER_BOUND") << "\n";
    std::cout << "polygon:";
    for (const auto& [r, v] : hd.polygon) std::cout << " (" << r << ", " << v.to_string() << ")";
    std::cout << "\n";
    for (std::size_t i = 0; i < hd.slopes.size(); ++i)
        std::cout << "mu_" << i + 1 << " = " << lr_str(hd.slopes[i]) << "\n";
    std::cout << "flag:\n";
    for (const auto& sub : hd.flag)
        std::cout << "  rank " << sub.embedding.rows() << ": " << mat_str(sub.embedding) << "\n";
    return 0;
}

int cmd_lat_aut(const std::string& file) {
    Lattice L = load_lattice(file);
    // the orthogonal group is scale invariant, so clear denominators first
    Int scale = 1;
    for (std::size_t i = 0; i < L.gram.rows(); ++i)
        for (std::size_t j = 0; j < L.gram.cols(); ++j) {
            Int d = L.gram.at(i, j).get_den();
            scale = Int(lcm(scale, d));
        }
    Lattice M = scale == 1 ? L : Lattice(L.gram.scaled(Rat(scale)), L.label);
    std::cout << "label: " << L.label << "\n";
    try {
        auto group = automorphism_group(M);
        std::cout << "|Aut| = " << group.size() << "\n";
        std::size_t cd = commutant_dimension(group, L.rank);
        std::cout << "commutant dimension = " << cd << "\n";
        std::cout << "absolutely irreducible: " << (cd == 1 ? "true" : "false") << "\n";
    } catch (const aut_cap_error& e) {
        std::cout << "|Aut| >= " << e.partial.size() << " (enumeration cap exceeded)\n";
    }
    return 0;
}

int cmd_tensor_deg(const std::string& eFile, const std::string& fFile,
                   const std::string& elementSpec, const std::string& metric) {
    Lattice E = load_lattice(eFile);
    Lattice F = load_lattice(fFile);
    TensorElement s(E, F, element_matrix(elementSpec));
    std::cout << "element: " << E.rank << " x " << F.rank << " coefficient matrix, tensorial rank "
              << tensorial_rank(s) << "\n";
    if (metric == "herm") {
        LogRational d = line_degree_hermitian(s);
        std::cout << "ndeg(Q s, hermitian) = " << lr_str(d) << "\n";
    } else {
        LogInterval d = line_degree_eps(s);
        std::cout << "ndeg(Q s, epsilon) in " << d.to_string() << " ≈ "
                  << approx(d.mid_double()) << "\n";
    }
    return 0;
}

int cmd_tensor_rho(const std::string& file) {
    TensorSubspace V = load_subspace(file);
    std::cout << "V: dim " << V.dim() << " inside E (x) F, ranks " << V.left.rank << " x "
              << V.right.rank << "\n";
    RankProfile prof = rho_profile(V);
    for (std::size_t i = 0; i < prof.perIndex.size(); ++i) {
        const RankBound& b = prof.perIndex[i];
        std::cout << "rho_" << i + 1;
        if (b.certified)
            std::cout << " = " << b.lo << " (certified)\n";
        else
            std::cout << " in [" << b.lo << ", " << b.hi << "]\n";
    }
    return 0;
}

int cmd_git_check(const std::string& file, const std::string& side, std::size_t budget,
                  std::uint64_t seed) {
    TensorSubspace V = load_subspace(file);
    SemistabilityVerdict v;
    if (side == "both")
        v = both_sided_check(V, budget, seed);
    else
        v = left_right_check(V, side == "left" ? GitSide::LEFT : GitSide::RIGHT);
    std::cout << "side: " << to_string(v.side) << "\n";
    std::cout << "status: " << to_string(v.status) << "\n";
    if (v.margin != 0) std::cout << "margin = " << rat_str(v.margin) << "\n";
    if (!v.evidence.empty()) std::cout << "evidence: " << v.evidence << "\n";
    if (v.witnessSubspace)
        std::cout << "witness subspace: " << mat_str(*v.witnessSubspace) << "\n";
    if (v.witnessPair) {
        std::cout << "witness pair:\n";
        std::cout << "  left:  " << filtration_json(v.witnessPair->first) << "\n";
        std::cout << "  right: " << filtration_json(v.witnessPair->second) << "\n";
    }
    std::cout << "constraints:\n";
    for (const auto& row : constraint_checks(V)) print_check_row(row);
    return 0;
}

int cmd_filt_eval(const std::string& file, const std::string& op,
                  const std::optional<std::string>& by, const std::optional<std::size_t>& k,
                  const std::optional<std::string>& withFile) {
    RFiltration<Rat> f = load_filtration(file);
    auto need = [&](bool have, const char* flag) {
        if (!have)
            throw std::runtime_error(std::string(flag) + " is required for --op " + op);
    };
    if (op == "expectation") {
        Rat e = f.expectation();
        std::cout << "E[f] = " << rat_str(e) << " ≈ " << approx(rat_to_double(e)) << "\n";
    } else if (op == "norm") {
        Rat n = norm_sq(f);
        std::cout << "|f|^2 = " << rat_str(n) << " ≈ " << approx(rat_to_double(n)) << "\n";
    } else if (op == "jumps") {
        print_filtration_steps(f);
    } else if (op == "dual") {
        std::cout << filtration_json(dual(f)) << "\n";
    } else if (op == "translate") {
        need(by.has_value(), "--by");
        std::cout << filtration_json(translate(f, rat_arg(*by, "--by"))) << "\n";
    } else if (op == "dilate") {
        need(by.has_value(), "--by");
        std::cout << filtration_json(dilate(f, rat_arg(*by, "--by"))) << "\n";
    } else if (op == "exterior") {
        need(k.has_value(), "--k");
        std::cout << filtration_json(exterior(f, *k)) << "\n";
    } else if (op == "tensor") {
        need(withFile.has_value(), "--with");
        std::cout << filtration_json(tensor(f, load_filtration(*withFile))) << "\n";
    }
    return 0;
}

int cmd_harness_run(const TrialConfig& cfg, const std::optional<std::string>& out,
                    bool noTimestamp) {
    auto rows = run_config(cfg);
    ReportStats st = tally(rows);
    std::string csv = reports_csv(std::move(rows), !noTimestamp);
    std::ostream* tallyOut = &std::cout;
    if (out) {
        std::ofstream o(*out, std::ios::binary);
        if (!o) throw std::runtime_error(*out + ": cannot open for writing");
        o << csv;
        if (!o) throw std::runtime_error(*out + ": write failed");
    } else {
        std::cout << csv;
        tallyOut = &std::cerr; // keep the CSV stream clean
    }
    *tallyOut << "suite " << cfg.suite << ": rows " << st.total() << ", pass " << st.passed
              << ", fail " << st.failed << ", inconclusive " << st.inconclusive << "\n";
    return st.failed ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"slope theory toolkit: degrees, Harder-Narasimhan data, tensor"
                 " semistability for Euclidean lattices"};
    app.require_subcommand(1);

    std::string latFile;
    auto* lat = app.add_subcommand("lat", "inspect a lattice file");
    lat->require_subcommand(1);
    auto* latInfo = lat->add_subcommand("info", "rank, degree, slope, semistability");
    latInfo->add_option("file", latFile, "lattice JSON file")->required();
    auto* latHn = lat->add_subcommand("hn", "canonical polygon, slopes and flag");
    latHn->add_option("file", latFile, "lattice JSON file")->required();
    auto* latAut = lat->add_subcommand("aut", "isometry group order and commutant");
    latAut->add_option("file", latFile, "lattice JSON file")->required();

    std::string tdE, tdF, tdElement, tdMetric = "herm";
    std::string rhoFile;
    auto* tensorCmd = app.add_subcommand("tensor", "tensor product computations");
    tensorCmd->require_subcommand(1);
    auto* tensorDeg = tensorCmd->add_subcommand("deg", "degree of a line in E (x) F");
    tensorDeg->add_option("E", tdE, "left lattice JSON file")->required();
    tensorDeg->add_option("F", tdF, "right lattice JSON file")->required();
    tensorDeg->add_option("--element", tdElement, "coefficient matrix: file or inline JSON")
        ->required();
    tensorDeg->add_option("--metric", tdMetric, "metric on the line (default herm)")
        ->check(CLI::IsMember({"eps", "herm"}));
    auto* tensorRho = tensorCmd->add_subcommand("rho", "successive tensorial ranks");
    tensorRho->add_option("V", rhoFile, "subspace JSON file")->required();

    std::string gitFile, gitSide = "both";
    std::size_t gitBudget = 8;
    std::uint64_t gitSeed = 0;
    auto* gitCmd = app.add_subcommand("git", "semistability under SL(E) x SL(F)");
    gitCmd->require_subcommand(1);
    auto* gitCheck = gitCmd->add_subcommand("check", "check a tensor subspace");
    gitCheck->add_option("V", gitFile, "subspace JSON file")->required();
    gitCheck->add_option("--side", gitSide, "which action to test (default both)")
        ->check(CLI::IsMember({"left", "right", "both"}));
    gitCheck->add_option("--budget", gitBudget, "restarts for the two-sided search (default 8)");
    gitCheck->add_option("--seed", gitSeed, "seed for the two-sided search (default 0)");

    std::string filtFile, filtOp;
    std::string filtBy, filtWith;
    std::size_t filtK = 0;
    auto* filtCmd = app.add_subcommand("filt", "R-filtration calculus");
    filtCmd->require_subcommand(1);
    auto* filtEval = filtCmd->add_subcommand("eval", "evaluate an operation on a filtration");
    filtEval->add_option("file", filtFile, "filtration JSON file")->required();
    auto* opOpt =
        filtEval
            ->add_option("--op", filtOp,
                         "expectation | norm | jumps | dual | translate | dilate |"
                         " exterior | tensor")
            ->required()
            ->check(CLI::IsMember({"expectation", "norm", "jumps", "dual", "translate", "dilate",
                                   "exterior", "tensor"}));
    (void)opOpt;
    auto* byOpt = filtEval->add_option("--by", filtBy, "rational amount for translate/dilate");
    auto* kOpt = filtEval->add_option("--k", filtK, "exterior power");
    auto* withOpt = filtEval->add_option("--with", filtWith, "second filtration file for tensor");

    TrialConfig cfg;
    std::optional<std::string> harnessOutOpt;
    std::string harnessOut;
    bool noTimestamp = false;
    auto* harness = app.add_subcommand("harness", "randomized check suites");
    harness->require_subcommand(1);
    auto* harnessRun = harness->add_subcommand("run", "run a suite and emit a CSV report");
    harnessRun->add_option("--suite", cfg.suite, "suite name or all (default all)");
    harnessRun->add_option("--trials", cfg.trials, "trials per suite (default 100)");
    harnessRun->add_option("--seed", cfg.seed, "run seed (default 1)");
    harnessRun->add_option("--rank-min", cfg.rankMin, "minimum lattice rank (default 1)");
    harnessRun->add_option("--rank-max", cfg.rankMax, "maximum lattice rank (default 3)");
    harnessRun->add_option("--entry-bound", cfg.entryBound, "basis entry bound (default 2)");
    auto* outOpt = harnessRun->add_option("--out", harnessOut, "CSV output file (default stdout)");
    harnessRun->add_flag("--no-timestamp", noTimestamp, "omit the generated-at header line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (latInfo->parsed()) return cmd_lat_info(latFile);
        if (latHn->parsed()) return cmd_lat_hn(latFile);
        if (latAut->parsed()) return cmd_lat_aut(latFile);
        if (tensorDeg->parsed()) return cmd_tensor_deg(tdE, tdF, tdElement, tdMetric);
        if (tensorRho->parsed()) return cmd_tensor_rho(rhoFile);
        if (gitCheck->parsed()) return cmd_git_check(gitFile, gitSide, gitBudget, gitSeed);
        if (filtEval->parsed())
            return cmd_filt_eval(filtFile, filtOp,
                                 byOpt->count() ? std::optional(filtBy) : std::nullopt,
                                 kOpt->count() ? std::optional(filtK) : std::nullopt,
                                 withOpt->count() ? std::optional(filtWith) : std::nullopt);
        if (harnessRun->parsed()) {
            if (outOpt->count()) harnessOutOpt = harnessOut;
            return cmd_harness_run(cfg, harnessOutOpt, noTimestamp);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
