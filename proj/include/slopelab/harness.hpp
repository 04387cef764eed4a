#pragma once

#include "slopelab/enumeration.hpp"
#include "slopelab/filtration.hpp"
#include "slopelab/lattice.hpp"
#include "slopelab/report.hpp"
#include "slopelab/tensor.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace slopelab {

// Configuration of one randomized suite run.  Random grams are B * B^T with
// |entries of B| <= entryBound and B resampled until it is invertible, so
// every sampled lattice is integral and positive definite by construction.
struct TrialConfig {
    std::uint64_t seed = 1;
    std::size_t rankMin = 1;
    std::size_t rankMax = 3;
    long entryBound = 2;
    std::size_t trials = 100;
    std::string suite = "all";
};

// Deterministic per-trial stream.  The stream for trial k of a run seeded
// with s starts at  s XOR splitmix64(k)  and steps by the splitmix rule, so
// trials are independent of evaluation order and may run concurrently.
class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t caseId) : state_(seed ^ splitmix64(caseId)) {}

    std::uint64_t next() { return splitmix64(state_ += 0x9e3779b97f4a7c15ULL); }

    // Uniform in [lo, hi], inclusive.
    long uniform(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::uint64_t state_;
};

// Random invertible integer matrix with entries in [-bound, bound].
QMat random_basis(TrialRng& rng, std::size_t rank, long bound);

Lattice random_lattice(TrialRng& rng, std::size_t rank, long bound, const std::string& label);

// Random dim-dimensional subspace of E (x) F spanned by independent integer
// coefficient matrices with entries in [-coefBound, coefBound].
TensorSubspace random_subspace(TrialRng& rng, const Lattice& E, const Lattice& F, std::size_t dim,
                               long coefBound = 2);

// Random filtration of Q^dim with strictly decreasing small rational weights.
RFiltration<Rat> random_filtration(TrialRng& rng, std::size_t dim);

// Single-lattice checks shared between the suites and the acceptance runs.

// Sandwich 0 <= mumax - log(1/lambda_1) <= 1/2 log rank, exact comparisons.
CheckReport minkowski_check(const Lattice& L, const EnumBudget& budget = default_budget());

// Slope transference: the i-th successive slope of the dual is minus the
// (r+1-i)-th slope of the lattice; requires EXACT polygons on both sides.
CheckReport transference_check(const Lattice& L, const EnumBudget& budget = default_budget());

// For a saturated sublattice given by its rows: the orthogonal-complement
// degree identity ndeg(V-perp) = ndeg(V) - ndeg(L) and short-exact-sequence
// additivity ndeg(L) = ndeg(V) + ndeg(L/V).
std::vector<CheckReport> duality_ses_checks(const Lattice& L, const QMat& subRows);

// ndeg(A cap B) + ndeg(A + B) >= ndeg(A) + ndeg(B), all four saturated.
CheckReport submodularity_check(const Lattice& L, const QMat& rowsA, const QMat& rowsB);

// The randomized suites.  Row seeds, case ids and witnesses make every FAIL
// reproducible; rows are returned unsorted (reports_csv sorts).
std::vector<CheckReport> suite_theoremA(const TrialConfig& cfg);
std::vector<CheckReport> suite_theoremB(const TrialConfig& cfg);
std::vector<CheckReport> suite_corollary_tenserr(const TrialConfig& cfg);
std::vector<CheckReport> suite_filtrations(const TrialConfig& cfg);
std::vector<CheckReport> suite_git(const TrialConfig& cfg);

// Deterministic fixed-value suite; ignores the trial parameters.
std::vector<CheckReport> suite_oracles();

const std::vector<std::string>& suite_names();

// Dispatch on cfg.suite ("all" fans out over every suite).  Throws
// std::invalid_argument on an unknown suite name.
std::vector<CheckReport> run_config(const TrialConfig& cfg);

struct ReportStats {
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t inconclusive = 0;

    std::size_t total() const { return passed + failed + inconclusive; }
};

ReportStats tally(const std::vector<CheckReport>& rows);

// Fixed-column CSV, rows sorted by (suite, caseId).  The optional timestamp
// comment line is the only nondeterministic byte in the output; suppress it
// to get bit-identical files for identical configs.
std::string reports_csv(std::vector<CheckReport> rows, bool timestamp = false);

} // namespace slopelab
