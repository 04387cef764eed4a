#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slopelab/filtration.hpp"
#include "slopelab/report.hpp"
#include "slopelab/tensor.hpp"

namespace slopelab {

// Semistability of a subspace V of E (x) F under the natural SL(E) x SL(F)
// action, phrased through R-filtrations.  A pair of filtrations (F, G) with
// zero expectations destabilizes V when the expectation of the tensor
// filtration restricted to V is positive; "left" fixes G trivial, "right"
// fixes F trivial, "both" allows arbitrary pairs.  One-sided semistability
// is equivalent to a rank criterion: for every nonzero proper subspace E1
// of E, rank(V cap (E1 (x) F)) / rank(V) <= rank(E1) / rank(E), with strict
// inequality for stability.

enum class GitSide { LEFT, RIGHT, BOTH };

// UNSTABLE always carries an exactly re-verified witness.  The two
// *_CERTIFIED statuses are proofs valid over any field extension;
// LIKELY_SEMISTABLE means every candidate in the search pool satisfied the
// criterion but no certificate closed the remaining gap.
enum class GitStatus { UNSTABLE, STABLE_CERTIFIED, SEMISTABLE_CERTIFIED, LIKELY_SEMISTABLE };

const char* to_string(GitSide s);
const char* to_string(GitStatus s);

struct SemistabilityVerdict {
    GitSide side = GitSide::LEFT;
    GitStatus status = GitStatus::LIKELY_SEMISTABLE;
    // One-sided UNSTABLE: basis rows of the violating subspace, in E
    // coordinates for LEFT and in F coordinates for RIGHT.
    std::optional<QMat> witnessSubspace;
    // Two-sided UNSTABLE: the violating filtration pair, presented with
    // integer weights normalized to minimum 0 and overall gcd 1.
    std::optional<std::pair<RFiltration<Rat>, RFiltration<Rat>>> witnessPair;
    // Exact violation amount: for one-sided checks the rank-ratio excess
    // rank(V cap (E1 (x) F))/rank(V) - rank(E1)/rank(E); for two-sided ones
    // the expectation gap of the stored witness pair.  Zero otherwise.
    Rat margin;
    std::string evidence;
};

// One-sided check.  Tests the rank criterion exactly on a candidate pool
// (images and kernels of the generators and of small sums, coordinate
// subspaces, plus extraPool rows in E coordinates for LEFT / F coordinates
// for RIGHT).  A violation yields UNSTABLE with the witness subspace.  When
// the pool is exhausted, certified upper bounds on the intersection ranks
// (from the tensorial-rank profile and the image dimension) may still prove
// the criterion for all subspaces at once; otherwise LIKELY_SEMISTABLE.
// Throws "one-sided check needs LEFT or RIGHT" on side == BOTH and
// "pool subspace has wrong ambient dimension" on malformed extraPool rows.
SemistabilityVerdict left_right_check(const TensorSubspace& V, GitSide side,
                                      const std::vector<QMat>& extraPool = {});

// Two-sided check: searches for a destabilizing pair via theta_minimize and
// re-verifies any violation exactly before reporting UNSTABLE.
SemistabilityVerdict both_sided_check(const TensorSubspace& V,
                                      std::size_t restarts = 8,
                                      std::uint64_t seed = 0);

// Best destabilizing pair found.  theta is the scale-invariant functional
// -E[(F (x) G)|_V] / sqrt(|F|^2 + |G|^2) over pairs with zero expectations;
// V is two-sided semistable iff its infimum is >= 0.  [lo, hi] encloses the
// value at the best pair found (the sole irrationality is the square root).
struct ThetaResult {
    Rat lo, hi;
    Rat restrictedGain; // E[(F (x) G)|_V] at the pair, both expectations zero
    Rat normSq;         // |F|^2 + |G|^2
    RFiltration<Rat> fLeft, fRight;
    bool destabilizing = false; // restrictedGain > 0
};

// Minimizes theta over flags assembled from the candidate pools of both
// sides plus seeded random subspaces.  For each flag pair the weight space
// splits into cones on which the restricted expectation is linear (one cone
// per linear extension of the product grid order); on each cone the
// normalized linear functional has a closed-form maximizer, kept when it
// lands inside its cone.  Centered indicator weights of every pool subspace
// are always evaluated as well, and every candidate value is recomputed
// exactly through the filtration calculus.  Throws "no nontrivial
// filtrations" when both sides have rank 1.
ThetaResult theta_minimize(const TensorSubspace& V, std::size_t restarts = 8,
                           std::uint64_t seed = 0);

// Exact necessary conditions for stability, reported one inequality per
// entry with sound use of the two-sided tensorial-rank bounds: PASS means
// no obstruction is certified, FAIL certifies a violation (so the
// corresponding stability property cannot hold), and INCONCLUSIVE means
// the rank enclosure is too wide to decide.
//   constraint-line-both:  2/rk V <  rho_1 * (1/rk E + 1/rk F)  (two-sided stable)
//   constraint-line-left:  1/rk V <  rho_1 / rk E               (left stable)
//   constraint-line-right: 1/rk V <  rho_1 / rk F               (right stable)
//   constraint-image-left / -right: the projection of V to that side is
//   surjective (left / right semistable).
// The one-sided line bounds test the image of a minimal-rank line and only
// bind while that image is a proper subspace; with rho_1 equal to the
// ambient rank they are vacuous and report PASS.
std::vector<CheckReport> constraint_checks(const TensorSubspace& V);

} // namespace slopelab
