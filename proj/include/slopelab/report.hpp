#pragma once

#include <cstdint>
#include <string>

namespace slopelab {

enum class CheckStatus { PASS, FAIL, INCONCLUSIVE };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::PASS: return "PASS";
        case CheckStatus::FAIL: return "FAIL";
        default: return "INCONCLUSIVE";
    }
}

// One row of a harness run.  The exact fields carry the certified values
// verbatim; the float fields are display-only shadows and never decide a
// verdict.  FAIL rows must carry enough of the trial in `witness` to rebuild
// it from scratch (seed plus the gram matrices / generators involved).
struct CheckReport {
    std::string suite;
    std::uint64_t caseId = 0;
    std::uint64_t seed = 0;
    std::string lhsExact;
    std::string rhsExact;
    double lhsFloat = 0.0;
    double rhsFloat = 0.0;
    double slackFloat = 0.0; // rhs - lhs, positive when the check holds with room
    CheckStatus status = CheckStatus::PASS;
    std::string witness;
};

} // namespace slopelab
