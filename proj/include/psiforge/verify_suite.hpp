#pragma once

#include <string>
#include <vector>

namespace psiforge {

struct SuiteRow {
    std::string id;
    bool passed = true;
    std::string detail;
};

struct SuiteResult {
    unsigned k = 0;
    std::vector<SuiteRow> rows;

    [[nodiscard]] bool all_passed() const;
};

inline constexpr unsigned kMaxSuiteAtoms = 2;

/// Runs every lemma-level check on the structures enumerated over algebras
/// with 1..k atoms. Throws SizeError for k = 0 or k > kMaxSuiteAtoms.
SuiteResult verify_suite(unsigned k);

/// One line per row, then a totals line.
std::string format_scoreboard(const SuiteResult& r);

} // namespace psiforge
