#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace psiforge {

/// Outcome of one axiom sweep. On failure `witness` holds the falsifying
/// tuple (masks, points or point sets, in the order named by
/// `witness_vars`).
struct AxiomResult {
    std::string id;
    bool passed = true;
    std::vector<std::uint32_t> witness;
    std::vector<std::string> witness_vars;
    std::string note;
};

/// Per-axiom verdicts for one structure. `exhaustive` is false when any
/// sweep in the report was sampled rather than complete; a sampled pass is
/// not a proof.
struct CheckReport {
    std::string kind;
    bool exhaustive = true;
    std::vector<AxiomResult> results;

    [[nodiscard]] bool all_passed() const;
    /// Throws InputError if no result has this id.
    [[nodiscard]] const AxiomResult& at(const std::string& id) const;
    [[nodiscard]] bool passed(const std::string& id) const { return at(id).passed; }
    [[nodiscard]] bool has(const std::string& id) const;

    AxiomResult& add(std::string id, bool passed);
    AxiomResult& add_failure(std::string id, std::vector<std::uint32_t> witness, std::vector<std::string> vars);
    void append(const CheckReport& other);
};

/// "(1,1,3,1,2)"
std::string format_tuple(const std::vector<std::uint32_t>& t);

/// Human-readable multi-line report, one line per axiom.
std::string format_report(const CheckReport& r);

} // namespace psiforge
