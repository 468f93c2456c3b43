#include "psiforge/check_report.hpp"

#include "psiforge/errors.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace psiforge {

bool CheckReport::all_passed() const {
    return std::ranges::all_of(results, [](const AxiomResult& r) { return r.passed; });
}

const AxiomResult& CheckReport::at(const std::string& id) const {
    for (const auto& r : results) {
        if (r.id == id)
            return r;
    }
    throw InputError(fmt::format("report '{}' has no result '{}'", kind, id));
}

bool CheckReport::has(const std::string& id) const {
    return std::ranges::any_of(results, [&](const AxiomResult& r) { return r.id == id; });
}

AxiomResult& CheckReport::add(std::string id, bool passed) {
    results.push_back(AxiomResult{std::move(id), passed, {}, {}, {}});
    return results.back();
}

AxiomResult& CheckReport::add_failure(std::string id, std::vector<std::uint32_t> witness, std::vector<std::string> vars) {
    results.push_back(AxiomResult{std::move(id), false, std::move(witness), std::move(vars), {}});
    return results.back();
}

void CheckReport::append(const CheckReport& other) {
    results.insert(results.end(), other.results.begin(), other.results.end());
    exhaustive = exhaustive && other.exhaustive;
}

std::string format_tuple(const std::vector<std::uint32_t>& t) { return fmt::format("({})", fmt::join(t, ",")); }

std::string format_report(const CheckReport& r) {
    std::string out = fmt::format("{}: {}{}\n", r.kind, r.all_passed() ? "PASS" : "FAIL",
                                  r.exhaustive ? "" : " (sampled, not exhaustive)");
    for (const auto& a : r.results) {
        out += fmt::format("  {:<14} {}", a.id, a.passed ? "pass" : "FAIL");
        if (!a.passed && !a.witness.empty()) {
            if (a.witness_vars.empty())
                out += fmt::format(" witness {}", format_tuple(a.witness));
            else
                out += fmt::format(" witness ({})={}", fmt::join(a.witness_vars, ","), format_tuple(a.witness));
        }
        if (!a.note.empty())
            out += fmt::format("  [{}]", a.note);
        out += '\n';
    }
    return out;
}

} // namespace psiforge
