#pragma once

// Shared quantifier-sweep policy for the five-variable axioms (PI1, EC1,
// ExtCA1). Below the cutoff the sweep is exhaustive in lexicographic order;
// above it a seeded sample is swept in a fixed order so reports stay
// reproducible.

#include "psiforge/boolean_core.hpp"
#include "psiforge/check_report.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace psiforge::detail {

using W = std::vector<std::uint32_t>;

template <class P>
std::optional<W> first1(Element n, P&& p) {
    for (Element a = 0; a < n; ++a)
        if (p(a))
            return W{a};
    return std::nullopt;
}

template <class P>
std::optional<W> first2(Element n, P&& p) {
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (p(a, b))
                return W{a, b};
    return std::nullopt;
}

template <class P>
std::optional<W> first3(Element n, P&& p) {
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element c = 0; c < n; ++c)
                if (p(a, b, c))
                    return W{a, b, c};
    return std::nullopt;
}

template <class P>
std::optional<W> first4(Element n, P&& p) {
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element c = 0; c < n; ++c)
                for (Element d = 0; d < n; ++d)
                    if (p(a, b, c, d))
                        return W{a, b, c, d};
    return std::nullopt;
}

inline void record(CheckReport& r, std::string id, const std::optional<W>& w, std::vector<std::string> vars) {
    if (w)
        r.add_failure(std::move(id), *w, std::move(vars));
    else
        r.add(std::move(id), true);
}

inline bool leq(Element a, Element b) { return (a & ~b) == 0; }

inline constexpr unsigned kExhaustiveFiveVarAtoms = 5;
inline constexpr std::uint64_t kDefaultSeed = 0xEC0;
inline constexpr std::size_t kRandomFiveTuples = std::size_t{1} << 20;

using Tuple5 = std::array<Element, 5>;

/// Seed for sampled sweeps: PSIFORGE_SEED if set (decimal or 0x-hex),
/// otherwise kDefaultSeed.
std::uint64_t sampling_seed();

/// Visits 5-tuples until `viol` returns true. Exhaustive (lexicographic)
/// when the algebra is small enough; otherwise structured tuples (first
/// three coordinates drawn from 0, 1, atoms and coatoms, last two free)
/// followed by uniformly random ones. Sets `exhaustive` accordingly.
template <class Viol>
std::optional<Tuple5> sweep5(const Algebra& alg, bool& exhaustive, Viol&& viol) {
    const Element n = static_cast<Element>(alg.size());
    if (alg.atoms() <= kExhaustiveFiveVarAtoms) {
        exhaustive = true;
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b)
                for (Element c = 0; c < n; ++c)
                    for (Element d = 0; d < n; ++d)
                        for (Element e = 0; e < n; ++e)
                            if (viol(a, b, c, d, e))
                                return Tuple5{a, b, c, d, e};
        return std::nullopt;
    }
    exhaustive = false;
    std::vector<Element> special{alg.bottom(), alg.top()};
    for (unsigned i = 0; i < alg.atoms(); ++i) {
        special.push_back(Element{1} << i);
        special.push_back(alg.neg(Element{1} << i));
    }
    for (Element a : special)
        for (Element b : special)
            for (Element c : special)
                for (Element d = 0; d < n; ++d)
                    for (Element e = 0; e < n; ++e)
                        if (viol(a, b, c, d, e))
                            return Tuple5{a, b, c, d, e};
    std::mt19937_64 rng(sampling_seed());
    std::uniform_int_distribution<Element> pick(0, n - 1);
    for (std::size_t i = 0; i < kRandomFiveTuples; ++i) {
        Tuple5 t{pick(rng), pick(rng), pick(rng), pick(rng), pick(rng)};
        if (viol(t[0], t[1], t[2], t[3], t[4]))
            return t;
    }
    return std::nullopt;
}

/// sweep5 plus reporting; marks the report and row when sampled.
template <class Viol>
void record5(CheckReport& r, std::string id, const Algebra& alg, Viol&& viol, std::vector<std::string> vars) {
    bool exhaustive = true;
    auto w = sweep5(alg, exhaustive, std::forward<Viol>(viol));
    record(r, std::move(id), w ? std::optional<W>(W(w->begin(), w->end())) : std::nullopt, std::move(vars));
    if (!exhaustive) {
        r.exhaustive = false;
        r.results.back().note = "sampled";
    }
}

} // namespace psiforge::detail
