#pragma once

#include "psiforge/boolean_core.hpp"
#include "psiforge/contact_relation.hpp"
#include "psiforge/term.hpp"
#include "psiforge/ternary_operator.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace psiforge {

struct EnumerationOptions {
    bool up_to_iso = true;
    /// Worker threads; 0 or 1 runs sequentially. Output order does not
    /// depend on this.
    unsigned threads = 1;
    /// Wall-clock budget. Unset means kDefaultEcaBudgetK3 at k = 3 and no
    /// limit below.
    std::optional<std::chrono::milliseconds> budget;
};

inline constexpr unsigned kMaxEcaAtoms = 3;
inline constexpr std::chrono::milliseconds kDefaultEcaBudgetK3{20000};

struct EcaEnumeration {
    /// Sorted by canonical key (bitset read from index 0 upwards).
    std::vector<TernaryRelation> relations;
    /// False when the budget ran out; the list is then a subset.
    bool complete = true;
    std::size_t nodes = 0;
};

/// Every relation passing EC0-EC4, by Horn propagation: EC2 instances are
/// seeded, EC3 violations are negative units, EC0/EC4/EC1 are closed to a
/// fixpoint, and the search branches on the first undecided triple (true
/// first). Up to iso each model is replaced by the least bitset in its
/// automorphism orbit. Throws SizeError above kMaxEcaAtoms.
EcaEnumeration enumerate_ecas(const Algebra& alg, const EnumerationOptions& options = {});

/// Least bitset in the orbit of rel under atom permutations.
TernaryRelation canonical_relation(const TernaryRelation& rel);
/// Least table (lexicographic over entries) in the orbit of op.
TernaryOperator canonical_operator(const TernaryOperator& op);

enum class OperatorMode {
    Exhaustive,  ///< every table; only k = 1
    Relational,  ///< rel_to_op images of enumerate_ecas, then filtered
    Sampled      ///< seeded randomized propagation
};

struct OperatorEnumeration {
    std::vector<TernaryOperator> operators;
    bool exhaustive = true;
    /// "exhaustive", "relational" or "sampled".
    std::string label;
};

inline constexpr std::size_t kDefaultOperatorSamples = 64;

/// Operators satisfying every sentence of `axioms`, canonicalized and
/// deduplicated up to iso, sorted by table. Exhaustive mode throws
/// InfeasibleError for k >= 2. Sampled mode uses `seed` (default from
/// PSIFORGE_SEED, else 0xEC0).
OperatorEnumeration enumerate_operators(const Algebra& alg, const std::vector<NamedSentence>& axioms,
                                        OperatorMode mode, std::size_t samples = kDefaultOperatorSamples,
                                        std::optional<std::uint64_t> seed = std::nullopt);

/// A PSI operator restricted to one output atom t: the set of (a, b, c)
/// with t in dia(a, b, c). Every axiom of PSI is pointwise in the output,
/// so PSI operators are exactly the tuples of components, one per atom.
/// The component is join-preserving in a and b, so it is determined by its
/// values on atom pairs (i, j) and all c.
using PsiComponent = TernaryRelation;

inline constexpr unsigned kMaxAtomwiseAtoms = 2;

/// All components at output atom t. Exhaustive; throws SizeError above
/// kMaxAtomwiseAtoms.
std::vector<PsiComponent> psi_components(const Algebra& alg, unsigned t);

/// Every PSI operator (not up to iso), built atomwise, sorted by table.
/// Throws SizeError above kMaxAtomwiseAtoms.
std::vector<TernaryOperator> psi_operators_atomwise(const Algebra& alg);

/// Up to `count` distinct PSI operators from seeded closure constructions:
/// dia_S(a,b,c) = S[a and b and c] for random reflexive S, rel_to_op of
/// the largest ECA, and pointwise joins of earlier ones. Each passes
/// check_psi. Deterministic for a fixed seed.
std::vector<TernaryOperator> sample_psi_operators(const Algebra& alg, std::size_t count, std::uint64_t seed);

enum class SpaceKind { ThreeBamo, Psi, Strict, Relational };

struct SearchSpace {
    SpaceKind kind = SpaceKind::Psi;
    unsigned atoms = 1;
};

/// The operators of a search space, and whether they are all of them.
struct SpaceMembers {
    std::vector<TernaryOperator> operators;
    bool exhaustive = true;
};

/// ThreeBamo and Strict need k = 1; Psi needs k <= 2; Relational k <= 2
/// (k = 3 best-effort). Throws InfeasibleError otherwise.
SpaceMembers space_members(const SearchSpace& space);

struct Counterexample {
    std::size_t index = 0;  ///< position in the canonical order
    TernaryOperator op;
    std::vector<Element> assignment;
};

struct CounterexampleSearch {
    std::optional<Counterexample> witness;
    std::size_t examined = 0;
    /// True when no witness was found and the swept space is complete.
    bool exhausted = false;
};

CounterexampleSearch find_counterexample(const Sentence& s, const SearchSpace& space);

} // namespace psiforge
