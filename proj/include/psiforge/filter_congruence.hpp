#pragma once

#include "psiforge/boolean_core.hpp"
#include "psiforge/check_report.hpp"
#include "psiforge/ternary_operator.hpp"

#include <span>
#include <vector>

namespace psiforge {

struct ClassifiedFilter {
    Filter filter;
    /// Full definition: dia(x) -> dia(y) in F whenever every x_i -> y_i is.
    bool is_closed = false;
    /// (Su) and (Mid) together.
    bool closed_by_reduction = false;
    /// mu(generator) in F.
    bool is_modal = false;
    /// mu(a) in F for every a in F.
    bool is_modal_sweep = false;
};

/// Cap for the six-variable closedness sweep.
inline constexpr unsigned kClosedFilterMaxAtoms = 4;

/// Throws SizeError above kClosedFilterMaxAtoms.
ClassifiedFilter classify_filter(const TernaryOperator& op, const Filter& f);

/// All |A| filters, ordered by generator mask.
std::vector<ClassifiedFilter> all_filters_classified(const TernaryOperator& op);

/// A partition of the carrier. block[x] is the block label of element x;
/// labels are assigned in order of first occurrence, so equal partitions
/// have equal label vectors.
struct Congruence {
    std::vector<unsigned> block;

    [[nodiscard]] bool related(Element a, Element b) const { return block[a] == block[b]; }
    [[nodiscard]] std::size_t block_count() const;

    friend bool operator==(const Congruence&, const Congruence&) = default;
};

/// Relabels an arbitrary labelling into canonical form. Throws InputError if
/// the size does not match the carrier.
Congruence make_partition(const Algebra& alg, std::vector<unsigned> labels);

Congruence identity_congruence(const Algebra& alg);
Congruence full_congruence(const Algebra& alg);

/// theta_F: a ~ b iff a and g = b and g.
Congruence congruence_from_filter(const Algebra& alg, const Filter& f);

/// F_theta = {a : a ~ 1}. Throws InputError unless the partition is
/// compatible with join, meet and complement.
Filter filter_from_congruence(const Algebra& alg, const Congruence& theta);

bool is_boolean_compatible(const Algebra& alg, const Congruence& theta);
bool is_diamond_compatible(const TernaryOperator& op, const Congruence& theta);

/// Congruences of (A, dia): theta_F for the closed filters F, in generator
/// order (so the identity congruence comes last).
std::vector<Congruence> congruences(const TernaryOperator& op);

/// Both throw PreconditionError unless op passes check_psi.
bool is_simple(const TernaryOperator& op);
bool is_subdirectly_irreducible(const TernaryOperator& op);

/// Rows: relational, simple, strict, equivalence (relational iff simple and
/// strict). Throws PreconditionError unless op passes check_psi.
CheckReport relational_iff_simple_strict_check(const TernaryOperator& op);

/// Congruence permutability and distributivity for each operator, and the
/// congruence extension property over dia-closed subalgebras when the
/// algebra has at most 2 atoms. Witnesses start with the operator index.
/// Throws PreconditionError unless every op passes check_psi and
/// check_strict.
CheckReport variety_spot_checks(std::span<const TernaryOperator> ops);

} // namespace psiforge
