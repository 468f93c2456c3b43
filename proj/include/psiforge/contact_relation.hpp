#pragma once

#include "psiforge/boolean_core.hpp"
#include "psiforge/check_report.hpp"
#include "psiforge/ternary_operator.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <functional>
#include <span>

namespace psiforge {

using Bits = boost::dynamic_bitset<std::uint64_t>;

/// A ternary relation (a, b) |- c on a finite powerset algebra, stored as a
/// bitset over A^3 in row-major mask order. Axioms are checked, not enforced.
class TernaryRelation {
  public:
    explicit TernaryRelation(Algebra alg);
    /// Throws InputError if `bits` does not have |A|^3 entries.
    TernaryRelation(Algebra alg, Bits bits);

    static TernaryRelation full(const Algebra& alg);
    static TernaryRelation from_predicate(const Algebra& alg,
                                          const std::function<bool(Element, Element, Element)>& p);

    [[nodiscard]] const Algebra& algebra() const { return alg_; }
    [[nodiscard]] std::size_t n() const { return alg_.size(); }
    [[nodiscard]] std::size_t index(Element a, Element b, Element c) const {
        return (static_cast<std::size_t>(a) * n() + b) * n() + c;
    }
    [[nodiscard]] bool contains(Element a, Element b, Element c) const { return bits_[index(a, b, c)]; }
    void set(Element a, Element b, Element c, bool value = true) { bits_[index(a, b, c)] = value; }

    [[nodiscard]] const Bits& bits() const { return bits_; }
    [[nodiscard]] std::size_t count() const { return bits_.count(); }
    [[nodiscard]] bool subset_of(const TernaryRelation& other) const;

    friend bool operator==(const TernaryRelation& x, const TernaryRelation& y) {
        return x.alg_ == y.alg_ && x.bits_ == y.bits_;
    }

  private:
    Algebra alg_;
    Bits bits_;
};

/// The relation transported along an atom permutation.
TernaryRelation permute(const TernaryRelation& rel, const AtomPermutation& p);

/// EC0-EC4. EC1 follows the five-variable sweep policy of check_psi.
CheckReport check_eca(const TernaryRelation& rel);

/// ExtCA0-ExtCA4.
CheckReport check_extca(const TernaryRelation& rel);

/// Consequences of EC0-EC4: weakening on the right, strengthening on the
/// left, (a,a) |- f iff a <= f, and BI-1..BI-4. Throws PreconditionError
/// unless `rel` passes check_eca.
CheckReport check_derived_eca_props(const TernaryRelation& rel);

/// ch-1..ch-4 for the characteristic function valued in {0, 1}. Throws
/// PreconditionError unless `rel` passes check_eca.
CheckReport characteristic_lemma_check(const TernaryRelation& rel);

/// dia(a, b, c) = 0 if (a, b) |- not c, else 1.
TernaryOperator rel_to_op(const TernaryRelation& rel);

/// (a, b) |- c iff dia(a, b, not c) = 0. Total on every operator; see
/// op_to_rel_report for the relationality flag.
TernaryRelation op_to_rel(const TernaryOperator& op);

/// One row "relational" recording whether op_to_rel's precondition holds
/// (witness: a triple with a value outside {0, 1}).
CheckReport op_to_rel_report(const TernaryOperator& op);

/// (a, b) |- c iff a and b and not c = 0.
TernaryRelation largest_eca(const Algebra& alg);

/// Binary contact a C b iff (a, b) does not entail 0.
class ContactRelation {
  public:
    ContactRelation(Algebra alg, Bits bits) : alg_(std::move(alg)), bits_(std::move(bits)) {}
    [[nodiscard]] bool holds(Element a, Element b) const { return bits_[a * alg_.size() + b]; }
    [[nodiscard]] const Algebra& algebra() const { return alg_; }

  private:
    Algebra alg_;
    Bits bits_;
};

/// Throws PreconditionError unless `rel` passes check_eca. Self-checks
/// symmetry and that overlapping regions are in contact.
ContactRelation contact_from_eca(const TernaryRelation& rel);

/// Order reversal between ECAs and relational operators: r subset of r'
/// iff rel_to_op(r) >= rel_to_op(r') pointwise, plus bijectivity of
/// rel_to_op onto `relational_ops`. Both lists must cover the same algebra
/// and be non-empty (InputError otherwise).
CheckReport posets_dual_iso_check(std::span<const TernaryRelation> ecas,
                                  std::span<const TernaryOperator> relational_ops);

} // namespace psiforge
