#pragma once

#include "psiforge/boolean_core.hpp"
#include "psiforge/check_report.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace psiforge {

/// A total ternary operation on a finite powerset algebra, stored as a dense
/// |A|^3 table in row-major (a, b, c) order. No axiom is enforced; failing
/// structures are representable so that checkers can report on them.
class TernaryOperator {
  public:
    /// Throws InputError if the table has the wrong size or leaves the carrier.
    TernaryOperator(Algebra alg, std::vector<std::uint8_t> table);

    static TernaryOperator from_function(const Algebra& alg,
                                         const std::function<Element(Element, Element, Element)>& f);
    static TernaryOperator constant(const Algebra& alg, Element value);

    [[nodiscard]] const Algebra& algebra() const { return alg_; }
    [[nodiscard]] std::size_t n() const { return alg_.size(); }
    [[nodiscard]] Element operator()(Element a, Element b, Element c) const {
        return table_[(static_cast<std::size_t>(a) * n() + b) * n() + c];
    }
    [[nodiscard]] const std::vector<std::uint8_t>& table() const { return table_; }

    /// Pointwise order: this(a,b,c) <= other(a,b,c) everywhere.
    [[nodiscard]] bool leq_pointwise(const TernaryOperator& other) const;

    friend bool operator==(const TernaryOperator& x, const TernaryOperator& y) {
        return x.alg_ == y.alg_ && x.table_ == y.table_;
    }

  private:
    Algebra alg_;
    std::vector<std::uint8_t> table_;
};

/// The operator transported along an atom permutation p:
/// result(p a, p b, p c) = p(op(a, b, c)).
TernaryOperator permute(const TernaryOperator& op, const AtomPermutation& p);

/// Pointwise join of two operators on the same algebra.
TernaryOperator pointwise_join(const TernaryOperator& x, const TernaryOperator& y);

/// MO1-MO4.
CheckReport check_3bamo(const TernaryOperator& op);

/// PI1-PI4. PI1 is exhaustive up to Algebra with 5 atoms and sampled above.
CheckReport check_psi(const TernaryOperator& op);

/// The four equivalent forms of PI2 evaluated separately, plus an
/// "agreement" row that fails if they disagree.
CheckReport check_pi2_equivalents(const TernaryOperator& op);

/// R1, R2 and S, each evaluated literally.
CheckReport check_strict(const TernaryOperator& op);

struct RelationalVerdict {
    bool relational = true;
    std::optional<std::array<Element, 3>> witness;
};

/// True iff every value is 0 or top; otherwise the first offending triple.
RelationalVerdict is_relational(const TernaryOperator& op);

/// (a, b, c) -> a and b and c.
TernaryOperator smallest_diamond(const Algebra& alg);

/// The fixed four-element example: a 3BAMO on two atoms that violates PI1.
/// Atom a is mask 1, b = not a is mask 2.
TernaryOperator example_3bamo();

Element mu(const TernaryOperator& op, Element z);
Element mu_iter(const TernaryOperator& op, Element z, unsigned l);

/// box(x, y, z) = not dia(not x, not y, not z).
Element box_op(const TernaryOperator& op, Element x, Element y, Element z);

/// d(x) = not mu(not x).
Element unary_disc(const TernaryOperator& op, Element x);

/// t(x, y, z) = (x and d(x + y)) or (z and not d(x + y)).
Element ternary_disc(const TernaryOperator& op, Element x, Element y, Element z);

/// D0: d(0) = 0. D1: d(x) = 1 for x != 0. T: t(a,b,c) = a if a != b else c.
CheckReport discriminator_check(const TernaryOperator& op);

/// MU1-MU5 (mu(0)=0, mu(x)<=x, mu(z)=1 iff z=1, monotone, decreasing
/// iterates up to n=4). These hold on PSI operators.
CheckReport check_mu_properties(const TernaryOperator& op);

/// On operators passing S: not mu(a) is a mu fixpoint, and every iterate
/// up to 4 fixes it.
CheckReport check_s_consequences(const TernaryOperator& op);

/// Monotonicity in each coordinate (MON1, MON2, MON3).
CheckReport check_monotone(const TernaryOperator& op);

} // namespace psiforge
