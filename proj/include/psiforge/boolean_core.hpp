#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace psiforge {

/// An element of a finite powerset algebra: the set of atoms below it,
/// encoded as a bitmask (bit i set iff atom i is below the element).
using Element = std::uint32_t;

/// A subset of a finite point set, encoded as a bitmask.
using PointSet = std::uint32_t;

/// The finite Boolean algebra of all subsets of `k` named atoms.
///
/// Every finite Boolean algebra is isomorphic to one of these, so the carrier
/// is always {0, ..., 2^k - 1} with join = bitwise or, meet = bitwise and and
/// complement relative to the full mask. Ultrafilters are exactly the
/// principal filters of atoms, which makes the Stone space the discrete
/// space on the k atoms.
class Algebra {
  public:
    static constexpr unsigned kMaxAtoms = 6;

    /// Throws SizeError for k = 0 (degenerate) or k > kMaxAtoms.
    explicit Algebra(unsigned atoms, std::vector<std::string> names = {});

    [[nodiscard]] unsigned atoms() const { return atoms_; }
    [[nodiscard]] std::size_t size() const { return std::size_t{1} << atoms_; }
    [[nodiscard]] Element bottom() const { return 0; }
    [[nodiscard]] Element top() const { return static_cast<Element>(size() - 1); }
    [[nodiscard]] const std::vector<std::string>& names() const { return names_; }

    [[nodiscard]] bool contains(Element a) const { return a <= top(); }
    [[nodiscard]] bool is_atom(Element a) const { return a != 0 && (a & (a - 1)) == 0 && contains(a); }

    [[nodiscard]] Element join(Element a, Element b) const { return a | b; }
    [[nodiscard]] Element meet(Element a, Element b) const { return a & b; }
    [[nodiscard]] Element neg(Element a) const { return top() & ~a; }
    [[nodiscard]] Element implies(Element a, Element b) const { return neg(a) | b; }
    [[nodiscard]] Element sym_diff(Element a, Element b) const { return a ^ b; }
    [[nodiscard]] bool leq(Element a, Element b) const { return (a & b) == a; }

    /// Equality is structural on the atom count; names are cosmetic.
    friend bool operator==(const Algebra& x, const Algebra& y) { return x.atoms_ == y.atoms_; }

  private:
    unsigned atoms_;
    std::vector<std::string> names_;
};

/// The powerset algebra on k atoms with default names a0..a(k-1).
Algebra make_algebra(unsigned k);

enum class BoolOp { Join, Meet, Neg, Leq, Implies };

/// Evaluates a Boolean operation on explicit arguments. Join, meet, neg and
/// implies yield an Element; leq yields a truth value. Throws ArityError on
/// the wrong number of arguments and InputError on out-of-carrier arguments.
std::variant<Element, bool> bool_eval(const Algebra& alg, BoolOp op, std::span<const Element> args);

/// A principal filter [generator) = {a : generator <= a}. In a finite Boolean
/// algebra every filter has this form, so filters are ordered dually to
/// their generators.
struct Filter {
    Element generator = 0;

    [[nodiscard]] bool contains(Element a) const { return (generator & ~a) == 0; }
    [[nodiscard]] bool is_proper(const Algebra&) const { return generator != 0; }
    /// Inclusion of filters: [g) is a subset of [h) iff h <= g.
    [[nodiscard]] bool subset_of(const Filter& other) const { return (other.generator & ~generator) == 0; }

    friend bool operator==(const Filter&, const Filter&) = default;
};

/// The ultrafilter [atom) for an atom index.
struct Ultrafilter {
    unsigned atom = 0;

    [[nodiscard]] Element generator() const { return Element{1} << atom; }
    [[nodiscard]] bool contains(Element a) const { return (a >> atom) & 1U; }

    friend auto operator<=>(const Ultrafilter&, const Ultrafilter&) = default;
};

/// Elements of a filter, in increasing mask order.
std::vector<Element> filter_elements(const Algebra& alg, const Filter& f);

/// All ultrafilters of the algebra (one per atom, in atom order).
std::vector<Ultrafilter> ultrafilters(const Algebra& alg);

/// The Stone map: the ultrafilters containing `a`.
std::vector<Ultrafilter> beta(const Algebra& alg, Element a);

/// The Stone map as a point set over the atoms. In the finite case this is
/// the mask of `a` itself.
PointSet beta_set(const Algebra& alg, Element a);

/// phi: filter F to the closed set {U : F is a subset of U}.
PointSet filter_to_closed_set(const Algebra& alg, const Filter& f);

/// psi: closed set Y to the filter {a : Y is a subset of beta(a)} = [join of Y).
Filter closed_set_to_filter(const Algebra& alg, PointSet y);

/// A permutation of atom indices, acting on elements by moving mask bits.
class AtomPermutation {
  public:
    explicit AtomPermutation(std::vector<unsigned> image);

    [[nodiscard]] Element apply(Element a) const;
    [[nodiscard]] AtomPermutation inverse() const;
    [[nodiscard]] const std::vector<unsigned>& image() const { return image_; }
    [[nodiscard]] bool is_identity() const;

    friend bool operator==(const AtomPermutation&, const AtomPermutation&) = default;

  private:
    std::vector<unsigned> image_;
};

/// All k! automorphisms of the algebra, identity first, in lexicographic
/// order of the atom images.
std::vector<AtomPermutation> automorphisms(const Algebra& alg);

} // namespace psiforge
