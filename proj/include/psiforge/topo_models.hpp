#pragma once

#include "psiforge/boolean_core.hpp"
#include "psiforge/contact_relation.hpp"

#include <random>
#include <span>
#include <vector>

namespace psiforge {

/// A topology on points {0, ..., points-1}; subsets are bitmasks.
class FiniteTopology {
  public:
    static constexpr unsigned kMaxPoints = 6;

    [[nodiscard]] unsigned points() const { return points_; }
    [[nodiscard]] PointSet whole() const { return static_cast<PointSet>((1U << points_) - 1); }
    /// Sorted by mask value.
    [[nodiscard]] const std::vector<PointSet>& opens() const { return opens_; }
    [[nodiscard]] bool is_open(PointSet s) const;

    friend bool operator==(const FiniteTopology&, const FiniteTopology&) = default;

  private:
    friend FiniteTopology make_topology(unsigned points, std::span<const PointSet> basis);
    unsigned points_ = 0;
    std::vector<PointSet> opens_;
};

/// Closes basis + {empty, whole} under union and intersection. Throws
/// InputError for a basis set outside the points, SizeError for 0 points or
/// more than kMaxPoints.
FiniteTopology make_topology(unsigned points, std::span<const PointSet> basis);

struct InteriorClosure {
    PointSet interior = 0;
    PointSet closure = 0;
};

InteriorClosure interior_closure(const FiniteTopology& top, PointSet a);

/// RC(top): the regular closed sets A = Cl(Int(A)) with union, Cl(Int(A & B))
/// and Cl(X - A), identified with a powerset algebra through its atoms
/// (bit i of an Element stands for the i-th atom in increasing mask order).
class RegularClosedAlgebra {
  public:
    [[nodiscard]] const FiniteTopology& topology() const { return top_; }
    [[nodiscard]] const Algebra& algebra() const { return alg_; }
    /// Regular closed sets in increasing mask order.
    [[nodiscard]] const std::vector<PointSet>& elements() const { return elements_; }
    [[nodiscard]] const std::vector<PointSet>& atoms() const { return atoms_; }

    [[nodiscard]] PointSet to_set(Element e) const;
    /// Throws InputError if `s` is not regular closed.
    [[nodiscard]] Element to_element(PointSet s) const;

    [[nodiscard]] PointSet join(PointSet a, PointSet b) const { return a | b; }
    [[nodiscard]] PointSet meet(PointSet a, PointSet b) const;
    [[nodiscard]] PointSet complement(PointSet a) const;

  private:
    friend RegularClosedAlgebra regular_closed_algebra(const FiniteTopology& top);
    RegularClosedAlgebra(FiniteTopology top, Algebra alg) : top_(std::move(top)), alg_(std::move(alg)) {}
    FiniteTopology top_;
    Algebra alg_;
    std::vector<PointSet> elements_;
    std::vector<PointSet> atoms_;
};

/// Builds RC(top) and self-checks the Boolean structure and the iso
/// (InternalError on failure).
RegularClosedAlgebra regular_closed_algebra(const FiniteTopology& top);

struct TopologicalEca {
    RegularClosedAlgebra rc;
    TernaryRelation rel;
};

/// (A, B) |- C iff A and B intersect inside C, transported to the
/// powerset carrier. The result is asserted to pass check_eca.
TopologicalEca eca_from_topology(const FiniteTopology& top);

/// A topology on 1..max_points points generated from up to max_basis random
/// basis sets.
FiniteTopology random_topology(std::mt19937_64& rng, unsigned max_points = 4, unsigned max_basis = 6);

} // namespace psiforge
