#include "psiforge/topo_models.hpp"

#include "psiforge/errors.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include <fmt/format.h>

namespace psiforge {

bool FiniteTopology::is_open(PointSet s) const { return std::ranges::binary_search(opens_, s); }

FiniteTopology make_topology(unsigned points, std::span<const PointSet> basis) {
    if (points == 0 || points > FiniteTopology::kMaxPoints)
        throw SizeError(fmt::format("topology on {} points is outside 1..{}", points, FiniteTopology::kMaxPoints));
    const PointSet whole = static_cast<PointSet>((1U << points) - 1);
    std::set<PointSet> opens{0, whole};
    for (PointSet b : basis) {
        if ((b & ~whole) != 0)
            throw InputError(fmt::format("basis set {} mentions a point outside 0..{}", b, points - 1));
        opens.insert(b);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<PointSet> cur(opens.begin(), opens.end());
        for (PointSet x : cur) {
            for (PointSet y : cur) {
                grew |= opens.insert(x | y).second;
                grew |= opens.insert(x & y).second;
            }
        }
    }
    FiniteTopology t;
    t.points_ = points;
    t.opens_.assign(opens.begin(), opens.end());
    return t;
}

InteriorClosure interior_closure(const FiniteTopology& top, PointSet a) {
    const PointSet whole = top.whole();
    auto interior = [&](PointSet s) {
        PointSet in = 0;
        for (PointSet o : top.opens())
            if ((o & ~s) == 0)
                in |= o;
        return in;
    };
    return {interior(a), whole & ~interior(whole & ~a)};
}

PointSet RegularClosedAlgebra::to_set(Element e) const {
    PointSet s = 0;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        if ((e >> i) & 1U)
            s |= atoms_[i];
    return s;
}

Element RegularClosedAlgebra::to_element(PointSet s) const {
    if (!std::ranges::binary_search(elements_, s))
        throw InputError(fmt::format("set {} is not regular closed", s));
    Element e = 0;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        if ((atoms_[i] & ~s) == 0)
            e |= Element{1} << i;
    return e;
}

PointSet RegularClosedAlgebra::meet(PointSet a, PointSet b) const {
    return interior_closure(top_, interior_closure(top_, a & b).interior).closure;
}

PointSet RegularClosedAlgebra::complement(PointSet a) const {
    return interior_closure(top_, top_.whole() & ~a).closure;
}

RegularClosedAlgebra regular_closed_algebra(const FiniteTopology& top) {
    std::vector<PointSet> elements;
    for (PointSet s = 0; s <= top.whole(); ++s) {
        if (interior_closure(top, interior_closure(top, s).interior).closure == s)
            elements.push_back(s);
    }
    std::vector<PointSet> atoms;
    for (PointSet s : elements) {
        if (s == 0)
            continue;
        const bool minimal = std::ranges::none_of(elements, [&](PointSet t) { return t != 0 && t != s && (t & ~s) == 0; });
        if (minimal)
            atoms.push_back(s);
    }
    if (atoms.empty() || atoms.size() > Algebra::kMaxAtoms)
        throw SizeError(fmt::format("RC algebra with {} atoms is outside 1..{}", atoms.size(), Algebra::kMaxAtoms));
    RegularClosedAlgebra rc(top, make_algebra(static_cast<unsigned>(atoms.size())));
    rc.elements_ = std::move(elements);
    rc.atoms_ = std::move(atoms);

    const Algebra& alg = rc.alg_;
    if (rc.elements_.size() != alg.size())
        throw InternalError(fmt::format("RC has {} elements but {} atoms", rc.elements_.size(), rc.atoms_.size()));
    for (Element x = 0; x <= alg.top(); ++x) {
        const PointSet sx = rc.to_set(x);
        if (!std::ranges::binary_search(rc.elements_, sx) || rc.to_element(sx) != x)
            throw InternalError(fmt::format("RC iso fails at element {}", x));
        if (rc.to_set(alg.neg(x)) != rc.complement(sx))
            throw InternalError(fmt::format("RC complement disagrees at {}", x));
        for (Element y = 0; y <= alg.top(); ++y) {
            const PointSet sy = rc.to_set(y);
            if (rc.to_set(x | y) != rc.join(sx, sy) || rc.to_set(x & y) != rc.meet(sx, sy))
                throw InternalError(fmt::format("RC lattice operations disagree at ({},{})", x, y));
        }
    }
    return rc;
}

TopologicalEca eca_from_topology(const FiniteTopology& top) {
    auto rc = regular_closed_algebra(top);
    const auto rel = TernaryRelation::from_predicate(rc.algebra(), [&](Element a, Element b, Element c) {
        return ((rc.to_set(a) & rc.to_set(b)) & ~rc.to_set(c)) == 0;
    });
    const auto rep = check_eca(rel);
    if (!rep.all_passed())
        throw InternalError("topological relation is not an ECA\n" + format_report(rep));
    return {std::move(rc), rel};
}

FiniteTopology random_topology(std::mt19937_64& rng, unsigned max_points, unsigned max_basis) {
    max_points = std::clamp(max_points, 1U, FiniteTopology::kMaxPoints);
    const unsigned points = std::uniform_int_distribution<unsigned>(1, max_points)(rng);
    const unsigned count = std::uniform_int_distribution<unsigned>(0, max_basis)(rng);
    std::uniform_int_distribution<PointSet> pick(0, (1U << points) - 1);
    std::vector<PointSet> basis;
    for (unsigned i = 0; i < count; ++i)
        basis.push_back(pick(rng));
    return make_topology(points, basis);
}

} // namespace psiforge
