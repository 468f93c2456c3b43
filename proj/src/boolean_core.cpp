#include "psiforge/boolean_core.hpp"

#include "psiforge/errors.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

namespace psiforge {

Algebra::Algebra(unsigned atoms, std::vector<std::string> names) : atoms_(atoms), names_(std::move(names)) {
    if (atoms == 0)
        throw SizeError("degenerate algebra: at least one atom is required (0 != 1)");
    if (atoms > kMaxAtoms)
        throw SizeError(fmt::format("algebra with {} atoms exceeds the cap of {}", atoms, kMaxAtoms));
    if (names_.empty()) {
        for (unsigned i = 0; i < atoms; ++i)
            names_.push_back(fmt::format("a{}", i));
    }
    if (names_.size() != atoms)
        throw InputError(fmt::format("expected {} atom names, got {}", atoms, names_.size()));
    auto sorted = names_;
    std::ranges::sort(sorted);
    if (std::ranges::adjacent_find(sorted) != sorted.end())
        throw InputError("atom names must be distinct");
}

Algebra make_algebra(unsigned k) { return Algebra(k); }

std::variant<Element, bool> bool_eval(const Algebra& alg, BoolOp op, std::span<const Element> args) {
    const std::size_t want = op == BoolOp::Neg ? 1 : 2;
    if (args.size() != want)
        throw ArityError(fmt::format("boolean operation expects {} argument(s), got {}", want, args.size()));
    for (Element a : args) {
        if (!alg.contains(a))
            throw InputError(fmt::format("element {} is not in the carrier", a));
    }
    switch (op) {
    case BoolOp::Join:
        return alg.join(args[0], args[1]);
    case BoolOp::Meet:
        return alg.meet(args[0], args[1]);
    case BoolOp::Neg:
        return alg.neg(args[0]);
    case BoolOp::Leq:
        return alg.leq(args[0], args[1]);
    case BoolOp::Implies:
        return alg.implies(args[0], args[1]);
    }
    throw InternalError("unknown boolean operation");
}

std::vector<Element> filter_elements(const Algebra& alg, const Filter& f) {
    std::vector<Element> out;
    for (Element a = 0; a <= alg.top(); ++a) {
        if (f.contains(a))
            out.push_back(a);
    }
    return out;
}

std::vector<Ultrafilter> ultrafilters(const Algebra& alg) {
    std::vector<Ultrafilter> out;
    for (unsigned i = 0; i < alg.atoms(); ++i)
        out.push_back(Ultrafilter{i});
    return out;
}

std::vector<Ultrafilter> beta(const Algebra& alg, Element a) {
    std::vector<Ultrafilter> out;
    for (const auto& u : ultrafilters(alg)) {
        if (u.contains(a))
            out.push_back(u);
    }
    return out;
}

PointSet beta_set(const Algebra& alg, Element a) { return a & alg.top(); }

PointSet filter_to_closed_set(const Algebra& alg, const Filter& f) {
    // An atom-ultrafilter contains [g) iff it contains g.
    return beta_set(alg, f.generator);
}

Filter closed_set_to_filter(const Algebra& alg, PointSet y) { return Filter{y & alg.top()}; }

AtomPermutation::AtomPermutation(std::vector<unsigned> image) : image_(std::move(image)) {
    std::vector<unsigned> check = image_;
    std::ranges::sort(check);
    for (unsigned i = 0; i < check.size(); ++i) {
        if (check[i] != i)
            throw InputError("atom map is not a permutation");
    }
}

Element AtomPermutation::apply(Element a) const {
    Element out = 0;
    for (unsigned i = 0; i < image_.size(); ++i) {
        if ((a >> i) & 1U)
            out |= Element{1} << image_[i];
    }
    return out;
}

AtomPermutation AtomPermutation::inverse() const {
    std::vector<unsigned> inv(image_.size());
    for (unsigned i = 0; i < image_.size(); ++i)
        inv[image_[i]] = i;
    return AtomPermutation(std::move(inv));
}

bool AtomPermutation::is_identity() const {
    for (unsigned i = 0; i < image_.size(); ++i) {
        if (image_[i] != i)
            return false;
    }
    return true;
}

std::vector<AtomPermutation> automorphisms(const Algebra& alg) {
    std::vector<unsigned> perm(alg.atoms());
    std::iota(perm.begin(), perm.end(), 0U);
    std::vector<AtomPermutation> out;
    do {
        out.emplace_back(perm);
    } while (std::ranges::next_permutation(perm).found);
    return out;
}

} // namespace psiforge
