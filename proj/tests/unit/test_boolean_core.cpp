#include "psiforge/boolean_core.hpp"
#include "psiforge/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <bit>
#include <set>

using namespace psiforge;

TEST_CASE("algebra size bounds") {
    CHECK_THROWS_AS(make_algebra(0), SizeError);
    CHECK_THROWS_AS(make_algebra(Algebra::kMaxAtoms + 1), SizeError);
    for (unsigned k = 1; k <= Algebra::kMaxAtoms; ++k) {
        const Algebra a = make_algebra(k);
        CHECK(a.size() == (std::size_t{1} << k));
        CHECK(a.top() == a.size() - 1);
        CHECK(a.names().size() == k);
    }
}

TEST_CASE("atom names must match and be distinct") {
    CHECK_THROWS_AS(Algebra(2, {"p"}), InputError);
    CHECK_THROWS_AS(Algebra(2, {"p", "p"}), InputError);
    CHECK(Algebra(2, {"p", "q"}) == make_algebra(2));
}

TEST_CASE("boolean laws hold on every triple of the 3-atom algebra") {
    const Algebra A = make_algebra(3);
    for (Element a = 0; a <= A.top(); ++a) {
        CHECK(A.join(a, A.neg(a)) == A.top());
        CHECK(A.meet(a, A.neg(a)) == 0);
        CHECK(A.neg(A.neg(a)) == a);
        for (Element b = 0; b <= A.top(); ++b) {
            CHECK(A.neg(A.join(a, b)) == A.meet(A.neg(a), A.neg(b)));
            CHECK(A.leq(a, b) == (A.implies(a, b) == A.top()));
            CHECK(A.sym_diff(a, b) == A.join(A.meet(a, A.neg(b)), A.meet(A.neg(a), b)));
        }
    }
}

TEST_CASE("bool_eval dispatch, arity and carrier errors") {
    const Algebra A = make_algebra(2);
    const std::array<Element, 2> ab{1, 2};
    CHECK(std::get<Element>(bool_eval(A, BoolOp::Join, ab)) == 3);
    CHECK(std::get<Element>(bool_eval(A, BoolOp::Meet, ab)) == 0);
    CHECK(std::get<bool>(bool_eval(A, BoolOp::Leq, ab)) == false);
    CHECK(std::get<Element>(bool_eval(A, BoolOp::Implies, ab)) == 2);
    const std::array<Element, 1> one{1};
    CHECK(std::get<Element>(bool_eval(A, BoolOp::Neg, one)) == 2);
    CHECK_THROWS_AS(bool_eval(A, BoolOp::Neg, ab), ArityError);
    CHECK_THROWS_AS(bool_eval(A, BoolOp::Join, one), ArityError);
    const std::array<Element, 2> bad{1, 4};
    CHECK_THROWS_AS(bool_eval(A, BoolOp::Join, bad), InputError);
}

TEST_CASE("filters are principal and ordered dually to generators") {
    const Algebra A = make_algebra(3);
    for (Element g = 0; g <= A.top(); ++g) {
        const Filter f{g};
        const auto els = filter_elements(A, f);
        CHECK(els.size() == (std::size_t{1} << (3 - std::popcount(g))));
        CHECK(std::ranges::is_sorted(els));
        for (Element a : els)
            CHECK(A.leq(g, a));
        CHECK(f.is_proper(A) == (g != 0));
        for (Element h = 0; h <= A.top(); ++h)
            CHECK(f.subset_of(Filter{h}) == A.leq(h, g));
    }
}

TEST_CASE("ultrafilters are the atoms and beta is the identity mask") {
    const Algebra A = make_algebra(3);
    const auto us = ultrafilters(A);
    REQUIRE(us.size() == 3);
    for (unsigned i = 0; i < 3; ++i)
        CHECK(us[i].generator() == (Element{1} << i));
    for (Element a = 0; a <= A.top(); ++a) {
        CHECK(beta_set(A, a) == a);
        std::set<unsigned> direct;
        for (const auto& u : us)
            if (u.contains(a))
                direct.insert(u.atom);
        std::set<unsigned> via;
        for (const auto& u : beta(A, a))
            via.insert(u.atom);
        CHECK(direct == via);
    }
}

TEST_CASE("filters and closed sets correspond") {
    const Algebra A = make_algebra(3);
    for (Element g = 0; g <= A.top(); ++g) {
        const Filter f{g};
        CHECK(closed_set_to_filter(A, filter_to_closed_set(A, f)) == f);
        CHECK(filter_to_closed_set(A, closed_set_to_filter(A, g)) == g);
    }
}

TEST_CASE("automorphisms") {
    const Algebra A = make_algebra(3);
    const auto auts = automorphisms(A);
    REQUIRE(auts.size() == 6);
    CHECK(auts.front().is_identity());
    CHECK(std::ranges::is_sorted(auts, {}, [](const AtomPermutation& p) { return p.image(); }));
    for (const auto& p : auts) {
        const auto q = p.inverse();
        for (Element a = 0; a <= A.top(); ++a) {
            CHECK(q.apply(p.apply(a)) == a);
            CHECK(std::popcount(p.apply(a)) == std::popcount(a));
        }
        for (Element a = 0; a <= A.top(); ++a)
            for (Element b = 0; b <= A.top(); ++b)
                CHECK(p.apply(a | b) == (p.apply(a) | p.apply(b)));
    }
    CHECK_THROWS_AS(AtomPermutation({0, 0}), InputError);
}
