#include "oracles.hpp"
#include "psiforge/contact_relation.hpp"
#include "psiforge/enumerate.hpp"
#include "psiforge/errors.hpp"
#include "psiforge/filter_congruence.hpp"

#include <doctest.h>

using namespace psiforge;

namespace {

std::vector<TernaryOperator> pool() {
    auto ops = psi_operators_atomwise(make_algebra(1));
    for (auto& op : psi_operators_atomwise(make_algebra(2)))
        ops.push_back(std::move(op));
    for (auto& op : sample_psi_operators(make_algebra(3), 6, 0xEC0))
        ops.push_back(std::move(op));
    ops.push_back(smallest_diamond(make_algebra(3)));
    return ops;
}

} // namespace

TEST_CASE("classification agrees with the definitions") {
    for (const auto& op : pool())
        for (const auto& c : all_filters_classified(op)) {
            const Element g = c.filter.generator;
            CHECK(c.is_closed == oracle::filter_closed(op, g));
            CHECK(c.closed_by_reduction == c.is_closed);
            CHECK(c.is_modal_sweep == oracle::filter_modal(op, g));
            CHECK(c.is_modal == c.is_modal_sweep);
            if (c.is_closed)
                CHECK(c.is_modal);
        }
}

TEST_CASE("trivial filters are closed and modal") {
    for (const auto& op : pool()) {
        for (Element g : {Element{0}, op.algebra().top()}) {
            const auto c = classify_filter(op, Filter{g});
            CHECK(c.is_closed);
            CHECK(c.is_modal);
        }
    }
    CHECK(all_filters_classified(psi_operators_atomwise(make_algebra(1)).front()).size() == 2);
}

TEST_CASE("closedness sweep is capped") {
    const auto op = smallest_diamond(make_algebra(kClosedFilterMaxAtoms + 1));
    CHECK_THROWS_AS(classify_filter(op, Filter{1}), SizeError);
    CHECK_THROWS_AS(classify_filter(smallest_diamond(make_algebra(2)), Filter{4}), InputError);
}

TEST_CASE("smallest diamond: mu is the identity and every filter is modal") {
    const auto op = smallest_diamond(make_algebra(2));
    for (Element z = 0; z < 4; ++z)
        CHECK(mu(op, z) == z);
    for (const auto& c : all_filters_classified(op)) {
        CHECK(c.is_modal);
        CHECK(c.is_closed == oracle::filter_closed(op, c.filter.generator));
    }
    CHECK(classify_filter(op, Filter{1}).is_closed);
    CHECK_FALSE(is_simple(op));
    CHECK(congruences(op).size() == 4);
}

TEST_CASE("relational PSI operators have only trivial modal filters") {
    for (const auto& op : psi_operators_atomwise(make_algebra(2))) {
        if (!oracle::is_relational(op))
            continue;
        for (const auto& c : all_filters_classified(op))
            CHECK(c.is_modal == (c.filter.generator == 0 || c.filter.generator == 3));
        CHECK(is_simple(op));
        CHECK(is_subdirectly_irreducible(op));
    }
}

TEST_CASE("filter and congruence maps") {
    const Algebra A = make_algebra(2);
    CHECK(filter_from_congruence(A, identity_congruence(A)) == Filter{3});
    CHECK(filter_from_congruence(A, full_congruence(A)) == Filter{0});
    const auto theta = congruence_from_filter(A, Filter{1});
    CHECK(theta == make_partition(A, {0, 1, 0, 1}));
    CHECK(theta.block_count() == 2);
    CHECK(filter_from_congruence(A, theta) == Filter{1});
    CHECK_THROWS_AS(filter_from_congruence(A, make_partition(A, {0, 1, 1, 1})), InputError);
    CHECK_THROWS_AS(make_partition(A, {0, 1}), InputError);
    CHECK(make_partition(A, {7, 7, 3, 3}).block == std::vector<unsigned>{0, 0, 1, 1});
    for (unsigned k = 1; k <= 3; ++k) {
        const Algebra B = make_algebra(k);
        for (Element g = 0; g <= B.top(); ++g) {
            const auto t = congruence_from_filter(B, Filter{g});
            CHECK(is_boolean_compatible(B, t));
            CHECK(filter_from_congruence(B, t) == Filter{g});
            CHECK(congruence_from_filter(B, filter_from_congruence(B, t)) == t);
        }
    }
}

TEST_CASE("congruences are the diamond-compatible Boolean congruences") {
    for (const auto& op : psi_operators_atomwise(make_algebra(2))) {
        const auto cs = congruences(op);
        REQUIRE_FALSE(cs.empty());
        CHECK(cs.back() == identity_congruence(op.algebra()));
        std::size_t closed = 0;
        for (const auto& c : all_filters_classified(op))
            closed += c.is_closed;
        CHECK(cs.size() == closed);
        for (const auto& t : cs)
            CHECK(is_diamond_compatible(op, t));
        for (const auto& c : all_filters_classified(op))
            CHECK(is_diamond_compatible(op, congruence_from_filter(op.algebra(), c.filter)) == c.is_closed);
    }
}

TEST_CASE("relational iff simple and strict") {
    for (const auto& op : pool())
        if (op.algebra().atoms() <= 2)
            CHECK(relational_iff_simple_strict_check(op).passed("equivalence"));
    const auto big = relational_iff_simple_strict_check(rel_to_op(largest_eca(make_algebra(2))));
    CHECK(big.all_passed());
    CHECK_THROWS_AS(relational_iff_simple_strict_check(example_3bamo()), PreconditionError);
    CHECK_THROWS_AS(is_simple(example_3bamo()), PreconditionError);
}

TEST_CASE("variety spot checks on strict operators") {
    std::vector<TernaryOperator> strict;
    for (const auto& op : pool())
        if (op.algebra().atoms() <= 2 && oracle::is_strict(op))
            strict.push_back(op);
    REQUIRE(strict.size() >= 3);
    CHECK(variety_spot_checks(strict).all_passed());
    std::vector<TernaryOperator> bad{example_3bamo()};
    CHECK_THROWS_AS(variety_spot_checks(bad), PreconditionError);
}
