#include "oracles.hpp"
#include "psiforge/contact_relation.hpp"
#include "psiforge/enumerate.hpp"
#include "psiforge/errors.hpp"
#include "psiforge/topo_models.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <set>

using namespace psiforge;

namespace {

EcaEnumeration labeled(unsigned k, unsigned threads = 1) {
    EnumerationOptions opt;
    opt.up_to_iso = false;
    opt.threads = threads;
    return enumerate_ecas(make_algebra(k), opt);
}

std::string key(const TernaryRelation& r) {
    std::string s;
    for (std::size_t i = 0; i < r.bits().size(); ++i)
        s += r.bits()[i] ? '1' : '0';
    return s;
}

} // namespace

TEST_CASE("one-atom ECAs agree with brute force") {
    const auto got = labeled(1);
    CHECK(got.complete);
    const auto expect = oracle::k1_ecas();
    std::set<std::string> a, b;
    for (const auto& r : got.relations)
        a.insert(key(r));
    for (const auto& r : expect)
        b.insert(key(r));
    CHECK(a == b);
    CHECK(std::ranges::find(got.relations, largest_eca(make_algebra(1))) != got.relations.end());
}

TEST_CASE("two-atom ECAs are sound, closed under iso and contain the known models") {
    const auto got = labeled(2);
    CHECK(got.complete);
    std::set<std::string> keys;
    for (const auto& r : got.relations) {
        CHECK(oracle::is_eca(r));
        CHECK(op_to_rel(rel_to_op(r)) == r);
        keys.insert(key(r));
    }
    CHECK(keys.size() == got.relations.size());
    for (const auto& r : got.relations)
        CHECK(keys.contains(key(permute(r, AtomPermutation({1, 0})))));
    CHECK(keys.contains(key(largest_eca(make_algebra(2)))));
    const std::array<PointSet, 2> basis{0b001, 0b100};
    CHECK(keys.contains(key(eca_from_topology(make_topology(3, basis)).rel)));
}

TEST_CASE("up to iso keeps one least representative per orbit") {
    for (unsigned k = 1; k <= 2; ++k) {
        const auto all = labeled(k).relations;
        const auto iso = enumerate_ecas(make_algebra(k)).relations;
        std::set<std::string> orbits;
        for (const auto& r : all)
            orbits.insert(key(canonical_relation(r)));
        CHECK(iso.size() == orbits.size());
        for (const auto& r : iso) {
            CHECK(canonical_relation(r) == r);
            for (const auto& p : automorphisms(r.algebra()))
                CHECK(key(r) <= key(permute(r, p)));
        }
        CHECK(std::ranges::is_sorted(iso, {}, key));
    }
}

TEST_CASE("parallel enumeration matches sequential output") {
    for (unsigned k = 1; k <= 3; ++k) {
        EnumerationOptions seq, par;
        par.threads = 4;
        const auto a = enumerate_ecas(make_algebra(k), seq);
        const auto b = enumerate_ecas(make_algebra(k), par);
        CHECK(a.complete);
        CHECK(b.complete);
        CHECK(a.relations == b.relations);
    }
    CHECK(labeled(2, 1).relations == labeled(2, 4).relations);
}

TEST_CASE("three-atom enumeration is sound") {
    const auto r = enumerate_ecas(make_algebra(3));
    CHECK(r.complete);
    for (const auto& x : r.relations)
        CHECK(check_eca(x).all_passed());
    CHECK_THROWS_AS(enumerate_ecas(make_algebra(kMaxEcaAtoms + 1)), SizeError);
}

TEST_CASE("a zero budget reports an incomplete run") {
    EnumerationOptions opt;
    opt.budget = std::chrono::milliseconds(0);
    const auto r = enumerate_ecas(make_algebra(3), opt);
    CHECK_FALSE(r.complete);
    for (const auto& x : r.relations)
        CHECK(check_eca(x).all_passed());
}

TEST_CASE("exhaustive one-atom operators agree with brute force") {
    const Algebra A = make_algebra(1);
    auto canon = [](std::vector<TernaryOperator> ops) {
        std::set<std::vector<std::uint8_t>> s;
        for (const auto& op : ops)
            s.insert(canonical_operator(op).table());
        return s;
    };
    const auto psi = enumerate_operators(A, builtin_axioms("psi"), OperatorMode::Exhaustive);
    CHECK(psi.exhaustive);
    CHECK(psi.label == "exhaustive");
    CHECK(canon(psi.operators) == canon(oracle::k1_operators(oracle::is_psi)));
    CHECK(std::ranges::find(psi.operators, smallest_diamond(A)) != psi.operators.end());

    const auto bamo = enumerate_operators(A, builtin_axioms("3bamo"), OperatorMode::Exhaustive);
    CHECK(canon(bamo.operators) == canon(oracle::k1_operators(oracle::is_3bamo)));

    const auto strict = enumerate_operators(A, builtin_axioms("strict"), OperatorMode::Exhaustive);
    CHECK(canon(strict.operators) ==
          canon(oracle::k1_operators([](const TernaryOperator& op) { return oracle::is_psi(op) && oracle::is_strict(op); })));
    for (const auto& op : strict.operators)
        CHECK(oracle::is_relational(op));

    CHECK_THROWS_AS(enumerate_operators(make_algebra(2), builtin_axioms("psi"), OperatorMode::Exhaustive),
                    InfeasibleError);
}

TEST_CASE("relational mode is the image of the ECAs") {
    const Algebra A = make_algebra(2);
    const auto ops = enumerate_operators(A, builtin_axioms("psi"), OperatorMode::Relational);
    CHECK_FALSE(ops.exhaustive);
    CHECK(ops.label == "relational");
    const auto ecas = enumerate_ecas(A).relations;
    CHECK(ops.operators.size() == ecas.size());
    std::set<std::vector<std::uint8_t>> images;
    for (const auto& r : ecas)
        images.insert(canonical_operator(rel_to_op(r)).table());
    for (const auto& op : ops.operators) {
        CHECK(images.contains(op.table()));
        CHECK(oracle::is_psi(op));
    }
}

TEST_CASE("sampled mode is labelled and sound") {
    const auto r = enumerate_operators(make_algebra(2), builtin_axioms("psi"), OperatorMode::Sampled, 6, 1);
    CHECK_FALSE(r.exhaustive);
    CHECK(r.label == "sampled");
    for (const auto& op : r.operators)
        CHECK(oracle::is_psi(op));
    const auto again = enumerate_operators(make_algebra(2), builtin_axioms("psi"), OperatorMode::Sampled, 6, 1);
    CHECK(again.operators == r.operators);
}

TEST_CASE("atomwise PSI operators") {
    const auto k1 = psi_operators_atomwise(make_algebra(1));
    CHECK(k1 == oracle::k1_operators(oracle::is_psi));
    const auto k2 = psi_operators_atomwise(make_algebra(2));
    CHECK(std::ranges::is_sorted(k2, {}, &TernaryOperator::table));
    for (const auto& op : k2)
        CHECK(oracle::is_psi(op));
    // every PSI operator is a tuple of components, so component counts multiply
    CHECK(k2.size() == psi_components(make_algebra(2), 0).size() * psi_components(make_algebra(2), 1).size());
    CHECK_THROWS_AS(psi_operators_atomwise(make_algebra(3)), SizeError);
}

TEST_CASE("sampled PSI operators are deterministic") {
    const auto a = sample_psi_operators(make_algebra(3), 10, 0xEC0);
    CHECK(a == sample_psi_operators(make_algebra(3), 10, 0xEC0));
    CHECK(a.size() == 10);
    for (const auto& op : a)
        CHECK(oracle::is_psi(op));
}

TEST_CASE("counterexample search") {
    const auto comm = parse_sentence("dia(a,b,c) = dia(a,c,b)");
    const auto k1 = find_counterexample(comm, {SpaceKind::Psi, 1});
    CHECK_FALSE(k1.witness.has_value());
    CHECK(k1.exhausted);
    const auto k2 = find_counterexample(comm, {SpaceKind::Psi, 2});
    REQUIRE(k2.witness.has_value());
    CHECK_FALSE(holds(comm, k2.witness->op).holds);
    CHECK(*holds(comm, k2.witness->op).witness == k2.witness->assignment);

    const auto pi4 = parse_sentence("dia(a,b,f) <= dia(b,a,f)");
    CHECK(find_counterexample(pi4, {SpaceKind::Relational, 2}).exhausted);

    const auto s = parse_sentence("dia(a,b,c) <= mu(dia(a,b,c))");
    const auto sb = find_counterexample(s, {SpaceKind::ThreeBamo, 1});
    bool any_non_strict = false;
    for (const auto& op : oracle::k1_operators(oracle::is_3bamo))
        any_non_strict = any_non_strict || !check_strict(op).passed("S");
    CHECK(sb.witness.has_value() == any_non_strict);

    CHECK_THROWS_AS(space_members({SpaceKind::Psi, 3}), InfeasibleError);
    CHECK_THROWS_AS(space_members({SpaceKind::ThreeBamo, 2}), InfeasibleError);
}
