#include "oracles.hpp"
#include "psiforge/contact_relation.hpp"
#include "psiforge/duality_frames.hpp"
#include "psiforge/enumerate.hpp"
#include "psiforge/errors.hpp"

#include <doctest.h>

#include <random>

using namespace psiforge;

namespace {

PsiFrame full_frame(unsigned m) {
    PsiFrame f(m);
    for (unsigned x = 0; x < m; ++x)
        for (std::size_t t = 0; t < f.triples(); ++t)
            f.set(x, f.triple_at(t));
    return f;
}

PsiFrame random_frame(unsigned m, std::mt19937_64& rng, double density) {
    PsiFrame f(m);
    std::bernoulli_distribution coin(density);
    for (unsigned x = 0; x < m; ++x)
        for (std::size_t t = 0; t < f.triples(); ++t)
            if (coin(rng))
                f.set(x, f.triple_at(t));
    return f;
}

std::vector<TernaryOperator> bamo_pool() {
    auto ops = oracle::k1_operators(oracle::is_3bamo);
    ops.push_back(example_3bamo());
    for (unsigned k = 2; k <= 3; ++k)
        ops.push_back(smallest_diamond(make_algebra(k)));
    for (auto& op : psi_operators_atomwise(make_algebra(2)))
        ops.push_back(std::move(op));
    for (auto& op : sample_psi_operators(make_algebra(3), 4, 3))
        ops.push_back(std::move(op));
    return ops;
}

} // namespace

TEST_CASE("frame construction") {
    CHECK_THROWS_AS(PsiFrame(0), SizeError);
    CHECK_THROWS_AS(PsiFrame(PsiFrame::kMaxPoints + 1), SizeError);
    PsiFrame f(2);
    CHECK(f.triples() == 27);
    CHECK_THROWS_AS(f.set(0, {0, 1, 1}), InputError);
    CHECK_THROWS_AS(f.set(2, {1, 1, 1}), InputError);
    CHECK_THROWS_AS(PsiFrame(2, Bits(10)), InputError);
    for (std::size_t t = 0; t < f.triples(); ++t)
        CHECK(f.triple_index(f.triple_at(t)) == t);
}

TEST_CASE("L sets") {
    const PsiFrame f(2);
    CHECK(l_set(f, {0, 0, 0}).empty());
    CHECK(l_set(f, {3, 3, 3}).size() == f.triples());
    for (PointSet u1 = 0; u1 < 4; ++u1)
        for (PointSet v1 = 0; v1 < 4; ++v1) {
            const ClosedTriple u{u1, 0, 1}, v{v1, 2, 0};
            auto lu = l_set(f, u), lv = l_set(f, v), luv = l_set(f, {u1 | v1, 2, 1});
            std::vector<ClosedTriple> uni;
            std::ranges::set_union(lu, lv, std::back_inserter(uni));
            CHECK(uni == luv);
        }
}

TEST_CASE("empty relation") {
    const PsiFrame f(2);
    for (PointSet a = 0; a < 4; ++a)
        for (PointSet b = 0; b < 4; ++b) {
            CHECK(diamond_R(f, {a, b, 3}) == 0);
            CHECK(box_R(f, {a, b, 0}) == 3);
        }
    CHECK(check_psi_frame(f).all_passed());
    const auto s = check_psi_space(f);
    CHECK(s.passed("PIF1"));
    CHECK(s.passed("PIF2"));
    CHECK(s.passed("PIF4"));
    CHECK_FALSE(s.passed("PIF3"));
    CHECK(is_total(f).total);
}

TEST_CASE("full relation") {
    const auto f = full_frame(2);
    CHECK(check_psi_frame(f).all_passed());
    CHECK(is_monotone_frame(f));
    const auto op = complex_operator(f);
    CHECK(op == oracle::complex_operator(f));
    for (Element a = 0; a < 4; ++a)
        for (Element b = 0; b < 4; ++b)
            for (Element c = 0; c < 4; ++c)
                CHECK(op(a, b, c) == ((a && b && c) ? 3U : 0U));
}

TEST_CASE("a lone non-singleton triple fails a frame condition") {
    PsiFrame f(2);
    f.set(0, {3, 1, 1});
    const auto r = check_psi_frame(f);
    CHECK_FALSE(r.all_passed());
    CHECK_FALSE(r.passed("DF3"));
    CHECK(r.at("DF3").witness == std::vector<std::uint32_t>{0, 3, 1, 1});
    CHECK_THROWS_AS(check_psi_space(f), PreconditionError);
}

TEST_CASE("one-point frames") {
    PsiFrame empty(1), one(1);
    one.set(0, {1, 1, 1});
    for (const auto* f : {&empty, &one}) {
        CHECK(check_psi_frame(*f).all_passed());
        const auto op = complex_algebra(*f);
        CHECK(op == oracle::complex_operator(*f));
        CHECK(oracle::is_3bamo(op));
    }
    CHECK(complex_algebra(one) == smallest_diamond(make_algebra(1)));
}

TEST_CASE("diamond is the preimage on frames and complex operators match the definition") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 60; ++i) {
        const auto f = random_frame(1 + i % 2, rng, 0.3);
        CHECK(complex_operator(f) == oracle::complex_operator(f));
        if (!check_psi_frame(f).all_passed())
            continue;
        for (PointSet a = 0; a <= f.whole(); ++a)
            for (PointSet b = 0; b <= f.whole(); ++b)
                for (PointSet c = 0; c <= f.whole(); ++c) {
                    PointSet below = 0;
                    for (PointSet y1 = 1; y1 <= f.whole(); ++y1)
                        for (PointSet y2 = 1; y2 <= f.whole(); ++y2)
                            for (PointSet y3 = 1; y3 <= f.whole(); ++y3)
                                if (oracle::sub(y1, a) && oracle::sub(y2, b) && oracle::sub(y3, c))
                                    below |= preimage(f, {y1, y2, y3});
                    CHECK(diamond_R(f, {a, b, c}) == below);
                }
    }
}

TEST_CASE("dual frames match the definitional construction") {
    for (const auto& op : bamo_pool()) {
        const auto expect = oracle::dual_frame(op);
        CHECK(dual_frame(op) == expect);
        CHECK(dual_frame(op, DualMode::Reduced) == expect);
        CHECK(dual_frame(op, DualMode::Definitional) == expect);
        CHECK(check_psi_frame(expect).all_passed());
    }
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<unsigned> d(0, 3);
    for (int i = 0; i < 20; ++i) {
        std::vector<std::uint8_t> t(64);
        for (auto& v : t)
            v = static_cast<std::uint8_t>(d(rng));
        const TernaryOperator op(make_algebra(2), t);
        CHECK(dual_frame(op, DualMode::Definitional) == oracle::dual_frame(op));
    }
}

TEST_CASE("smallest diamond dual frame is intersection and not total") {
    const auto f = dual_frame(smallest_diamond(make_algebra(2)));
    for (unsigned u = 0; u < 2; ++u)
        for (std::size_t t = 0; t < f.triples(); ++t) {
            const auto y = f.triple_at(t);
            CHECK(f.related(u, y) == (((y.y1 & y.y2 & y.y3) >> u) & 1U));
        }
    const auto v = is_total(f);
    CHECK_FALSE(v.total);
    CHECK(*v.witness == std::array<std::uint32_t, 5>{1, 1, 1, 0, 1});
}

TEST_CASE("stone commutation and double dual") {
    for (const auto& op : bamo_pool()) {
        CHECK(stone_commutation_check(op).all_passed());
        CHECK(double_dual_check(op).all_passed());
        CHECK(complex_operator(dual_frame(op)) == op);
    }
    std::vector<std::uint8_t> t(8, 1);
    CHECK_THROWS_AS(stone_commutation_check(TernaryOperator(make_algebra(1), t)), PreconditionError);
    CHECK_THROWS_AS(double_dual_check(TernaryOperator(make_algebra(1), t)), PreconditionError);
}

TEST_CASE("PI axioms correspond to PIF conditions one by one") {
    for (const auto& op : bamo_pool()) {
        if (op.algebra().atoms() > 2)
            continue;
        const auto pi = oracle::psi_axioms(op);
        const auto s = check_psi_space(dual_frame(op));
        for (int i = 0; i < 4; ++i)
            CHECK(s.passed("PIF" + std::to_string(i + 1)) == pi[i]);
    }
    CHECK_FALSE(check_psi_space(dual_frame(example_3bamo())).passed("PIF1"));
}

TEST_CASE("totality matches relationality on PSI operators") {
    for (const auto& op : psi_operators_atomwise(make_algebra(2)))
        CHECK(is_total(dual_frame(op)).total == oracle::is_relational(op));
    EnumerationOptions opt;
    opt.up_to_iso = false;
    for (const auto& r : enumerate_ecas(make_algebra(2), opt).relations)
        CHECK(is_total(dual_frame(rel_to_op(r))).total);
}

TEST_CASE("complex algebra needs a frame and stays within PSI on spaces") {
    PsiFrame bad(2);
    bad.set(0, {3, 1, 1});
    CHECK_THROWS_AS(complex_algebra(bad), PreconditionError);
    for (const auto& op : psi_operators_atomwise(make_algebra(2)))
        CHECK(oracle::is_psi(complex_algebra(dual_frame(op))));
}

TEST_CASE("the stronger remainder condition and the separation search") {
    const auto sd = dual_frame(smallest_diamond(make_algebra(2)));
    CHECK(check_ecua_rem(sd).all_passed());
    const auto big = dual_frame(rel_to_op(largest_eca(make_algebra(2))));
    CHECK(check_ecua_rem(big).all_passed());
    const auto pool = psi_operators_atomwise(make_algebra(2));
    const auto s = search_pif2_separation(pool, 100, 0xEC0);
    CHECK(s.frames_examined >= 100);
    CHECK(s.frames_passing_pif2 <= s.frames_examined);
    if (s.separating) {
        CHECK(check_psi_frame(*s.separating).all_passed());
        CHECK(check_psi_space(*s.separating).passed("PIF2"));
        CHECK_FALSE(check_ecua_rem(*s.separating).all_passed());
    }
}
