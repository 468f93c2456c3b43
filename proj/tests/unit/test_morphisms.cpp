#include "oracles.hpp"
#include "psiforge/contact_relation.hpp"
#include "psiforge/enumerate.hpp"
#include "psiforge/errors.hpp"
#include "psiforge/morphisms.hpp"

#include <doctest.h>

using namespace psiforge;

namespace {

struct Direct {
    bool semi = true, hemi = true;
};

Direct classify_directly(const BooleanHom& h, const TernaryOperator& s, const TernaryOperator& t) {
    Direct d;
    for (Element a = 0; a < s.n(); ++a)
        for (Element b = 0; b < s.n(); ++b)
            for (Element c = 0; c < s.n(); ++c) {
                const Element lhs = h(s(a, b, c)), rhs = t(h(a), h(b), h(c));
                d.semi = d.semi && oracle::sub(lhs, rhs);
                d.hemi = d.hemi && oracle::sub(rhs, lhs);
            }
    return d;
}

std::vector<TernaryOperator> psi_ops(unsigned k) { return psi_operators_atomwise(make_algebra(k)); }

} // namespace

TEST_CASE("hom construction") {
    const Algebra A1 = make_algebra(1), A2 = make_algebra(2);
    CHECK_THROWS_AS(make_hom(A1, A2, {0}), InputError);
    CHECK_THROWS_AS(make_hom(A1, A2, {0, 1}), InputError);
    const auto id = make_hom(A2, A2, {0, 1});
    for (Element a = 0; a < 4; ++a)
        CHECK(id(a) == a);
    CHECK(id.is_bijective());
    const auto dup = make_hom(A1, A2, {0, 0});
    CHECK(dup(0) == 0);
    CHECK(dup(1) == 3);
    CHECK_FALSE(dup.is_bijective());
    CHECK(all_homs(A1, A2).size() == 1);
    CHECK(all_homs(A2, A2).size() == 4);
    CHECK(all_homs(A2, A1).size() == 2);
    CHECK(all_homs(A2, A1).front().atom_map() == std::vector<unsigned>{0});
}

TEST_CASE("homs preserve the Boolean operations") {
    for (unsigned ks = 1; ks <= 3; ++ks)
        for (unsigned kt = 1; kt <= 3; ++kt) {
            const Algebra S = make_algebra(ks), T = make_algebra(kt);
            for (const auto& h : all_homs(S, T))
                for (Element a = 0; a <= S.top(); ++a) {
                    CHECK(h(S.neg(a)) == T.neg(h(a)));
                    for (Element b = 0; b <= S.top(); ++b)
                        CHECK(h(a & b) == (h(a) & h(b)));
                }
        }
}

TEST_CASE("composition and inverses") {
    const Algebra A1 = make_algebra(1), A2 = make_algebra(2), A3 = make_algebra(3);
    for (const auto& f : all_homs(A1, A2))
        for (const auto& g : all_homs(A2, A3)) {
            const auto gf = compose(g, f);
            for (Element a = 0; a < 2; ++a)
                CHECK(gf(a) == g(f(a)));
            const auto dual = hom_dual(gf);
            for (unsigned t = 0; t < 3; ++t)
                CHECK(dual[t] == hom_dual(f)[hom_dual(g)[t]]);
        }
    for (const auto& h : all_homs(A2, A2)) {
        const auto inv = inverse(h);
        CHECK(inv.has_value() == h.is_bijective());
        if (inv)
            CHECK(compose(*inv, h) == make_hom(A2, A2, {0, 1}));
    }
}

TEST_CASE("PSI morphism classification agrees with the definition") {
    for (unsigned ks = 1; ks <= 2; ++ks)
        for (unsigned kt = 1; kt <= 2; ++kt)
            for (const auto& h : all_homs(make_algebra(ks), make_algebra(kt)))
                for (const auto& s : psi_ops(ks))
                    for (const auto& t : psi_ops(kt)) {
                        const auto c = classify_psi_morphism(h, s, t);
                        const auto d = classify_directly(h, s, t);
                        CHECK(c.semi == d.semi);
                        CHECK(c.hemi == d.hemi);
                        CHECK(c.full == (d.semi && d.hemi));
                        CHECK(c.semi_witness.has_value() == !c.semi);
                    }
    const auto h = make_hom(make_algebra(1), make_algebra(2), {0, 0});
    CHECK_THROWS_AS(classify_psi_morphism(h, psi_ops(2).front(), psi_ops(2).front()), InputError);
}

TEST_CASE("pointwise order gives a semi but not hemi identity") {
    const auto ops = psi_ops(2);
    const Algebra A = make_algebra(2);
    const auto id = make_hom(A, A, {0, 1});
    bool found = false;
    for (const auto& lo : ops)
        for (const auto& hi : ops) {
            if (lo == hi || !lo.leq_pointwise(hi))
                continue;
            found = true;
            const auto up = classify_psi_morphism(id, lo, hi);
            CHECK(up.semi);
            CHECK_FALSE(up.hemi);
            const auto down = classify_psi_morphism(id, hi, lo);
            CHECK_FALSE(down.semi);
            CHECK(down.hemi);
            const auto f = classify_frame_map(hom_dual(id), dual_frame(hi), dual_frame(lo));
            CHECK(f.semi());
            CHECK_FALSE(f.hemi());
            CHECK(morphism_duality_check(id, lo, hi).all_passed());
        }
    CHECK(found);
}

TEST_CASE("smallest diamonds along the unique hom from one atom") {
    const auto h = make_hom(make_algebra(1), make_algebra(2), {0, 0});
    const auto c = classify_psi_morphism(h, smallest_diamond(make_algebra(1)), smallest_diamond(make_algebra(2)));
    CHECK(c.full);
}

TEST_CASE("frame maps") {
    const auto f = dual_frame(psi_ops(2).back());
    const auto id = classify_frame_map({0, 1}, f, f);
    CHECK(id.psi());
    PsiFrame full(2);
    for (unsigned x = 0; x < 2; ++x)
        for (std::size_t t = 0; t < full.triples(); ++t)
            full.set(x, full.triple_at(t));
    for (const PointMap& m : {PointMap{0, 0}, PointMap{1, 0}, PointMap{1, 1}})
        CHECK(classify_frame_map(m, f, full).sp2);
    CHECK_THROWS_AS(classify_frame_map({0, 2}, f, f), InputError);
    CHECK_THROWS_AS(classify_frame_map({0}, f, f), InputError);
    const auto dual = frame_map_dual({1, 1}, 2, 2);
    CHECK(dual(1) == 0);
    CHECK(dual(2) == 3);
}

TEST_CASE("duality biconditionals on all small homs") {
    for (unsigned ks = 1; ks <= 2; ++ks)
        for (unsigned kt = 1; kt <= 2; ++kt)
            for (const auto& h : all_homs(make_algebra(ks), make_algebra(kt)))
                for (const auto& s : psi_ops(ks))
                    for (const auto& t : psi_ops(kt))
                        CHECK(morphism_duality_check(h, s, t).all_passed());
    const auto id = make_hom(make_algebra(2), make_algebra(2), {0, 1});
    CHECK_THROWS_AS(morphism_duality_check(id, example_3bamo(), example_3bamo()), PreconditionError);
}

TEST_CASE("ECA morphisms") {
    EnumerationOptions opt;
    opt.up_to_iso = false;
    std::vector<std::vector<TernaryRelation>> ecas;
    for (unsigned k = 1; k <= 2; ++k)
        ecas.push_back(enumerate_ecas(make_algebra(k), opt).relations);
    for (unsigned ks = 1; ks <= 2; ++ks)
        for (unsigned kt = 1; kt <= 2; ++kt)
            for (const auto& h : all_homs(make_algebra(ks), make_algebra(kt)))
                for (const auto& s : ecas[ks - 1])
                    for (const auto& t : ecas[kt - 1]) {
                        const auto c = classify_eca_morphism(h, s, t);
                        CHECK(c.equivalences.all_passed());
                        bool refl = true, pres = true;
                        for (Element a = 0; a < s.n(); ++a)
                            for (Element b = 0; b < s.n(); ++b)
                                for (Element x = 0; x < s.n(); ++x) {
                                    const bool src = s.contains(a, b, x), dst = t.contains(h(a), h(b), h(x));
                                    refl = refl && (!dst || src);
                                    pres = pres && (!src || dst);
                                }
                        CHECK(c.reflecting == refl);
                        CHECK(c.preserving == pres);
                        CHECK(c.similarity == (refl && pres));
                        if (t == largest_eca(t.algebra()))
                            CHECK(c.preserving);
                    }
    const auto id = make_hom(make_algebra(2), make_algebra(2), {0, 1});
    CHECK(classify_eca_morphism(id, ecas[1].front(), ecas[1].front()).similarity);
    CHECK_THROWS_AS(classify_eca_morphism(id, TernaryRelation(make_algebra(2)), ecas[1].front()),
                    PreconditionError);
}
