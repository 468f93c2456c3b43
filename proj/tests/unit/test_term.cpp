#include "oracles.hpp"
#include "psiforge/errors.hpp"
#include "psiforge/term.hpp"

#include <doctest.h>

#include <random>

using namespace psiforge;

namespace {

bool all_hold(const std::vector<NamedSentence>& axioms, const TernaryOperator& op) {
    for (const auto& a : axioms)
        if (!holds(a.sentence, op).holds)
            return false;
    return true;
}

std::size_t parse_column(std::string_view text) {
    try {
        (void)parse_sentence(text);
    } catch (const ParseError& e) {
        return e.column();
    }
    return 0;
}

} // namespace

TEST_CASE("sentences parse and print canonically") {
    const auto pi4 = parse_sentence("dia(a,b,f) <= dia(b,a,f)");
    CHECK(pi4.premises.empty());
    CHECK(pi4.conclusion.rel == Relation::Leq);
    CHECK(pi4.variables == std::vector<std::string>{"a", "b", "f"});
    CHECK(to_string(pi4) == "dia(a,b,f) <= dia(b,a,f)");

    const auto m = parse_sentence("mu(z) = not dia(1,1,not z) and not dia(1,not z,1)");
    CHECK(to_string(m) == "mu(z) = not dia(1,1,not z) and not dia(1,not z,1)");

    const auto q = parse_sentence("a and f = 0 & b <= 1 => dia( a , b , f ) = 0");
    CHECK(q.premises.size() == 2);
    CHECK(to_string(q) == "a and f = 0 & b <= 1 => dia(a,b,f) = 0");
}

TEST_CASE("precedence and associativity") {
    CHECK(to_string(parse_term("(a or b) and c")) == "(a or b) and c");
    CHECK(to_string(parse_term("a or (b and c)")) == "a or b and c");
    CHECK(to_string(parse_term("a -> (b -> c)")) == "a -> (b -> c)");
    CHECK(to_string(parse_term("(a -> b) -> c")) == "a -> b -> c");
    CHECK(to_string(parse_term("a + b")) == "a xor b");
    CHECK(to_string(parse_term("not not a")) == "not not a");
    CHECK(to_string(parse_term("not (a and b)")) == "not (a and b)");
    CHECK(to_string(parse_term("a xor b or c")) == "a xor b or c");
    CHECK(to_string(parse_term("a or b xor c")) == "a or b xor c");
    CHECK(parse_term("a and b or c").kind == TermKind::Or);
    CHECK(parse_term("a -> b or c").kind == TermKind::Implies);
}

TEST_CASE("d is a variable unless applied") {
    CHECK(parse_term("d").kind == TermKind::Var);
    CHECK(parse_term("d(x)").kind == TermKind::D);
    CHECK(term_variables(parse_term("dia(d,e,d(f))")) == std::vector<std::string>{"d", "e", "f"});
}

TEST_CASE("parse errors carry 1-based columns") {
    CHECK(parse_column("dia(a,b") == 8);
    CHECK(parse_column("a = ") == 5);
    CHECK(parse_column("a = b)") == 6);
    CHECK(parse_column("a") == 2);
    CHECK(parse_column("a = $") == 5);
    CHECK_THROWS_WITH_AS(parse_term("foo(a)"), doctest::Contains("unknown symbol 'foo'"), ParseError);
    CHECK_THROWS_AS(parse_term("mu"), ParseError);
    CHECK_THROWS_AS(parse_term("dia(a,b)"), ArityError);
    CHECK_THROWS_AS(parse_term("mu(a,b)"), ArityError);
    CHECK_THROWS_AS(parse_term("disc(a)"), ArityError);
}

TEST_CASE("round trip is the identity on ASTs") {
    const char* samples[] = {
        "dia(a,b,f) <= dia(a,b,not d) or dia(a,b,not e) or dia(d,e,f)",
        "a and f = 0 => dia(a,1,f) = 0",
        "disc(x,y,z) = x and d(x xor y) or z and not d(x xor y)",
        "mu(mu(z)) <= mu(z)",
        "(a -> b) -> c = not (a or b) and (c xor 1)",
        "x + x = 0",
    };
    for (const char* s : samples) {
        const auto once = parse_sentence(s);
        const auto printed = to_string(once);
        CHECK(parse_sentence(printed) == once);
        CHECK(to_string(parse_sentence(printed)) == printed);
    }
    for (const auto& name : {"3bamo", "psi", "strict"})
        for (const auto& a : builtin_axioms(name))
            CHECK(parse_sentence(to_string(a.sentence)) == a.sentence);
}

TEST_CASE("evaluation") {
    const auto op = smallest_diamond(make_algebra(2));
    for (Element e = 0; e < 4; ++e) {
        CHECK(eval_term(parse_term("x + x"), op, {{"x", e}}) == 0);
        CHECK(eval_term(parse_term("x -> x"), op, {{"x", e}}) == 3);
        CHECK(eval_term(parse_term("mu(x)"), op, {{"x", e}}) == mu(op, e));
        CHECK(eval_term(parse_term("d(x)"), op, {{"x", e}}) == unary_disc(op, e));
        for (Element f = 0; f < 4; ++f)
            CHECK(eval_term(parse_term("disc(x,y,x)"), op, {{"x", e}, {"y", f}}) == ternary_disc(op, e, f, e));
    }
    CHECK_THROWS_AS(eval_term(parse_term("x"), op, {}), InputError);
    CHECK_THROWS_AS(eval_term(parse_term("x"), op, {{"x", 4}}), InputError);
}

TEST_CASE("holds") {
    const auto pi3 = parse_sentence("a and f <= dia(a,a,f)");
    CHECK(holds(pi3, smallest_diamond(make_algebra(2))).holds);
    const auto pi1 = builtin_axioms("psi");
    const auto it = std::ranges::find(pi1, std::string("PI1"), &NamedSentence::id);
    REQUIRE(it != pi1.end());
    const auto v = holds(it->sentence, example_3bamo());
    CHECK_FALSE(v.holds);
    CHECK(*v.witness == std::vector<Element>{1, 1, 3, 1, 2});
    CHECK(holds(parse_sentence("mu(z) = not dia(1,1,not z) and not dia(1,not z,1)"), example_3bamo()).holds);
    // 13 variables over 4 elements is 2^26 assignments
    const auto big = parse_sentence("a or b or c or d or e or f or g or h or i or j or k or l or m = 1");
    CHECK_THROWS_AS(holds(big, smallest_diamond(make_algebra(2))), InfeasibleError);
}

TEST_CASE("built-in axiom sets agree with the brute-force checkers") {
    const auto bamo = builtin_axioms("3bamo");
    const auto psi = builtin_axioms("psi");
    const auto strict = builtin_axioms("strict");
    CHECK(bamo.size() == 6);
    CHECK(psi.size() == 10);
    CHECK(strict.size() == 13);
    for (const auto& op : oracle::k1_operators([](const TernaryOperator&) { return true; })) {
        const bool b = oracle::is_3bamo(op);
        CHECK(all_hold(bamo, op) == b);
        CHECK(all_hold(psi, op) == (b && oracle::is_psi(op)));
        CHECK(all_hold(strict, op) == (b && oracle::is_psi(op) && oracle::is_strict(op)));
    }
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<unsigned> d(0, 3);
    for (int i = 0; i < 30; ++i) {
        std::vector<std::uint8_t> t(64);
        for (auto& x : t)
            x = static_cast<std::uint8_t>(d(rng));
        const TernaryOperator op(make_algebra(2), t);
        CHECK(all_hold(bamo, op) == oracle::is_3bamo(op));
    }
    CHECK_THROWS_AS(builtin_axioms("nope"), InputError);
}

TEST_CASE("partial evaluation") {
    const auto pi4 = parse_sentence("dia(a,b,f) <= dia(b,a,f)");
    const Algebra A = make_algebra(1);
    std::vector<std::int16_t> t(8, -1);
    CHECK_FALSE(holds_partial(pi4, A, t).has_value());
    t.assign(8, 0);
    CHECK(holds_partial(pi4, A, t) == true);
    t.assign(8, -1);
    t[(1 * 2 + 0) * 2 + 1] = 1; // dia(1,0,1) = 1
    t[(0 * 2 + 1) * 2 + 1] = 0; // dia(0,1,1) = 0
    CHECK(holds_partial(pi4, A, t) == false);
}

TEST_CASE("axiom files") {
    const auto axioms = parse_axiom_file("# header\n\ndia(a,b,c) <= dia(b,a,c)  # sym\nx + x = 0\n");
    REQUIRE(axioms.size() == 2);
    CHECK(axioms[0].id == "sym");
    CHECK(axioms[1].id == "line 4");
    CHECK_THROWS_WITH_AS(parse_axiom_file("a = a\ndia(a,b\n"), doctest::Contains("line 2"), InputError);
}
