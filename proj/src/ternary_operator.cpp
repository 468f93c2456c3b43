#include "psiforge/ternary_operator.hpp"

#include "psiforge/errors.hpp"
#include "sweep.hpp"

#include <fmt/format.h>

namespace psiforge {

using detail::first1;
using detail::first2;
using detail::first3;
using detail::first4;
using detail::record;
using detail::W;
using detail::leq;

TernaryOperator::TernaryOperator(Algebra alg, std::vector<std::uint8_t> table)
    : alg_(std::move(alg)), table_(std::move(table)) {
    const std::size_t want = alg_.size() * alg_.size() * alg_.size();
    if (table_.size() != want)
        throw InputError(fmt::format("operator table has {} entries, expected {}", table_.size(), want));
    for (std::size_t i = 0; i < table_.size(); ++i) {
        if (!alg_.contains(table_[i]))
            throw InputError(fmt::format("operator table entry {} = {} is outside the carrier", i, table_[i]));
    }
}

TernaryOperator TernaryOperator::from_function(const Algebra& alg,
                                               const std::function<Element(Element, Element, Element)>& f) {
    const Element n = static_cast<Element>(alg.size());
    std::vector<std::uint8_t> t;
    t.reserve(std::size_t{n} * n * n);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element c = 0; c < n; ++c)
                t.push_back(static_cast<std::uint8_t>(f(a, b, c)));
    return TernaryOperator(alg, std::move(t));
}

TernaryOperator TernaryOperator::constant(const Algebra& alg, Element value) {
    return from_function(alg, [value](Element, Element, Element) { return value; });
}

bool TernaryOperator::leq_pointwise(const TernaryOperator& other) const {
    if (!(alg_ == other.alg_))
        throw InputError("pointwise comparison of operators on different algebras");
    for (std::size_t i = 0; i < table_.size(); ++i) {
        if ((table_[i] & ~other.table_[i]) != 0)
            return false;
    }
    return true;
}

TernaryOperator permute(const TernaryOperator& op, const AtomPermutation& p) {
    const auto inv = p.inverse();
    return TernaryOperator::from_function(op.algebra(), [&](Element a, Element b, Element c) {
        return p.apply(op(inv.apply(a), inv.apply(b), inv.apply(c)));
    });
}

TernaryOperator pointwise_join(const TernaryOperator& x, const TernaryOperator& y) {
    if (!(x.algebra() == y.algebra()))
        throw InputError("join of operators on different algebras");
    return TernaryOperator::from_function(x.algebra(),
                                          [&](Element a, Element b, Element c) { return x(a, b, c) | y(a, b, c); });
}

CheckReport check_3bamo(const TernaryOperator& op) {
    CheckReport r{"3bamo", true, {}};
    const Element n = static_cast<Element>(op.n());
    record(r, "MO1", first3(n, [&](Element a, Element b, Element c) {
               return (a == 0 || b == 0 || c == 0) && op(a, b, c) != 0;
           }),
           {"a", "b", "c"});
    record(r, "MO2", first4(n, [&](Element a, Element b, Element c, Element x) {
               return op(a | x, b, c) != (op(a, b, c) | op(x, b, c));
           }),
           {"a", "b", "c", "x"});
    record(r, "MO3", first4(n, [&](Element a, Element b, Element c, Element x) {
               return op(a, b | x, c) != (op(a, b, c) | op(a, x, c));
           }),
           {"a", "b", "c", "x"});
    record(r, "MO4", first4(n, [&](Element a, Element b, Element c, Element x) {
               return !leq(op(a, b, c) | op(a, b, x), op(a, b, c | x));
           }),
           {"a", "b", "c", "x"});
    return r;
}

CheckReport check_psi(const TernaryOperator& op) {
    CheckReport r{"psi", true, {}};
    const Algebra& alg = op.algebra();
    const Element n = static_cast<Element>(op.n());
    detail::record5(
        r, "PI1", alg,
        [&](Element a, Element b, Element f, Element d, Element e) {
            const Element rhs = op(a, b, alg.neg(d)) | op(a, b, alg.neg(e)) | op(d, e, f);
            return !leq(op(a, b, f), rhs);
        },
        {"a", "b", "f", "d", "e"});
    record(r, "PI2", first2(n, [&](Element a, Element b) { return op(a, b, alg.neg(a)) != 0; }), {"a", "b"});
    record(r, "PI3", first2(n, [&](Element a, Element f) { return !leq(a & f, op(a, a, f)); }), {"a", "f"});
    record(r, "PI4", first3(n, [&](Element a, Element b, Element f) { return !leq(op(a, b, f), op(b, a, f)); }),
           {"a", "b", "f"});
    return r;
}

CheckReport check_pi2_equivalents(const TernaryOperator& op) {
    CheckReport r{"pi2-forms", true, {}};
    const Algebra& alg = op.algebra();
    const Element n = static_cast<Element>(op.n());
    const Element top = alg.top();
    record(r, "PI2", first2(n, [&](Element a, Element b) { return op(a, b, alg.neg(a)) != 0; }), {"a", "b"});
    record(r, "PI2-top", first1(n, [&](Element a) { return op(a, top, alg.neg(a)) != 0; }), {"a"});
    record(r, "PI2-quasi", first3(n, [&](Element a, Element b, Element f) {
               return (a & f) == 0 && op(a, b, f) != 0;
           }),
           {"a", "b", "f"});
    record(r, "PI2-quasi-top", first2(n, [&](Element a, Element f) { return (a & f) == 0 && op(a, top, f) != 0; }),
           {"a", "f"});
    const bool v = r.results[0].passed;
    bool agree = true;
    for (const auto& x : r.results)
        agree = agree && x.passed == v;
    auto& row = r.add("agreement", agree);
    row.note = fmt::format("common verdict: {}", agree ? (v ? "holds" : "fails") : "none");
    return r;
}

CheckReport check_strict(const TernaryOperator& op) {
    CheckReport r{"strict", true, {}};
    const Algebra& alg = op.algebra();
    const Element n = static_cast<Element>(op.n());
    const Element top = alg.top();
    record(r, "R1", first4(n, [&](Element x, Element y, Element a, Element b) {
               return !leq(op(x, y, a) & alg.neg(op(x, y, b)), op(top, top, a & alg.neg(b)));
           }),
           {"x", "y", "a", "b"});
    record(r, "R2", first4(n, [&](Element x, Element y, Element a, Element b) {
               return !leq(op(x, a, y) & alg.neg(op(x, b, y)), op(top, a & alg.neg(b), top));
           }),
           {"x", "y", "a", "b"});
    record(r, "S", first3(n, [&](Element a, Element b, Element c) {
               const Element v = op(a, b, c);
               return !leq(v, mu(op, v));
           }),
           {"a", "b", "c"});
    return r;
}

RelationalVerdict is_relational(const TernaryOperator& op) {
    const Element n = static_cast<Element>(op.n());
    const Element top = op.algebra().top();
    auto w = first3(n, [&](Element a, Element b, Element c) {
        const Element v = op(a, b, c);
        return v != 0 && v != top;
    });
    if (!w)
        return {};
    return {false, std::array<Element, 3>{(*w)[0], (*w)[1], (*w)[2]}};
}

TernaryOperator smallest_diamond(const Algebra& alg) {
    return TernaryOperator::from_function(alg, [](Element a, Element b, Element c) { return a & b & c; });
}

TernaryOperator example_3bamo() {
    const Algebra alg = make_algebra(2);
    constexpr Element a = 1, b = 2, t = 3;
    struct Entry {
        Element x, y, z, v;
    };
    static constexpr Entry nonzero[] = {
        {t, t, t, t}, {t, t, a, a}, {t, t, b, t}, {t, a, t, t}, {t, a, a, a},
        {t, b, t, t}, {t, b, b, t}, {a, t, t, t}, {a, t, a, a}, {a, a, t, t},
        {a, a, a, a}, {b, t, t, t}, {b, t, b, t}, {b, b, t, t}, {b, b, b, t},
    };
    std::vector<std::uint8_t> table(64, 0);
    for (const auto& e : nonzero)
        table[(e.x * 4 + e.y) * 4 + e.z] = static_cast<std::uint8_t>(e.v);
    return TernaryOperator(alg, std::move(table));
}

Element mu(const TernaryOperator& op, Element z) {
    const Algebra& alg = op.algebra();
    const Element top = alg.top();
    const Element nz = alg.neg(z);
    return alg.neg(op(top, top, nz)) & alg.neg(op(top, nz, top));
}

Element mu_iter(const TernaryOperator& op, Element z, unsigned l) {
    for (unsigned i = 0; i < l; ++i)
        z = mu(op, z);
    return z;
}

Element box_op(const TernaryOperator& op, Element x, Element y, Element z) {
    const Algebra& alg = op.algebra();
    return alg.neg(op(alg.neg(x), alg.neg(y), alg.neg(z)));
}

Element unary_disc(const TernaryOperator& op, Element x) {
    const Algebra& alg = op.algebra();
    return alg.neg(mu(op, alg.neg(x)));
}

Element ternary_disc(const TernaryOperator& op, Element x, Element y, Element z) {
    const Algebra& alg = op.algebra();
    const Element d = unary_disc(op, x ^ y);
    return (x & d) | (z & alg.neg(d));
}

CheckReport discriminator_check(const TernaryOperator& op) {
    CheckReport r{"discriminator", true, {}};
    const Element n = static_cast<Element>(op.n());
    const Element top = op.algebra().top();
    if (unary_disc(op, 0) != 0)
        r.add_failure("D0", {0}, {"x"});
    else
        r.add("D0", true);
    record(r, "D1", first1(n, [&](Element x) { return x != 0 && unary_disc(op, x) != top; }), {"x"});
    record(r, "T", first3(n, [&](Element a, Element b, Element c) {
               return ternary_disc(op, a, b, c) != (a != b ? a : c);
           }),
           {"a", "b", "c"});
    return r;
}

CheckReport check_mu_properties(const TernaryOperator& op) {
    CheckReport r{"mu", true, {}};
    const Element n = static_cast<Element>(op.n());
    const Element top = op.algebra().top();
    if (mu(op, 0) != 0)
        r.add_failure("MU1", {0}, {"x"});
    else
        r.add("MU1", true);
    record(r, "MU2", first1(n, [&](Element x) { return !leq(mu(op, x), x); }), {"x"});
    record(r, "MU3", first1(n, [&](Element z) { return (mu(op, z) == top) != (z == top); }), {"z"});
    record(r, "MU4", first2(n, [&](Element x, Element y) { return leq(x, y) && !leq(mu(op, x), mu(op, y)); }),
           {"x", "y"});
    std::optional<W> w5;
    for (Element x = 0; x < n && !w5; ++x)
        for (Element k = 0; k <= 4 && !w5; ++k)
            if (!leq(mu_iter(op, x, k + 1), mu_iter(op, x, k)))
                w5 = W{x, k};
    record(r, "MU5", w5, {"x", "n"});
    return r;
}

CheckReport check_s_consequences(const TernaryOperator& op) {
    CheckReport r{"s-consequences", true, {}};
    const Algebra& alg = op.algebra();
    const Element n = static_cast<Element>(op.n());
    record(r, "S-fix", first1(n, [&](Element a) {
               const Element v = alg.neg(mu(op, a));
               return mu(op, v) != v;
           }),
           {"a"});
    std::optional<W> wi;
    for (Element a = 0; a < n && !wi; ++a)
        for (Element l = 0; l <= 4 && !wi; ++l)
            if (mu_iter(op, alg.neg(mu(op, a)), l) != alg.neg(mu(op, a)))
                wi = W{a, l};
    record(r, "S-iter", wi, {"a", "l"});
    return r;
}

CheckReport check_monotone(const TernaryOperator& op) {
    CheckReport r{"monotone", true, {}};
    const Element n = static_cast<Element>(op.n());
    record(r, "MON1", first4(n, [&](Element a, Element a2, Element b, Element c) {
               return leq(a, a2) && !leq(op(a, b, c), op(a2, b, c));
           }),
           {"a", "a'", "b", "c"});
    record(r, "MON2", first4(n, [&](Element b, Element b2, Element a, Element c) {
               return leq(b, b2) && !leq(op(a, b, c), op(a, b2, c));
           }),
           {"b", "b'", "a", "c"});
    record(r, "MON3", first4(n, [&](Element c, Element c2, Element a, Element b) {
               return leq(c, c2) && !leq(op(a, b, c), op(a, b, c2));
           }),
           {"c", "c'", "a", "b"});
    return r;
}

} // namespace psiforge
