#include "psiforge/contact_relation.hpp"

#include "psiforge/errors.hpp"
#include "sweep.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

namespace psiforge {

using detail::first2;
using detail::first3;
using detail::first4;
using detail::leq;
using detail::record;
using detail::W;

TernaryRelation::TernaryRelation(Algebra alg) : alg_(std::move(alg)), bits_(alg_.size() * alg_.size() * alg_.size()) {}

TernaryRelation::TernaryRelation(Algebra alg, Bits bits) : alg_(std::move(alg)), bits_(std::move(bits)) {
    const std::size_t want = alg_.size() * alg_.size() * alg_.size();
    if (bits_.size() != want)
        throw InputError(fmt::format("relation bitset has {} entries, expected {}", bits_.size(), want));
}

TernaryRelation TernaryRelation::full(const Algebra& alg) {
    TernaryRelation r(alg);
    r.bits_.set();
    return r;
}

TernaryRelation TernaryRelation::from_predicate(const Algebra& alg,
                                                const std::function<bool(Element, Element, Element)>& p) {
    TernaryRelation r(alg);
    const Element n = static_cast<Element>(alg.size());
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element c = 0; c < n; ++c)
                if (p(a, b, c))
                    r.set(a, b, c);
    return r;
}

bool TernaryRelation::subset_of(const TernaryRelation& other) const {
    if (!(alg_ == other.alg_))
        throw InputError("inclusion of relations on different algebras");
    return bits_.is_subset_of(other.bits_);
}

TernaryRelation permute(const TernaryRelation& rel, const AtomPermutation& p) {
    const auto inv = p.inverse();
    return TernaryRelation::from_predicate(rel.algebra(), [&](Element a, Element b, Element c) {
        return rel.contains(inv.apply(a), inv.apply(b), inv.apply(c));
    });
}

CheckReport check_eca(const TernaryRelation& rel) {
    CheckReport r{"eca", true, {}};
    const Algebra& alg = rel.algebra();
    const Element n = static_cast<Element>(rel.n());
    auto in = [&](Element a, Element b, Element c) { return rel.contains(a, b, c); };
    record(r, "EC0", first4(n, [&](Element a, Element b, Element f, Element d) {
               return in(a, b, f) && !in(a | d, b, f | d);
           }),
           {"a", "b", "f", "d"});
    detail::record5(
        r, "EC1", alg,
        [&](Element a, Element b, Element d, Element e, Element f) {
            return in(a, b, d) && in(a, b, e) && in(d, e, f) && !in(a, b, f);
        },
        {"a", "b", "d", "e", "f"});
    record(r, "EC2", first3(n, [&](Element a, Element b, Element f) { return !in(a, b, a | f); }), {"a", "b", "f"});
    record(r, "EC3", first2(n, [&](Element a, Element f) { return in(a, a, f) && !leq(a, f); }), {"a", "f"});
    record(r, "EC4", first3(n, [&](Element a, Element b, Element f) { return in(a, b, f) && !in(b, a, f); }),
           {"a", "b", "f"});
    return r;
}

CheckReport check_extca(const TernaryRelation& rel) {
    CheckReport r{"extca", true, {}};
    const Algebra& alg = rel.algebra();
    const Element n = static_cast<Element>(rel.n());
    auto in = [&](Element a, Element b, Element c) { return rel.contains(a, b, c); };
    record(r, "ExtCA0", first4(n, [&](Element a, Element b, Element f, Element d) {
               return in(a, b, f) && !in(a | d, b, d | f);
           }),
           {"a", "b", "f", "d"});
    detail::record5(
        r, "ExtCA1", alg,
        [&](Element a, Element b, Element d, Element e, Element f) {
            return in(a, b, d) && in(a, b, e) && in(d, e, f) && !in(a, b, f);
        },
        {"a", "b", "d", "e", "f"});
    record(r, "ExtCA2", first3(n, [&](Element a, Element b, Element f) { return leq(a, f) && !in(a, b, f); }),
           {"a", "b", "f"});
    record(r, "ExtCA3", first3(n, [&](Element a, Element b, Element f) { return in(a, b, f) && !leq(a & b, f); }),
           {"a", "b", "f"});
    record(r, "ExtCA4", first3(n, [&](Element a, Element b, Element f) { return in(a, b, f) && !in(b, a, f); }),
           {"a", "b", "f"});
    return r;
}

namespace {

void require_eca(const TernaryRelation& rel, const char* what) {
    const auto rep = check_eca(rel);
    if (!rep.all_passed())
        throw PreconditionError(fmt::format("{} requires an extended contact relation\n{}", what, format_report(rep)));
}

} // namespace

CheckReport check_derived_eca_props(const TernaryRelation& rel) {
    require_eca(rel, "check_derived_eca_props");
    CheckReport r{"eca-derived", true, {}};
    const Element n = static_cast<Element>(rel.n());
    const Element top = rel.algebra().top();
    auto in = [&](Element a, Element b, Element c) { return rel.contains(a, b, c); };
    record(r, "weaker-right", first4(n, [&](Element a, Element b, Element c, Element f) {
               return in(a, b, c) && leq(c, f) && !in(a, b, f);
           }),
           {"a", "b", "c", "f"});
    record(r, "stronger-left", first4(n, [&](Element a, Element b, Element c, Element f) {
               return in(a, b, c) && leq(f, a) && !in(f, b, c);
           }),
           {"a", "b", "c", "f"});
    record(r, "EC3-iff", first2(n, [&](Element a, Element f) { return in(a, a, f) != leq(a, f); }), {"a", "f"});
    record(r, "BI-1", detail::first1(n, [&](Element a) { return !in(0, top, a); }), {"a"});
    record(r, "BI-2", first4(n, [&](Element a, Element x, Element b, Element c) {
               return in(a, b, c) && in(x, b, c) && !in(a | x, b, c);
           }),
           {"a", "x", "b", "c"});
    record(r, "BI-3", first4(n, [&](Element a, Element b, Element c, Element d) {
               return in(a, b, c) && leq(d, a) && !in(d, b, c);
           }),
           {"a", "b", "c", "d"});
    record(r, "BI-4", first4(n, [&](Element a, Element b, Element c, Element d) {
               return in(a, b, c) && leq(c, d) && !in(a, b, d);
           }),
           {"a", "b", "c", "d"});
    for (const auto& row : r.results) {
        if (!row.passed)
            throw InternalError(fmt::format("derived ECA property {} failed on an ECA\n{}", row.id, format_report(r)));
    }
    return r;
}

CheckReport characteristic_lemma_check(const TernaryRelation& rel) {
    require_eca(rel, "characteristic_lemma_check");
    CheckReport r{"characteristic", true, {}};
    const Element n = static_cast<Element>(rel.n());
    const Element top = rel.algebra().top();
    auto chi = [&](Element a, Element b, Element c) -> unsigned { return rel.contains(a, b, c) ? 1U : 0U; };
    record(r, "ch-1", first3(n, [&](Element a, Element b, Element c) {
               return chi(0, b, c) != 1 || chi(a, 0, c) != 1 || chi(a, b, top) != 1;
           }),
           {"a", "b", "c"});
    record(r, "ch-2", first4(n, [&](Element a, Element x, Element b, Element c) {
               return chi(a | x, b, c) != (chi(a, b, c) & chi(x, b, c));
           }),
           {"a", "x", "b", "c"});
    record(r, "ch-3", first4(n, [&](Element a, Element b, Element x, Element c) {
               return chi(a, b | x, c) != (chi(a, b, c) & chi(a, x, c));
           }),
           {"a", "b", "x", "c"});
    record(r, "ch-4", first4(n, [&](Element a, Element b, Element c, Element x) {
               return chi(a, b, c & x) > (chi(a, b, c) & chi(a, b, x));
           }),
           {"a", "b", "c", "x"});
    return r;
}

TernaryOperator rel_to_op(const TernaryRelation& rel) {
    const Algebra& alg = rel.algebra();
    return TernaryOperator::from_function(alg, [&](Element a, Element b, Element c) {
        return rel.contains(a, b, alg.neg(c)) ? alg.bottom() : alg.top();
    });
}

TernaryRelation op_to_rel(const TernaryOperator& op) {
    const Algebra& alg = op.algebra();
    return TernaryRelation::from_predicate(alg,
                                           [&](Element a, Element b, Element c) { return op(a, b, alg.neg(c)) == 0; });
}

CheckReport op_to_rel_report(const TernaryOperator& op) {
    CheckReport r{"op-to-rel", true, {}};
    const auto v = is_relational(op);
    if (v.relational) {
        r.add("relational", true);
    } else {
        auto& row = r.add_failure("relational", {(*v.witness)[0], (*v.witness)[1], (*v.witness)[2]}, {"a", "b", "c"});
        row.note = "translation computed, but the operator takes values outside {0,1}";
    }
    return r;
}

TernaryRelation largest_eca(const Algebra& alg) {
    return TernaryRelation::from_predicate(alg,
                                           [&](Element a, Element b, Element c) { return (a & b & alg.neg(c)) == 0; });
}

ContactRelation contact_from_eca(const TernaryRelation& rel) {
    require_eca(rel, "contact_from_eca");
    const Algebra& alg = rel.algebra();
    const Element n = static_cast<Element>(alg.size());
    Bits bits(std::size_t{n} * n);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            bits[a * n + b] = !rel.contains(a, b, 0);
    ContactRelation c(alg, bits);
    for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
            if (c.holds(a, b) != c.holds(b, a))
                throw InternalError(fmt::format("contact is not symmetric at ({},{})", a, b));
            if ((a & b) != 0 && !c.holds(a, b))
                throw InternalError(fmt::format("overlapping regions {} and {} are not in contact", a, b));
        }
    }
    return c;
}

CheckReport posets_dual_iso_check(std::span<const TernaryRelation> ecas,
                                  std::span<const TernaryOperator> relational_ops) {
    if (ecas.empty() || relational_ops.empty())
        throw InputError("posets_dual_iso_check needs a non-empty enumeration on both sides");
    const Algebra& alg = ecas.front().algebra();
    for (const auto& r : ecas)
        if (!(r.algebra() == alg))
            throw InputError("enumerated relations live on different algebras");
    for (const auto& o : relational_ops)
        if (!(o.algebra() == alg))
            throw InputError("enumerated operators live on different algebras");

    CheckReport rep{"dual-iso", true, {}};
    std::vector<TernaryOperator> images;
    images.reserve(ecas.size());
    for (const auto& r : ecas)
        images.push_back(rel_to_op(r));

    std::optional<W> order_fail;
    for (std::uint32_t i = 0; i < ecas.size() && !order_fail; ++i) {
        for (std::uint32_t j = 0; j < ecas.size() && !order_fail; ++j) {
            if (ecas[i].subset_of(ecas[j]) != images[j].leq_pointwise(images[i]))
                order_fail = W{i, j};
        }
    }
    record(rep, "order-reversal", order_fail, {"i", "j"});

    // Bijection onto the operator list: injective images, each image listed,
    // and every listed operator hit.
    std::map<std::vector<std::uint8_t>, std::uint32_t> listed;
    for (std::uint32_t i = 0; i < relational_ops.size(); ++i)
        listed.emplace(relational_ops[i].table(), i);
    std::map<std::vector<std::uint8_t>, std::uint32_t> seen;
    std::optional<W> inj_fail, onto_fail;
    for (std::uint32_t i = 0; i < images.size(); ++i) {
        auto [it, fresh] = seen.emplace(images[i].table(), i);
        if (!fresh && !inj_fail)
            inj_fail = W{it->second, i};
        if (!listed.contains(images[i].table()) && !onto_fail)
            onto_fail = W{i};
    }
    record(rep, "injective", inj_fail, {"i", "j"});
    record(rep, "into-list", onto_fail, {"i"});
    std::optional<W> surj_fail;
    for (std::uint32_t i = 0; i < relational_ops.size() && !surj_fail; ++i) {
        if (!seen.contains(relational_ops[i].table()))
            surj_fail = W{i};
    }
    record(rep, "surjective", surj_fail, {"op"});
    return rep;
}

} // namespace psiforge
