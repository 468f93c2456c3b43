#include "psiforge/morphisms.hpp"

#include "psiforge/errors.hpp"
#include "sweep.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace psiforge {

using detail::leq;

Element BooleanHom::operator()(Element a) const {
    Element out = 0;
    for (unsigned t = 0; t < atom_map_.size(); ++t)
        if ((a >> atom_map_[t]) & 1U)
            out |= Element{1} << t;
    return out;
}

bool BooleanHom::is_bijective() const {
    if (source_.atoms() != target_.atoms())
        return false;
    auto sorted = atom_map_;
    std::ranges::sort(sorted);
    return std::ranges::adjacent_find(sorted) == sorted.end();
}

BooleanHom make_hom(const Algebra& source, const Algebra& target, std::vector<unsigned> atom_map) {
    if (atom_map.size() != target.atoms())
        throw InputError(fmt::format("atom map has {} entries, target has {} atoms", atom_map.size(), target.atoms()));
    for (unsigned v : atom_map)
        if (v >= source.atoms())
            throw InputError(fmt::format("atom map value {} is not an atom of the source", v));
    BooleanHom h(source, target, std::move(atom_map));
    if (h(source.bottom()) != target.bottom() || h(source.top()) != target.top())
        throw InternalError("induced map does not preserve the bounds");
    for (Element a = 0; a <= source.top(); ++a) {
        if (h(source.neg(a)) != target.neg(h(a)))
            throw InternalError(fmt::format("induced map does not preserve complement at {}", a));
        for (Element b = 0; b <= source.top(); ++b)
            if (h(a | b) != (h(a) | h(b)) || h(a & b) != (h(a) & h(b)))
                throw InternalError(fmt::format("induced map does not preserve the lattice at ({},{})", a, b));
    }
    return h;
}

std::vector<BooleanHom> all_homs(const Algebra& source, const Algebra& target) {
    std::vector<BooleanHom> out;
    std::vector<unsigned> m(target.atoms(), 0);
    while (true) {
        out.push_back(make_hom(source, target, m));
        std::size_t i = m.size();
        while (i > 0) {
            --i;
            if (++m[i] < source.atoms())
                break;
            m[i] = 0;
            if (i == 0)
                return out;
        }
    }
}

BooleanHom compose(const BooleanHom& outer, const BooleanHom& inner) {
    if (!(inner.target() == outer.source()))
        throw InputError("composition of homs with mismatched algebras");
    std::vector<unsigned> m;
    for (unsigned t : outer.atom_map())
        m.push_back(inner.atom_map()[t]);
    return make_hom(inner.source(), outer.target(), std::move(m));
}

std::optional<BooleanHom> inverse(const BooleanHom& h) {
    if (!h.is_bijective())
        return std::nullopt;
    std::vector<unsigned> inv(h.atom_map().size());
    for (unsigned t = 0; t < inv.size(); ++t)
        inv[h.atom_map()[t]] = t;
    return make_hom(h.target(), h.source(), std::move(inv));
}

MorphismClassification classify_psi_morphism(const BooleanHom& h, const TernaryOperator& op_source,
                                             const TernaryOperator& op_target) {
    if (!(op_source.algebra() == h.source()) || !(op_target.algebra() == h.target()))
        throw InputError("operators do not match the homomorphism's algebras");
    MorphismClassification c;
    const Element n = static_cast<Element>(h.source().size());
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element d = 0; d < n; ++d) {
                const Element lhs = h(op_source(a, b, d));
                const Element rhs = op_target(h(a), h(b), h(d));
                if (c.semi && !leq(lhs, rhs)) {
                    c.semi = false;
                    c.semi_witness = std::array<Element, 3>{a, b, d};
                }
                if (c.hemi && !leq(rhs, lhs)) {
                    c.hemi = false;
                    c.hemi_witness = std::array<Element, 3>{a, b, d};
                }
            }
    c.full = c.semi && c.hemi;
    return c;
}

namespace {

PointSet image(const PointMap& f, PointSet y) {
    PointSet out = 0;
    for (unsigned x = 0; x < f.size(); ++x)
        if ((y >> x) & 1U)
            out |= PointSet{1} << f[x];
    return out;
}

} // namespace

FrameMapClassification classify_frame_map(const PointMap& f, const PsiFrame& frame1, const PsiFrame& frame2) {
    if (f.size() != frame1.points())
        throw InputError(fmt::format("point map has {} entries, source frame has {} points", f.size(), frame1.points()));
    for (unsigned v : f)
        if (v >= frame2.points())
            throw InputError(fmt::format("point map value {} is outside the target frame", v));
    FrameMapClassification c;
    for (unsigned x = 0; x < frame1.points() && c.sp2; ++x)
        for (std::size_t t = 0; t < frame1.triples() && c.sp2; ++t) {
            const auto y = frame1.triple_at(t);
            if (frame1.related(x, y) && !frame2.related(f[x], {image(f, y.y1), image(f, y.y2), image(f, y.y3)})) {
                c.sp2 = false;
                c.sp2_witness = std::array<std::uint32_t, 4>{x, y.y1, y.y2, y.y3};
            }
        }
    for (unsigned x = 0; x < frame1.points() && c.sp3; ++x)
        for (std::size_t t = 0; t < frame2.triples() && c.sp3; ++t) {
            const auto z = frame2.triple_at(t);
            if (!frame2.related(f[x], z))
                continue;
            bool found = false;
            for (std::size_t s = 0; s < frame1.triples() && !found; ++s) {
                const auto y = frame1.triple_at(s);
                found = frame1.related(x, y) && ClosedTriple{image(f, y.y1), image(f, y.y2), image(f, y.y3)}.subset_of(z);
            }
            if (!found) {
                c.sp3 = false;
                c.sp3_witness = std::array<std::uint32_t, 4>{x, z.y1, z.y2, z.y3};
            }
        }
    return c;
}

BooleanHom frame_map_dual(const PointMap& f, unsigned points1, unsigned points2) {
    return make_hom(make_algebra(points2), make_algebra(points1), f);
}

PointMap hom_dual(const BooleanHom& h) { return h.atom_map(); }

CheckReport morphism_duality_check(const BooleanHom& h, const TernaryOperator& op_source,
                                   const TernaryOperator& op_target) {
    for (const auto* op : {&op_source, &op_target}) {
        const auto rep = check_psi(*op);
        if (!rep.all_passed())
            throw PreconditionError("morphism_duality_check requires PSI operators\n" + format_report(rep));
    }
    CheckReport r{"morphism-duality", true, {}};
    const auto alg = classify_psi_morphism(h, op_source, op_target);
    const PsiFrame frame_target = dual_frame(op_target);
    const PsiFrame frame_source = dual_frame(op_source);
    const PointMap f = hom_dual(h);
    const auto top = classify_frame_map(f, frame_target, frame_source);
    r.add("semi<->semi-map", alg.semi == top.semi());
    r.add("hemi<->hemi-map", alg.hemi == top.hemi());
    r.add("hom<->psi-map", alg.full == top.psi());

    const BooleanHom fstar = frame_map_dual(f, frame_target.points(), frame_source.points());
    const auto back =
        classify_psi_morphism(fstar, complex_operator(frame_source), complex_operator(frame_target));
    r.add("f*-is-h", fstar == h);
    r.add("semi-map<->f*-semi", top.semi() == back.semi);
    r.add("hemi-map<->f*-hemi", top.hemi() == back.hemi);
    r.add("psi-map<->f*-hom", top.psi() == back.full);
    return r;
}

EcaMorphismClassification classify_eca_morphism(const BooleanHom& h, const TernaryRelation& rel_source,
                                                const TernaryRelation& rel_target) {
    for (const auto* rel : {&rel_source, &rel_target}) {
        const auto rep = check_eca(*rel);
        if (!rep.all_passed())
            throw PreconditionError("classify_eca_morphism requires ECAs\n" + format_report(rep));
    }
    if (!(rel_source.algebra() == h.source()) || !(rel_target.algebra() == h.target()))
        throw InputError("relations do not match the homomorphism's algebras");
    EcaMorphismClassification c;
    const Element n = static_cast<Element>(h.source().size());
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element d = 0; d < n; ++d) {
                const bool src = rel_source.contains(a, b, d);
                const bool tgt = rel_target.contains(h(a), h(b), h(d));
                if (c.reflecting && tgt && !src) {
                    c.reflecting = false;
                    c.reflecting_witness = std::array<Element, 3>{a, b, d};
                }
                if (c.preserving && src && !tgt) {
                    c.preserving = false;
                    c.preserving_witness = std::array<Element, 3>{a, b, d};
                }
            }
    c.similarity = c.reflecting && c.preserving;
    const auto m = classify_psi_morphism(h, rel_to_op(rel_source), rel_to_op(rel_target));
    c.equivalences.kind = "eca-morphism";
    c.equivalences.add("reflecting<->semi", c.reflecting == m.semi);
    c.equivalences.add("preserving<->hemi", c.preserving == m.hemi);
    c.equivalences.add("similarity<->hom", c.similarity == m.full);
    return c;
}

} // namespace psiforge
