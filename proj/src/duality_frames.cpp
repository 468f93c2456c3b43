#include "psiforge/duality_frames.hpp"

#include "psiforge/errors.hpp"
#include "sweep.hpp"

#include <random>

#include <fmt/format.h>

namespace psiforge {

using detail::W;

namespace {

// Triples of arbitrary subsets packed as (U1 << 2m) | (U2 << m) | U3. This
// coincides with the row-major operator table index on the powerset of X.
std::size_t pack(unsigned m, const ClosedTriple& u) {
    return (static_cast<std::size_t>(u.y1) << (2 * m)) | (static_cast<std::size_t>(u.y2) << m) | u.y3;
}

ClosedTriple unpack(unsigned m, std::size_t p) {
    const PointSet mask = (1U << m) - 1;
    return {static_cast<PointSet>(p >> (2 * m)) & mask, static_cast<PointSet>(p >> m) & mask,
            static_cast<PointSet>(p) & mask};
}

// E[pack(U)] = {x : some Y in R(x) with Y inside U}.
std::vector<PointSet> exists_below(const PsiFrame& frame) {
    const unsigned m = frame.points();
    std::vector<PointSet> e(std::size_t{1} << (3 * m), 0);
    for (std::size_t t = 0; t < frame.triples(); ++t) {
        const auto y = frame.triple_at(t);
        for (unsigned x = 0; x < m; ++x)
            if (frame.bits()[x * frame.triples() + t])
                e[pack(m, y)] |= PointSet{1} << x;
    }
    for (unsigned bit = 0; bit < 3 * m; ++bit) {
        const std::size_t b = std::size_t{1} << bit;
        for (std::size_t p = 0; p < e.size(); ++p)
            if (p & b)
                e[p] |= e[p ^ b];
    }
    return e;
}

// pre[t] = R^{-1}(triple t).
std::vector<PointSet> preimages(const PsiFrame& frame) {
    std::vector<PointSet> pre(frame.triples(), 0);
    for (unsigned x = 0; x < frame.points(); ++x)
        for (std::size_t t = 0; t < frame.triples(); ++t)
            if (frame.bits()[x * frame.triples() + t])
                pre[t] |= PointSet{1} << x;
    return pre;
}

PointSet lowest_point(PointSet s) { return static_cast<PointSet>(std::countr_zero(s)); }

W triple_witness(const ClosedTriple& y) { return {y.y1, y.y2, y.y3}; }

} // namespace

PsiFrame::PsiFrame(unsigned points) : points_(points) {
    if (points == 0 || points > kMaxPoints)
        throw SizeError(fmt::format("frame with {} points is outside 1..{}", points, kMaxPoints));
    r_.resize(points * triples());
}

PsiFrame::PsiFrame(unsigned points, Bits r) : PsiFrame(points) {
    if (r.size() != r_.size())
        throw InputError(fmt::format("frame relation has {} bits, expected {}", r.size(), r_.size()));
    r_ = std::move(r);
}

ClosedTriple PsiFrame::triple_at(std::size_t t) const {
    const std::size_t s = subsets();
    return {static_cast<PointSet>(t / (s * s) + 1), static_cast<PointSet>((t / s) % s + 1),
            static_cast<PointSet>(t % s + 1)};
}

void PsiFrame::set(unsigned x, const ClosedTriple& y, bool value) {
    if (x >= points_)
        throw InputError(fmt::format("point {} out of range", x));
    if (!y.nonempty() || (y.y1 | y.y2 | y.y3) & ~whole())
        throw InputError(fmt::format("triple ({},{},{}) is not a triple of non-empty subsets", y.y1, y.y2, y.y3));
    r_[x * triples() + triple_index(y)] = value;
}

std::vector<ClosedTriple> l_set(const PsiFrame& frame, const ClosedTriple& u) {
    std::vector<ClosedTriple> out;
    for (std::size_t t = 0; t < frame.triples(); ++t) {
        const auto y = frame.triple_at(t);
        if ((y.y1 & u.y1) || (y.y2 & u.y2) || (y.y3 & u.y3))
            out.push_back(y);
    }
    return out;
}

PointSet diamond_R(const PsiFrame& frame, const ClosedTriple& u) {
    // R(x) meets the complement of L_{U^c}: some Y in R(x) misses U^c in
    // every component.
    const PointSet all = frame.whole();
    const ClosedTriple uc{all & ~u.y1, all & ~u.y2, all & ~u.y3};
    PointSet out = 0;
    for (unsigned x = 0; x < frame.points(); ++x)
        for (std::size_t t = 0; t < frame.triples(); ++t) {
            const auto y = frame.triple_at(t);
            if (frame.related(x, y) && !((y.y1 & uc.y1) || (y.y2 & uc.y2) || (y.y3 & uc.y3))) {
                out |= PointSet{1} << x;
                break;
            }
        }
    return out;
}

PointSet box_R(const PsiFrame& frame, const ClosedTriple& u) {
    PointSet out = 0;
    for (unsigned x = 0; x < frame.points(); ++x) {
        bool inside = true;
        for (std::size_t t = 0; t < frame.triples() && inside; ++t) {
            const auto y = frame.triple_at(t);
            if (frame.related(x, y) && !((y.y1 & u.y1) || (y.y2 & u.y2) || (y.y3 & u.y3)))
                inside = false;
        }
        if (inside)
            out |= PointSet{1} << x;
    }
    return out;
}

PointSet preimage(const PsiFrame& frame, const ClosedTriple& y) {
    if (!y.nonempty())
        return 0;
    PointSet out = 0;
    for (unsigned x = 0; x < frame.points(); ++x)
        if (frame.related(x, y))
            out |= PointSet{1} << x;
    return out;
}

bool is_monotone_frame(const PsiFrame& frame) {
    const auto e = exists_below(frame);
    const auto pre = preimages(frame);
    for (std::size_t t = 0; t < frame.triples(); ++t)
        if (e[pack(frame.points(), frame.triple_at(t))] != pre[t])
            return false;
    return true;
}

CheckReport check_psi_frame(const PsiFrame& frame) {
    CheckReport r{"frame", true, {}};
    const unsigned m = frame.points();
    const std::size_t nt = frame.triples();
    r.add("DF1", true).note = "trivially satisfied (finite discrete space: every subset is clopen)";

    std::optional<W> df2;
    if (m <= kDefinitionalDf2MaxPoints) {
        std::vector<Bits> rx(m, Bits(nt));
        for (unsigned x = 0; x < m; ++x)
            for (std::size_t t = 0; t < nt; ++t)
                rx[x][t] = frame.bits()[x * nt + t];
        std::vector<Bits> meet(m, Bits(nt));
        for (auto& b : meet)
            b.set();
        Bits lu(nt);
        for (std::size_t p = 0; p < (std::size_t{1} << (3 * m)); ++p) {
            const auto u = unpack(m, p);
            for (std::size_t t = 0; t < nt; ++t) {
                const auto y = frame.triple_at(t);
                lu[t] = (y.y1 & u.y1) || (y.y2 & u.y2) || (y.y3 & u.y3);
            }
            for (unsigned x = 0; x < m; ++x)
                if (rx[x].is_subset_of(lu))
                    meet[x] &= lu;
        }
        for (unsigned x = 0; x < m && !df2; ++x) {
            const Bits extra = meet[x] - rx[x];
            if (extra.any()) {
                const auto y = frame.triple_at(extra.find_first());
                df2 = W{x, y.y1, y.y2, y.y3};
            }
        }
    } else {
        const auto e = exists_below(frame);
        for (unsigned x = 0; x < m && !df2; ++x)
            for (std::size_t t = 0; t < nt && !df2; ++t) {
                const auto y = frame.triple_at(t);
                if (((e[pack(m, y)] >> x) & 1U) && !frame.related(x, y))
                    df2 = W{x, y.y1, y.y2, y.y3};
            }
    }
    detail::record(r, "DF2", df2, {"x", "Y1", "Y2", "Y3"});
    if (m > kDefinitionalDf2MaxPoints)
        r.results.back().note = "checked in the equivalent form: R(x) is upward closed";

    std::optional<W> df3;
    for (unsigned x = 0; x < m && !df3; ++x)
        for (std::size_t t = 0; t < nt && !df3; ++t) {
            const auto y = frame.triple_at(t);
            if (!frame.related(x, y))
                continue;
            bool found = false;
            for (unsigned p1 = 0; p1 < m && !found; ++p1)
                for (unsigned p2 = 0; p2 < m && !found; ++p2)
                    if (((y.y1 >> p1) & 1U) && ((y.y2 >> p2) & 1U) &&
                        frame.related(x, {PointSet{1} << p1, PointSet{1} << p2, y.y3}))
                        found = true;
            if (!found)
                df3 = W{x, y.y1, y.y2, y.y3};
        }
    detail::record(r, "DF3", df3, {"x", "Y1", "Y2", "Y3"});
    return r;
}

CheckReport check_psi_space(const PsiFrame& frame) {
    const auto df = check_psi_frame(frame);
    if (!df.all_passed())
        throw PreconditionError("check_psi_space requires a PSI-frame\n" + format_report(df));
    const unsigned m = frame.points();
    if (m > kPif1MaxPoints)
        throw SizeError(fmt::format("PIF1 sweep is capped at {} points", kPif1MaxPoints));
    const auto pre = preimages(frame);
    const PointSet s = frame.whole();
    auto R = [&](PointSet a, PointSet b, PointSet c) -> PointSet {
        if (a == 0 || b == 0 || c == 0)
            return 0;
        return pre[frame.triple_index({a, b, c})];
    };
    CheckReport r{"space", true, {}};

    std::optional<W> pif1;
    for (PointSet y1 = 1; y1 <= s && !pif1; ++y1)
        for (PointSet y2 = 1; y2 <= s && !pif1; ++y2)
            for (PointSet y3 = 1; y3 <= s && !pif1; ++y3) {
                const PointSet lhs = R(y1, y2, y3);
                if (lhs == 0)
                    continue;
                for (PointSet z = 1; z <= s && !pif1; ++z)
                    for (PointSet w = 1; w <= s && !pif1; ++w) {
                        const PointSet rhs = R(y1, y2, z) | R(y1, y2, w) | R(s & ~z, s & ~w, y3);
                        if (lhs & ~rhs)
                            pif1 = W{y1, y2, y3, z, w, lowest_point(lhs & ~rhs)};
                    }
            }
    detail::record(r, "PIF1", pif1, {"Y1", "Y2", "Y3", "Z", "W", "x"});
    r.results.back().note = "cl is the identity on a finite discrete space";

    std::optional<W> pif2, pif4;
    for (std::size_t t = 0; t < frame.triples(); ++t) {
        const auto y = frame.triple_at(t);
        if (!pif2 && (y.y1 & y.y3) == 0 && pre[t] != 0)
            pif2 = triple_witness(y);
        if (!pif4 && (pre[t] & ~R(y.y2, y.y1, y.y3)) != 0)
            pif4 = triple_witness(y);
    }
    detail::record(r, "PIF2", pif2, {"Y1", "Y2", "Y3"});
    std::optional<W> pif3;
    for (PointSet y1 = 1; y1 <= s && !pif3; ++y1)
        for (PointSet y2 = 1; y2 <= s && !pif3; ++y2) {
            const PointSet miss = (y1 & y2) & ~R(y1, y1, y2);
            if (miss)
                pif3 = W{y1, y2, lowest_point(miss)};
        }
    detail::record(r, "PIF3", pif3, {"Y1", "Y2", "x"});
    detail::record(r, "PIF4", pif4, {"Y1", "Y2", "Y3"});
    return r;
}

CheckReport check_ecua_rem(const PsiFrame& frame) {
    CheckReport r{"ecua-rem", true, {}};
    const auto pre = preimages(frame);
    const PointSet s = frame.whole();
    std::optional<W> w;
    for (PointSet y1 = 1; y1 <= s && !w; ++y1) {
        const PointSet c = s & ~y1;
        if (c == 0)
            continue;
        for (PointSet y2 = 1; y2 <= s && !w; ++y2)
            if (pre[frame.triple_index({y1, y2, c})] != 0)
                w = W{y1, y2};
    }
    detail::record(r, "ECUA-REM", w, {"Y1", "Y2"});
    return r;
}

PsiFrame dual_frame(const TernaryOperator& op, DualMode mode) {
    const Algebra& alg = op.algebra();
    const unsigned m = alg.atoms();
    if (m > PsiFrame::kMaxPoints)
        throw SizeError("dual frame too large");
    if (mode == DualMode::Auto)
        mode = check_3bamo(op).all_passed() ? DualMode::Reduced : DualMode::Definitional;
    std::vector<Element> g(op.table().begin(), op.table().end());
    if (mode == DualMode::Definitional) {
        // g[p] = meet of op over every triple above p.
        for (unsigned bit = 0; bit < 3 * m; ++bit) {
            const std::size_t b = std::size_t{1} << bit;
            for (std::size_t p = 0; p < g.size(); ++p)
                if (!(p & b))
                    g[p] &= g[p | b];
        }
    }
    PsiFrame frame(m);
    for (std::size_t t = 0; t < frame.triples(); ++t) {
        const auto y = frame.triple_at(t);
        const Element v = g[pack(m, y)];
        for (unsigned u = 0; u < m; ++u)
            if ((v >> u) & 1U)
                frame.set(u, y);
    }
    return frame;
}

TernaryOperator complex_operator(const PsiFrame& frame) {
    const auto e = exists_below(frame);
    return TernaryOperator(make_algebra(frame.points()), std::vector<std::uint8_t>(e.begin(), e.end()));
}

TernaryOperator complex_algebra(const PsiFrame& frame) {
    const auto df = check_psi_frame(frame);
    if (!df.all_passed())
        throw PreconditionError("complex_algebra requires a PSI-frame\n" + format_report(df));
    auto op = complex_operator(frame);
    const auto mo = check_3bamo(op);
    if (!mo.all_passed())
        throw InternalError("complex algebra of a PSI-frame is not a 3BAMO\n" + format_report(mo));
    if (frame.points() <= kPif1MaxPoints && check_psi_space(frame).all_passed()) {
        const auto psi = check_psi(op);
        if (!psi.all_passed())
            throw InternalError("complex algebra of a PSI-space is not a PSI-algebra\n" + format_report(psi));
    }
    return op;
}

namespace {

void require_3bamo(const TernaryOperator& op, const char* who) {
    const auto mo = check_3bamo(op);
    if (!mo.all_passed())
        throw PreconditionError(fmt::format("{} requires a 3BAMO\n{}", who, format_report(mo)));
}

} // namespace

CheckReport stone_commutation_check(const TernaryOperator& op) {
    require_3bamo(op, "stone_commutation_check");
    const Algebra& alg = op.algebra();
    const PsiFrame frame = dual_frame(op);
    const Element n = static_cast<Element>(op.n());
    CheckReport r{"stone-commutation", true, {}};
    detail::record(r, "dia-beta", detail::first3(n, [&](Element a, Element b, Element c) {
                       return diamond_R(frame, {a, b, c}) != op(a, b, c);
                   }),
                   {"a", "b", "c"});
    detail::record(r, "box-beta", detail::first3(n, [&](Element a, Element b, Element c) {
                       return box_R(frame, {a, b, c}) != box_op(op, a, b, c);
                   }),
                   {"a", "b", "c"});
    detail::record(r, "box-dia-dual", detail::first3(n, [&](Element a, Element b, Element c) {
                       const PointSet d = diamond_R(frame, {alg.neg(a), alg.neg(b), alg.neg(c)});
                       return box_R(frame, {a, b, c}) != (frame.whole() & ~d);
                   }),
                   {"a", "b", "c"});
    return r;
}

CheckReport double_dual_check(const TernaryOperator& op) {
    require_3bamo(op, "double_dual_check");
    const TernaryOperator back = complex_operator(dual_frame(op));
    CheckReport r{"double-dual", true, {}};
    detail::record(r, "double-dual", detail::first3(static_cast<Element>(op.n()), [&](Element a, Element b, Element c) {
                       return back(a, b, c) != op(a, b, c);
                   }),
                   {"a", "b", "c"});
    return r;
}

TotalityVerdict is_total(const PsiFrame& frame) {
    const auto pre = preimages(frame);
    for (std::size_t t = 0; t < frame.triples(); ++t) {
        if (pre[t] != 0 && pre[t] != frame.whole()) {
            const auto y = frame.triple_at(t);
            return {false, std::array<std::uint32_t, 5>{y.y1, y.y2, y.y3, lowest_point(pre[t]),
                                                        lowest_point(frame.whole() & ~pre[t])}};
        }
    }
    return {};
}

SeparationSearch search_pif2_separation(std::span<const TernaryOperator> pool, std::size_t random_frames,
                                        std::uint64_t seed) {
    SeparationSearch out;
    auto consider = [&](const PsiFrame& f) {
        ++out.frames_examined;
        if (out.separating || !check_psi_frame(f).all_passed())
            return;
        const auto pre = preimages(f);
        for (std::size_t t = 0; t < f.triples(); ++t) {
            const auto y = f.triple_at(t);
            if ((y.y1 & y.y3) == 0 && pre[t] != 0)
                return;
        }
        ++out.frames_passing_pif2;
        if (!check_ecua_rem(f).all_passed())
            out.separating = f;
    };
    for (const auto& op : pool)
        if (op.algebra().atoms() <= 3)
            consider(dual_frame(op));
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < random_frames; ++i) {
        const unsigned m = std::uniform_int_distribution<unsigned>(1, 3)(rng);
        PsiFrame f(m);
        // Generators with singleton first components make DF3 hold after
        // upward closure.
        std::uniform_int_distribution<unsigned> point(0, m - 1);
        std::uniform_int_distribution<PointSet> subset(1, f.whole());
        for (unsigned x = 0; x < m; ++x) {
            const unsigned gens = std::uniform_int_distribution<unsigned>(0, 3)(rng);
            for (unsigned j = 0; j < gens; ++j) {
                const ClosedTriple g{PointSet{1} << point(rng), PointSet{1} << point(rng), subset(rng)};
                for (std::size_t t = 0; t < f.triples(); ++t)
                    if (g.subset_of(f.triple_at(t)))
                        f.set(x, f.triple_at(t));
            }
        }
        consider(f);
    }
    return out;
}

} // namespace psiforge
