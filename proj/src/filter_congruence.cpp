#include "psiforge/filter_congruence.hpp"

#include "psiforge/errors.hpp"
#include "sweep.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <fmt/format.h>

namespace psiforge {

using detail::leq;
using detail::W;

namespace {

bool closed_full(const TernaryOperator& op, Element g) {
    const Element n = static_cast<Element>(op.n());
    // valid[x] = all y with x -> y in F, i.e. x and g <= y.
    std::vector<std::vector<Element>> valid(n);
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
            if (leq(x & g, y))
                valid[x].push_back(y);
    for (Element x1 = 0; x1 < n; ++x1)
        for (Element x2 = 0; x2 < n; ++x2)
            for (Element x3 = 0; x3 < n; ++x3) {
                const Element lhs = op(x1, x2, x3) & g;
                if (lhs == 0)
                    continue;
                for (Element y1 : valid[x1])
                    for (Element y2 : valid[x2])
                        for (Element y3 : valid[x3])
                            if (!leq(lhs, op(y1, y2, y3)))
                                return false;
            }
    return true;
}

bool closed_su_mid(const TernaryOperator& op, Element g) {
    const Element n = static_cast<Element>(op.n());
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
            if (!leq(a & g, b))
                continue;
            for (Element x = 0; x < n; ++x)
                for (Element y = 0; y < n; ++y) {
                    if (!leq(op(x, y, a) & g, op(x, y, b)))
                        return false;
                    if (!leq(op(x, a, y) & g, op(x, b, y)))
                        return false;
                }
        }
    return true;
}

void require_psi(const TernaryOperator& op, const char* what) {
    const auto rep = check_psi(op);
    if (!rep.all_passed())
        throw PreconditionError(fmt::format("{} requires a PSI operator\n{}", what, format_report(rep)));
}

using Matrix = std::vector<std::vector<bool>>;

Matrix as_matrix(const Congruence& c) {
    const std::size_t n = c.block.size();
    Matrix m(n, std::vector<bool>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            m[a][b] = c.block[a] == c.block[b];
    return m;
}

Matrix compose(const Matrix& x, const Matrix& y) {
    const std::size_t n = x.size();
    Matrix m(n, std::vector<bool>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (x[a][b])
                for (std::size_t c = 0; c < n; ++c)
                    if (y[b][c])
                        m[a][c] = true;
    return m;
}

Congruence partition_meet(const Congruence& x, const Congruence& y) {
    std::map<std::pair<unsigned, unsigned>, unsigned> ids;
    std::vector<unsigned> labels;
    for (std::size_t a = 0; a < x.block.size(); ++a)
        labels.push_back(ids.emplace(std::pair{x.block[a], y.block[a]}, ids.size()).first->second);
    return Congruence{labels};
}

Congruence partition_join(const Congruence& x, const Congruence& y) {
    const std::size_t n = x.block.size();
    std::vector<unsigned> parent(n);
    std::iota(parent.begin(), parent.end(), 0U);
    auto find = [&](unsigned v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto* c : {&x, &y}) {
        std::map<unsigned, unsigned> first;
        for (unsigned a = 0; a < n; ++a) {
            auto [it, fresh] = first.emplace(c->block[a], a);
            if (!fresh)
                parent[find(a)] = find(it->second);
        }
    }
    std::vector<unsigned> labels(n);
    std::map<unsigned, unsigned> ids;
    for (unsigned a = 0; a < n; ++a)
        labels[a] = ids.emplace(find(a), ids.size()).first->second;
    return Congruence{labels};
}

// All set partitions of {0..m-1} as restricted growth strings.
void partitions(std::size_t m, std::vector<unsigned>& cur, unsigned maxlabel, std::vector<std::vector<unsigned>>& out) {
    if (cur.size() == m) {
        out.push_back(cur);
        return;
    }
    for (unsigned l = 0; l <= maxlabel; ++l) {
        cur.push_back(l);
        partitions(m, cur, std::max(maxlabel, l + 1), out);
        cur.pop_back();
    }
}

} // namespace

ClassifiedFilter classify_filter(const TernaryOperator& op, const Filter& f) {
    const Algebra& alg = op.algebra();
    if (alg.atoms() > kClosedFilterMaxAtoms)
        throw SizeError(fmt::format("closed-filter sweep is capped at {} atoms", kClosedFilterMaxAtoms));
    if (!alg.contains(f.generator))
        throw InputError(fmt::format("filter generator {} is outside the carrier", f.generator));
    ClassifiedFilter c;
    c.filter = f;
    c.is_closed = closed_full(op, f.generator);
    c.closed_by_reduction = closed_su_mid(op, f.generator);
    c.is_modal = f.contains(mu(op, f.generator));
    c.is_modal_sweep = true;
    for (Element a = 0; a <= alg.top(); ++a)
        if (f.contains(a) && !f.contains(mu(op, a)))
            c.is_modal_sweep = false;
    return c;
}

std::vector<ClassifiedFilter> all_filters_classified(const TernaryOperator& op) {
    std::vector<ClassifiedFilter> out;
    for (Element g = 0; g <= op.algebra().top(); ++g)
        out.push_back(classify_filter(op, Filter{g}));
    return out;
}

std::size_t Congruence::block_count() const {
    return block.empty() ? 0 : *std::ranges::max_element(block) + 1;
}

Congruence make_partition(const Algebra& alg, std::vector<unsigned> labels) {
    if (labels.size() != alg.size())
        throw InputError(fmt::format("partition has {} labels, expected {}", labels.size(), alg.size()));
    std::map<unsigned, unsigned> ids;
    for (auto& l : labels)
        l = ids.emplace(l, ids.size()).first->second;
    return Congruence{std::move(labels)};
}

Congruence identity_congruence(const Algebra& alg) {
    std::vector<unsigned> l(alg.size());
    std::iota(l.begin(), l.end(), 0U);
    return Congruence{l};
}

Congruence full_congruence(const Algebra& alg) { return Congruence{std::vector<unsigned>(alg.size(), 0)}; }

Congruence congruence_from_filter(const Algebra& alg, const Filter& f) {
    std::vector<unsigned> l;
    for (Element a = 0; a <= alg.top(); ++a)
        l.push_back(a & f.generator);
    return make_partition(alg, std::move(l));
}

bool is_boolean_compatible(const Algebra& alg, const Congruence& theta) {
    if (theta.block.size() != alg.size())
        return false;
    const Element n = static_cast<Element>(alg.size());
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
            if (!theta.related(a, b))
                continue;
            if (!theta.related(alg.neg(a), alg.neg(b)))
                return false;
            for (Element c = 0; c < n; ++c)
                if (!theta.related(a | c, b | c) || !theta.related(a & c, b & c))
                    return false;
        }
    return true;
}

Filter filter_from_congruence(const Algebra& alg, const Congruence& theta) {
    if (!is_boolean_compatible(alg, theta))
        throw InputError("partition is not a congruence of the Boolean reduct");
    Element g = alg.top();
    for (Element a = 0; a <= alg.top(); ++a)
        if (theta.related(a, alg.top()))
            g &= a;
    return Filter{g};
}

bool is_diamond_compatible(const TernaryOperator& op, const Congruence& theta) {
    const Element n = static_cast<Element>(op.n());
    // Class representatives per element suffice: compare against the first
    // element of each block coordinatewise.
    std::vector<Element> rep(n);
    std::map<unsigned, Element> first;
    for (Element a = 0; a < n; ++a)
        rep[a] = first.emplace(theta.block[a], a).first->second;
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element c = 0; c < n; ++c)
                if (!theta.related(op(a, b, c), op(rep[a], rep[b], rep[c])))
                    return false;
    return true;
}

std::vector<Congruence> congruences(const TernaryOperator& op) {
    std::vector<Congruence> out;
    for (const auto& cf : all_filters_classified(op))
        if (cf.is_closed)
            out.push_back(congruence_from_filter(op.algebra(), cf.filter));
    return out;
}

bool is_simple(const TernaryOperator& op) {
    require_psi(op, "is_simple");
    const Element top = op.algebra().top();
    for (const auto& cf : all_filters_classified(op))
        if (cf.is_closed && cf.filter.generator != 0 && cf.filter.generator != top)
            return false;
    return true;
}

bool is_subdirectly_irreducible(const TernaryOperator& op) {
    require_psi(op, "is_subdirectly_irreducible");
    const Element top = op.algebra().top();
    std::vector<Filter> nontrivial;
    for (const auto& cf : all_filters_classified(op))
        if (cf.is_closed && cf.filter.generator != top)
            nontrivial.push_back(cf.filter);
    return std::ranges::any_of(nontrivial, [&](const Filter& m) {
        return std::ranges::all_of(nontrivial, [&](const Filter& f) { return m.subset_of(f); });
    });
}

CheckReport relational_iff_simple_strict_check(const TernaryOperator& op) {
    require_psi(op, "relational_iff_simple_strict_check");
    CheckReport r{"relational-iff-simple-strict", true, {}};
    const bool rel = is_relational(op).relational;
    const bool simple = is_simple(op);
    const bool strict = check_strict(op).all_passed();
    r.add("relational", rel);
    r.add("simple", simple);
    r.add("strict", strict);
    r.add("equivalence", rel == (simple && strict));
    return r;
}

CheckReport variety_spot_checks(std::span<const TernaryOperator> ops) {
    for (const auto& op : ops) {
        require_psi(op, "variety_spot_checks");
        const auto s = check_strict(op);
        if (!s.all_passed())
            throw PreconditionError("variety_spot_checks requires strict operators\n" + format_report(s));
    }
    CheckReport r{"variety", true, {}};
    std::optional<W> perm_fail, dist_fail, cep_fail;
    bool cep_skipped = false;
    for (std::uint32_t i = 0; i < ops.size(); ++i) {
        const auto& op = ops[i];
        const Algebra& alg = op.algebra();
        const auto cons = congruences(op);
        std::vector<Matrix> mats;
        for (const auto& c : cons)
            mats.push_back(as_matrix(c));
        for (std::uint32_t x = 0; x < cons.size() && !perm_fail; ++x)
            for (std::uint32_t y = 0; y < cons.size() && !perm_fail; ++y)
                if (compose(mats[x], mats[y]) != compose(mats[y], mats[x]))
                    perm_fail = W{i, x, y};
        for (std::uint32_t x = 0; x < cons.size() && !dist_fail; ++x)
            for (std::uint32_t y = 0; y < cons.size() && !dist_fail; ++y)
                for (std::uint32_t z = 0; z < cons.size() && !dist_fail; ++z) {
                    const auto lhs = partition_meet(cons[x], partition_join(cons[y], cons[z]));
                    const auto rhs = partition_join(partition_meet(cons[x], cons[y]), partition_meet(cons[x], cons[z]));
                    if (lhs != rhs)
                        dist_fail = W{i, x, y, z};
                }
        if (alg.atoms() > 2) {
            cep_skipped = true;
            continue;
        }
        const Element n = static_cast<Element>(alg.size());
        for (std::uint32_t sub = 0; sub < (1U << n) && !cep_fail; ++sub) {
            auto in = [&](Element a) { return ((sub >> a) & 1U) != 0; };
            if (!in(0) || !in(alg.top()))
                continue;
            std::vector<Element> elems;
            for (Element a = 0; a < n; ++a)
                if (in(a))
                    elems.push_back(a);
            bool closed = true;
            for (Element a : elems) {
                closed = closed && in(alg.neg(a));
                for (Element b : elems) {
                    closed = closed && in(a | b) && in(a & b);
                    for (Element c : elems)
                        closed = closed && in(op(a, b, c));
                }
            }
            if (!closed)
                continue;
            std::vector<std::vector<unsigned>> parts;
            std::vector<unsigned> cur;
            partitions(elems.size(), cur, 0, parts);
            std::vector<int> pos(n, -1);
            for (std::size_t j = 0; j < elems.size(); ++j)
                pos[elems[j]] = static_cast<int>(j);
            for (std::uint32_t pi = 0; pi < parts.size() && !cep_fail; ++pi) {
                const auto& p = parts[pi];
                auto rel = [&](Element a, Element b) { return p[pos[a]] == p[pos[b]]; };
                bool compatible = true;
                for (Element a : elems)
                    for (Element b : elems) {
                        if (!rel(a, b))
                            continue;
                        compatible = compatible && rel(alg.neg(a), alg.neg(b));
                        for (Element c : elems) {
                            compatible = compatible && rel(a | c, b | c) && rel(a & c, b & c);
                            for (Element d : elems)
                                compatible = compatible && rel(op(a, c, d), op(b, c, d)) &&
                                             rel(op(c, a, d), op(c, b, d)) && rel(op(c, d, a), op(c, d, b));
                        }
                    }
                if (!compatible)
                    continue;
                const bool extends = std::ranges::any_of(cons, [&](const Congruence& theta) {
                    for (Element a : elems)
                        for (Element b : elems)
                            if (theta.related(a, b) != rel(a, b))
                                return false;
                    return true;
                });
                if (!extends)
                    cep_fail = W{i, sub, pi};
            }
        }
    }
    detail::record(r, "permutable", perm_fail, {"op", "theta", "delta"});
    detail::record(r, "distributive", dist_fail, {"op", "theta", "delta", "eps"});
    detail::record(r, "CEP", cep_fail, {"op", "subalgebra", "partition"});
    if (cep_skipped)
        r.results.back().note = "extension property only checked on algebras with at most 2 atoms";
    return r;
}

} // namespace psiforge
