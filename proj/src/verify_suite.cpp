#include "psiforge/verify_suite.hpp"

#include "psiforge/contact_relation.hpp"
#include "psiforge/duality_frames.hpp"
#include "psiforge/enumerate.hpp"
#include "psiforge/errors.hpp"
#include "psiforge/filter_congruence.hpp"
#include "psiforge/morphisms.hpp"
#include "psiforge/term.hpp"
#include "psiforge/ternary_operator.hpp"
#include "psiforge/topo_models.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include <fmt/format.h>

namespace psiforge {

bool SuiteResult::all_passed() const {
    return std::ranges::all_of(rows, [](const SuiteRow& r) { return r.passed; });
}

namespace {

constexpr std::uint64_t kSuiteSeed = 0xEC0;
constexpr std::size_t kRandomRelationsK2 = 2000;
constexpr std::size_t kMorphismCap = 1000;
constexpr std::size_t kCompositionCap = 4000;

struct Level {
    Algebra alg;
    std::vector<TernaryRelation> ecas;      // labeled
    std::vector<TernaryOperator> psi;       // every PSI operator
    std::vector<TernaryOperator> relational;
    std::vector<TernaryOperator> bamo;      // 3BAMO pool for the duality rows
};

Level make_level(unsigned k) {
    Level l{make_algebra(k), {}, {}, {}, {}};
    EnumerationOptions opt;
    opt.up_to_iso = false;
    l.ecas = enumerate_ecas(l.alg, opt).relations;
    l.psi = psi_operators_atomwise(l.alg);
    for (const auto& r : l.ecas)
        l.relational.push_back(rel_to_op(r));
    l.bamo = l.psi;
    if (k == 1)
        for (const auto& op : enumerate_operators(l.alg, builtin_axioms("3bamo"), OperatorMode::Exhaustive).operators)
            l.bamo.push_back(op);
    if (k == 2)
        l.bamo.push_back(example_3bamo());
    return l;
}

// Runs `check` on every item; the detail is the item count or the first
// failure's description.
template <class T>
SuiteRow over(std::string id, const std::vector<T>& items, const std::function<std::string(const T&)>& check,
              const std::string& what) {
    for (std::size_t i = 0; i < items.size(); ++i) {
        std::string fail = check(items[i]);
        if (!fail.empty())
            return {std::move(id), false, fmt::format("{} #{}: {}", what, i, fail)};
    }
    return {std::move(id), true, fmt::format("{} {}", items.size(), what)};
}

std::string failing(const CheckReport& r) {
    for (const auto& x : r.results)
        if (!x.passed)
            return x.witness.empty() ? x.id : fmt::format("{} {}", x.id, format_tuple(x.witness));
    return {};
}

TernaryRelation random_relation(const Algebra& alg, std::mt19937_64& rng) {
    const std::size_t n = alg.size();
    Bits b(n * n * n);
    // Mostly-true relations hit the ECAs' neighbourhood more often than
    // uniform ones.
    std::bernoulli_distribution dense(0.85);
    for (std::size_t i = 0; i < b.size(); ++i)
        b[i] = dense(rng);
    return TernaryRelation(alg, std::move(b));
}

struct OpHom {
    std::size_t src_level, dst_level;
    BooleanHom h;
    std::size_t src_op, dst_op;
};

} // namespace

SuiteResult verify_suite(unsigned k) {
    if (k == 0 || k > kMaxSuiteAtoms)
        throw SizeError(fmt::format("verify-suite supports k = 1..{}, got {}", kMaxSuiteAtoms, k));
    SuiteResult out;
    out.k = k;
    std::vector<Level> levels;
    for (unsigned j = 1; j <= k; ++j)
        levels.push_back(make_level(j));
    auto& rows = out.rows;

    std::vector<TernaryRelation> ecas;
    std::vector<TernaryOperator> psi, relational, bamo;
    for (const auto& l : levels) {
        ecas.insert(ecas.end(), l.ecas.begin(), l.ecas.end());
        psi.insert(psi.end(), l.psi.begin(), l.psi.end());
        relational.insert(relational.end(), l.relational.begin(), l.relational.end());
        bamo.insert(bamo.end(), l.bamo.begin(), l.bamo.end());
    }

    {
        // k = 1 oracle: brute force over every relation table.
        const Algebra a1 = make_algebra(1);
        std::vector<TernaryRelation> brute;
        for (unsigned code = 0; code < 256; ++code) {
            Bits b(8);
            for (unsigned i = 0; i < 8; ++i)
                b[i] = (code >> i) & 1U;
            TernaryRelation r(a1, std::move(b));
            if (check_eca(r).all_passed())
                brute.push_back(std::move(r));
        }
        std::ranges::sort(brute, [](const auto& x, const auto& y) { return x.bits() < y.bits(); });
        auto found = levels[0].ecas;
        std::ranges::sort(found, [](const auto& x, const auto& y) { return x.bits() < y.bits(); });
        rows.push_back({"enumeration-oracle", brute == found,
                        fmt::format("k=1: {} ECAs by search, {} by brute force", found.size(), brute.size())});
    }
    {
        std::size_t tried = 0;
        std::string fail;
        auto agree = [&](const TernaryRelation& r) {
            ++tried;
            const bool e = check_eca(r).all_passed();
            const bool x = check_extca(r).all_passed();
            if (e != x && fail.empty())
                fail = fmt::format("relation #{}: eca={} extca={}", tried, e, x);
        };
        const Algebra a1 = make_algebra(1);
        for (unsigned code = 0; code < 256; ++code) {
            Bits b(8);
            for (unsigned i = 0; i < 8; ++i)
                b[i] = (code >> i) & 1U;
            agree(TernaryRelation(a1, std::move(b)));
        }
        if (k >= 2) {
            std::mt19937_64 rng(kSuiteSeed);
            for (std::size_t i = 0; i < kRandomRelationsK2; ++i)
                agree(random_relation(levels[1].alg, rng));
            for (const auto& r : levels[1].ecas)
                agree(r);
        }
        rows.push_back({"eca-iff-extca", fail.empty(), fail.empty() ? fmt::format("{} relations", tried) : fail});
    }

    rows.push_back(over<TernaryRelation>(
        "translation-round-trip", ecas,
        [](const TernaryRelation& r) { return op_to_rel(rel_to_op(r)) == r ? "" : std::string("op_to_rel(rel_to_op(r)) != r"); },
        "ECAs"));
    rows.push_back(over<TernaryOperator>(
        "translation-image-psi", relational,
        [](const TernaryOperator& op) {
            if (auto f = failing(check_psi(op)); !f.empty())
                return f;
            if (!is_relational(op).relational)
                return std::string("not relational");
            return rel_to_op(op_to_rel(op)) == op ? std::string() : std::string("rel_to_op(op_to_rel(op)) != op");
        },
        "operators"));
    {
        std::string fail;
        for (const auto& l : levels) {
            std::vector<TernaryOperator> rel_psi;
            for (const auto& op : l.psi)
                if (is_relational(op).relational)
                    rel_psi.push_back(op);
            const auto r = posets_dual_iso_check(l.ecas, rel_psi);
            if (fail.empty() && !r.all_passed())
                fail = fmt::format("k={}: {}", l.alg.atoms(), failing(r));
        }
        rows.push_back({"posets-dually-isomorphic", fail.empty(), fail.empty() ? "ECAs vs relational PSI" : fail});
    }
    rows.push_back(over<TernaryOperator>(
        "relational-is-strict", relational, [](const TernaryOperator& op) { return failing(check_strict(op)); },
        "operators"));
    rows.push_back(over<TernaryOperator>(
        "relational-is-simple", relational,
        [](const TernaryOperator& op) { return is_simple(op) ? std::string() : std::string("not simple"); },
        "operators"));
    rows.push_back(over<TernaryOperator>(
        "discriminator", relational, [](const TernaryOperator& op) { return failing(discriminator_check(op)); },
        "operators"));
    rows.push_back(over<TernaryOperator>(
        "relational-iff-simple-strict", psi,
        [](const TernaryOperator& op) {
            const auto r = relational_iff_simple_strict_check(op);
            return r.passed("equivalence") ? std::string() : r.at("equivalence").note;
        },
        "PSI operators"));
    rows.push_back(over<TernaryOperator>(
        "mu-properties", psi, [](const TernaryOperator& op) { return failing(check_mu_properties(op)); },
        "PSI operators"));
    rows.push_back(over<TernaryOperator>(
        "s-consequences", psi,
        [](const TernaryOperator& op) {
            return check_strict(op).passed("S") ? failing(check_s_consequences(op)) : std::string();
        },
        "PSI operators"));
    rows.push_back(over<TernaryOperator>(
        "pi2-forms", bamo,
        [](const TernaryOperator& op) {
            const auto r = check_pi2_equivalents(op);
            return r.passed("agreement") ? std::string() : std::string("forms disagree");
        },
        "3BAMOs"));

    {
        std::string closed_modal, modal_closed, su_mid, round_trip;
        std::size_t filters = 0;
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const auto& op = psi[i];
            const auto strict = check_strict(op);
            const bool r1r2 = strict.passed("R1") && strict.passed("R2");
            for (const auto& f : all_filters_classified(op)) {
                ++filters;
                const auto g = f.filter.generator;
                if (f.is_closed && !f.is_modal && closed_modal.empty())
                    closed_modal = fmt::format("op #{} filter [{})", i, g);
                if (r1r2 && f.is_modal && !f.is_closed && modal_closed.empty())
                    modal_closed = fmt::format("op #{} filter [{})", i, g);
                if (f.is_closed != f.closed_by_reduction && su_mid.empty())
                    su_mid = fmt::format("op #{} filter [{})", i, g);
                const auto& alg = op.algebra();
                if (filter_from_congruence(alg, congruence_from_filter(alg, f.filter)) != f.filter &&
                    round_trip.empty())
                    round_trip = fmt::format("op #{} filter [{})", i, g);
            }
        }
        const std::string n = fmt::format("{} filters", filters);
        rows.push_back({"closed-implies-modal", closed_modal.empty(), closed_modal.empty() ? n : closed_modal});
        rows.push_back({"modal-implies-closed-r1r2", modal_closed.empty(), modal_closed.empty() ? n : modal_closed});
        rows.push_back({"su-mid-iff-closed", su_mid.empty(), su_mid.empty() ? n : su_mid});
        rows.push_back({"filter-congruence-round-trip", round_trip.empty(), round_trip.empty() ? n : round_trip});
    }

    rows.push_back(over<TernaryOperator>(
        "dual-frame-is-psi-frame", bamo,
        [](const TernaryOperator& op) { return failing(check_psi_frame(dual_frame(op))); }, "3BAMOs"));
    rows.push_back(over<TernaryOperator>(
        "stone-commutation", bamo, [](const TernaryOperator& op) { return failing(stone_commutation_check(op)); },
        "3BAMOs"));
    rows.push_back(over<TernaryOperator>(
        "pi-iff-pif", bamo,
        [](const TernaryOperator& op) {
            const auto alg_side = check_psi(op);
            const auto top_side = check_psi_space(dual_frame(op));
            for (int i = 1; i <= 4; ++i)
                if (alg_side.passed(fmt::format("PI{}", i)) != top_side.passed(fmt::format("PIF{}", i)))
                    return fmt::format("PI{} and PIF{} disagree", i, i);
            return std::string();
        },
        "3BAMOs"));
    rows.push_back(over<TernaryOperator>(
        "double-dual", bamo, [](const TernaryOperator& op) { return failing(double_dual_check(op)); }, "3BAMOs"));
    rows.push_back(over<TernaryOperator>(
        "total-iff-relational", psi,
        [](const TernaryOperator& op) {
            return is_total(dual_frame(op)).total == is_relational(op).relational ? std::string()
                                                                                  : std::string("verdicts differ");
        },
        "PSI operators"));

    if (k >= 2) {
        const auto op = example_3bamo();
        const auto r = check_psi(op);
        const bool ok = check_3bamo(op).all_passed() && !r.passed("PI1") &&
                        r.at("PI1").witness == std::vector<std::uint32_t>{1, 1, 3, 1, 2} && r.passed("PI2") &&
                        r.passed("PI3") && r.passed("PI4");
        rows.push_back({"example-3bamo", ok, fmt::format("PI1 witness {}", format_tuple(r.at("PI1").witness))});
    }

    {
        const std::vector<PointSet> basis{0b001, 0b100};
        const auto t = eca_from_topology(make_topology(3, basis));
        const auto& rc = t.rc;
        const Element x = rc.to_element(0b011), y = rc.to_element(0b110);
        bool ok = rc.elements().size() == 4 && rc.meet(0b011, 0b110) == 0 && !t.rel.contains(x, y, 0);
        std::mt19937_64 rng(kSuiteSeed);
        std::size_t samples = 0;
        for (; samples < 100 && ok; ++samples)
            ok = check_eca(eca_from_topology(random_topology(rng)).rel).all_passed();
        rows.push_back({"topological-eca", ok, fmt::format("3-point space plus {} random spaces", samples)});
    }

    {
        std::string contact;
        for (const auto& r : ecas) {
            const auto d = check_derived_eca_props(r);
            const auto c = characteristic_lemma_check(r);
            if (contact.empty() && !d.all_passed())
                contact = failing(d);
            if (contact.empty() && !c.all_passed())
                contact = failing(c);
            if (contact.empty() && !r.subset_of(largest_eca(r.algebra())))
                contact = "not below the largest ECA";
            (void)contact_from_eca(r);
        }
        rows.push_back({"eca-consequences", contact.empty(),
                        contact.empty() ? fmt::format("{} ECAs", ecas.size()) : contact});
    }

    {
        // Every (hom, operator pair) between PSI algebras of the levels.
        std::vector<OpHom> combos;
        for (std::size_t s = 0; s < levels.size(); ++s)
            for (std::size_t t = 0; t < levels.size(); ++t)
                for (const auto& h : all_homs(levels[s].alg, levels[t].alg))
                    for (std::size_t i = 0; i < levels[s].psi.size(); ++i)
                        for (std::size_t j = 0; j < levels[t].psi.size(); ++j)
                            combos.push_back({s, t, h, i, j});
        const std::size_t total = combos.size();
        if (combos.size() > kMorphismCap) {
            std::vector<std::size_t> idx(combos.size());
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            std::mt19937_64 rng(kSuiteSeed);
            std::ranges::shuffle(idx, rng);
            idx.resize(kMorphismCap);
            std::ranges::sort(idx);
            std::vector<OpHom> kept;
            for (auto i : idx)
                kept.push_back(combos[i]);
            combos = std::move(kept);
        }
        std::string fail;
        for (const auto& c : combos) {
            const auto r = morphism_duality_check(c.h, levels[c.src_level].psi[c.src_op], levels[c.dst_level].psi[c.dst_op]);
            if (!r.all_passed()) {
                fail = failing(r);
                break;
            }
        }
        rows.push_back({"morphism-duality", fail.empty(),
                        fail.empty() ? fmt::format("{} of {} combinations", combos.size(), total) : fail});
    }

    {
        std::string fail;
        std::size_t n = 0;
        for (const auto& ls : levels)
            for (const auto& lt : levels)
                for (const auto& h : all_homs(ls.alg, lt.alg))
                    for (const auto& rs : ls.ecas)
                        for (const auto& rt : lt.ecas) {
                            ++n;
                            const auto c = classify_eca_morphism(h, rs, rt);
                            if (fail.empty() && !c.equivalences.all_passed())
                                fail = failing(c.equivalences);
                            if (fail.empty() && rt == largest_eca(lt.alg) && !c.preserving)
                                fail = "hom into the largest ECA is not preserving";
                        }
        rows.push_back({"eca-morphisms", fail.empty(), fail.empty() ? fmt::format("{} combinations", n) : fail});
    }

    {
        // Composites of semi / hemi / full morphisms, and contravariance of
        // the dual point maps.
        std::string fail;
        std::size_t n = 0;
        std::mt19937_64 rng(kSuiteSeed);
        for (std::size_t step = 0; step < kCompositionCap && fail.empty(); ++step) {
            std::uniform_int_distribution<std::size_t> lv(0, levels.size() - 1);
            const auto& la = levels[lv(rng)];
            const auto& lb = levels[lv(rng)];
            const auto& lc = levels[lv(rng)];
            const auto h1s = all_homs(la.alg, lb.alg);
            const auto h2s = all_homs(lb.alg, lc.alg);
            auto pick = [&](const auto& v) -> const auto& {
                std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
                return v[d(rng)];
            };
            const auto& h1 = pick(h1s);
            const auto& h2 = pick(h2s);
            const auto& oa = pick(la.psi);
            const auto& ob = pick(lb.psi);
            const auto& oc = pick(lc.psi);
            ++n;
            const auto c1 = classify_psi_morphism(h1, oa, ob);
            const auto c2 = classify_psi_morphism(h2, ob, oc);
            const BooleanHom h = compose(h2, h1);
            const auto c = classify_psi_morphism(h, oa, oc);
            if ((c1.semi && c2.semi && !c.semi) || (c1.hemi && c2.hemi && !c.hemi) || (c1.full && c2.full && !c.full))
                fail = fmt::format("composite of sample {} loses a class", n);
            PointMap expect;
            for (unsigned t : hom_dual(h2))
                expect.push_back(hom_dual(h1)[t]);
            if (fail.empty() && hom_dual(h) != expect)
                fail = fmt::format("dual of composite differs at sample {}", n);
            if (fail.empty() && c1.full && h1.is_bijective()) {
                const auto inv = inverse(h1);
                if (!inv || !classify_psi_morphism(*inv, ob, oa).full)
                    fail = fmt::format("inverse of bijective hom at sample {} is not full", n);
            }
        }
        rows.push_back({"morphism-composition", fail.empty(),
                        fail.empty() ? fmt::format("{} sampled composites", n) : fail});
    }

    {
        const auto s = search_pif2_separation(bamo, 200, kSuiteSeed);
        rows.push_back({"ecua-rem-separation", true,
                        s.separating ? fmt::format("separating frame found among {} frames", s.frames_examined)
                                     : fmt::format("no separating frame among {} frames ({} pass PIF2)",
                                                   s.frames_examined, s.frames_passing_pif2)});
    }
    return out;
}

std::string format_scoreboard(const SuiteResult& r) {
    std::string out = fmt::format("verify-suite k={}\n", r.k);
    std::size_t passed = 0;
    for (const auto& row : r.rows) {
        passed += row.passed;
        out += fmt::format("  {:<30} {}  {}\n", row.id, row.passed ? "PASS" : "FAIL", row.detail);
    }
    out += fmt::format("{}/{} passed\n", passed, r.rows.size());
    return out;
}

} // namespace psiforge
