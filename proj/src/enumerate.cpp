#include "psiforge/enumerate.hpp"

#include "psiforge/errors.hpp"
#include "sweep.hpp"

#include <algorithm>
#include <bit>
#include <atomic>
#include <deque>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include <fmt/format.h>

namespace psiforge {

namespace {

using Clock = std::chrono::steady_clock;

std::string bit_key(const Bits& b) {
    std::string s(b.size(), '0');
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i])
            s[i] = '1';
    return s;
}

// Horn-propagation state for the ECA search. Per (a, b) pair, `yes` and
// `no` hold the masks of c decided true / false.
class EcaState {
  public:
    explicit EcaState(const Algebra& alg)
        : n_(static_cast<Element>(alg.size())), yes_(std::size_t{n_} * n_, 0), no_(std::size_t{n_} * n_, 0) {}

    // EC2 seeds and EC3 negative units. Returns false on conflict.
    bool seed() {
        for (Element a = 0; a < n_; ++a)
            for (Element f = 0; f < n_; ++f)
                if (!detail::leq(a, f) && !assert_false(a, a, f))
                    return false;
        for (Element a = 0; a < n_; ++a)
            for (Element b = 0; b < n_; ++b)
                for (Element f = 0; f < n_; ++f)
                    if (!assert_true(a, b, a | f))
                        return false;
        return propagate();
    }

    // First undecided triple in index order.
    std::optional<std::array<Element, 3>> undecided() const {
        for (Element a = 0; a < n_; ++a)
            for (Element b = 0; b < n_; ++b) {
                const std::uint32_t open = full() & ~(yes(a, b) | no(a, b));
                if (open)
                    return std::array<Element, 3>{a, b, static_cast<Element>(std::countr_zero(open))};
            }
        return std::nullopt;
    }

    bool decide(const std::array<Element, 3>& t, bool value) {
        if (value ? !assert_true(t[0], t[1], t[2]) : !assert_false(t[0], t[1], t[2]))
            return false;
        return propagate();
    }

    Bits relation_bits() const {
        Bits out(std::size_t{n_} * n_ * n_);
        for (Element a = 0; a < n_; ++a)
            for (Element b = 0; b < n_; ++b)
                for (Element c = 0; c < n_; ++c)
                    if ((yes(a, b) >> c) & 1U)
                        out[(std::size_t{a} * n_ + b) * n_ + c] = true;
        return out;
    }

  private:
    std::uint32_t full() const { return static_cast<std::uint32_t>((std::uint64_t{1} << n_) - 1); }
    std::uint32_t& yes(Element a, Element b) { return yes_[std::size_t{a} * n_ + b]; }
    std::uint32_t& no(Element a, Element b) { return no_[std::size_t{a} * n_ + b]; }
    std::uint32_t yes(Element a, Element b) const { return yes_[std::size_t{a} * n_ + b]; }
    std::uint32_t no(Element a, Element b) const { return no_[std::size_t{a} * n_ + b]; }

    bool assert_true(Element a, Element b, Element c) {
        const std::uint32_t bit = 1U << c;
        if (no(a, b) & bit)
            return false;
        if (!(yes(a, b) & bit)) {
            yes(a, b) |= bit;
            pos_.push_back({a, b, c});
        }
        return true;
    }

    bool assert_false(Element a, Element b, Element c) {
        const std::uint32_t bit = 1U << c;
        if (yes(a, b) & bit)
            return false;
        if (!(no(a, b) & bit)) {
            no(a, b) |= bit;
            neg_.push_back({a, b, c});
        }
        return true;
    }

    bool propagate() {
        while (!pos_.empty() || !neg_.empty()) {
            if (!pos_.empty()) {
                const auto [a, b, c] = pos_.back();
                pos_.pop_back();
                if (!forward(a, b, c))
                    return false;
            } else {
                const auto [a, b, c] = neg_.back();
                neg_.pop_back();
                if (!backward(a, b, c))
                    return false;
            }
        }
        return true;
    }

    // Consequences of a true triple under EC4, EC0 and EC1.
    bool forward(Element a, Element b, Element c) {
        if (!assert_true(b, a, c))
            return false;
        for (Element d = 0; d < n_; ++d)
            if (!assert_true(a | d, b, c | d))
                return false;
        // (a,b,c) as the first premise (a,b,d) of EC1, then as the second.
        for (std::uint32_t es = yes(a, b); es; es &= es - 1) {
            const auto e = static_cast<Element>(std::countr_zero(es));
            for (std::uint32_t fs = yes(c, e) | yes(e, c); fs; fs &= fs - 1)
                if (!assert_true(a, b, static_cast<Element>(std::countr_zero(fs))))
                    return false;
        }
        // (a,b,c) as the third premise (d,e,f).
        const std::uint32_t need = (1U << a) | (1U << b);
        for (Element x = 0; x < n_; ++x)
            for (Element y = 0; y < n_; ++y)
                if ((yes(x, y) & need) == need && !assert_true(x, y, c))
                    return false;
        return true;
    }

    // Contrapositives of EC4 and EC0 for a false triple.
    bool backward(Element a, Element b, Element c) {
        if (!assert_false(b, a, c))
            return false;
        for (Element x = 0; x < n_; ++x) {
            if (!detail::leq(x, a))
                continue;
            for (Element z = 0; z < n_; ++z) {
                if (!detail::leq(z, c))
                    continue;
                // Some d with x | d = a and z | d = c exists iff the forced
                // part (a - x) | (c - z) fits inside a & c.
                if (detail::leq((a & ~x) | (c & ~z), a & c) && !assert_false(x, b, z))
                    return false;
            }
        }
        return true;
    }

    Element n_;
    std::vector<std::uint32_t> yes_;
    std::vector<std::uint32_t> no_;
    std::vector<std::array<Element, 3>> pos_;
    std::vector<std::array<Element, 3>> neg_;
};

struct SearchShared {
    Clock::time_point deadline = Clock::time_point::max();
    std::atomic<bool> timed_out{false};
    std::atomic<std::size_t> nodes{0};
};

void dfs(EcaState s, SearchShared& shared, std::vector<Bits>& out) {
    ++shared.nodes;
    if (shared.timed_out.load(std::memory_order_relaxed))
        return;
    if (Clock::now() > shared.deadline) {
        shared.timed_out = true;
        return;
    }
    const auto t = s.undecided();
    if (!t) {
        out.push_back(s.relation_bits());
        return;
    }
    EcaState yes = s;
    if (yes.decide(*t, true))
        dfs(std::move(yes), shared, out);
    if (s.decide(*t, false))
        dfs(std::move(s), shared, out);
}

// Splits the search tree breadth-first, keeping left-to-right order, until
// there are enough cubes to keep the workers busy.
std::vector<EcaState> make_cubes(EcaState root, std::size_t want, std::vector<Bits>& solved) {
    std::deque<EcaState> q{std::move(root)};
    for (unsigned depth = 0; depth < 12 && q.size() < want; ++depth) {
        std::deque<EcaState> next;
        while (!q.empty()) {
            EcaState s = std::move(q.front());
            q.pop_front();
            const auto t = s.undecided();
            if (!t) {
                solved.push_back(s.relation_bits());
                continue;
            }
            EcaState yes = s;
            if (yes.decide(*t, true))
                next.push_back(std::move(yes));
            if (s.decide(*t, false))
                next.push_back(std::move(s));
        }
        q = std::move(next);
    }
    return {std::make_move_iterator(q.begin()), std::make_move_iterator(q.end())};
}

} // namespace

TernaryRelation canonical_relation(const TernaryRelation& rel) {
    TernaryRelation best = rel;
    std::string best_key = bit_key(rel.bits());
    for (const auto& p : automorphisms(rel.algebra())) {
        if (p.is_identity())
            continue;
        TernaryRelation q = permute(rel, p);
        std::string key = bit_key(q.bits());
        if (key < best_key) {
            best_key = std::move(key);
            best = std::move(q);
        }
    }
    return best;
}

TernaryOperator canonical_operator(const TernaryOperator& op) {
    TernaryOperator best = op;
    for (const auto& p : automorphisms(op.algebra())) {
        if (p.is_identity())
            continue;
        TernaryOperator q = permute(op, p);
        if (q.table() < best.table())
            best = std::move(q);
    }
    return best;
}

EcaEnumeration enumerate_ecas(const Algebra& alg, const EnumerationOptions& options) {
    if (alg.atoms() > kMaxEcaAtoms)
        throw SizeError(fmt::format("ECA enumeration is capped at {} atoms, got {}", kMaxEcaAtoms, alg.atoms()));
    SearchShared shared;
    auto budget = options.budget;
    if (!budget && alg.atoms() == 3)
        budget = kDefaultEcaBudgetK3;
    if (budget)
        shared.deadline = Clock::now() + *budget;

    EcaEnumeration result;
    EcaState root(alg);
    if (!root.seed())
        throw InternalError("EC2 seeds contradict EC3 negative units");

    std::vector<Bits> models;
    const unsigned threads = std::max(1U, options.threads);
    if (threads == 1) {
        dfs(std::move(root), shared, models);
    } else {
        auto cubes = make_cubes(std::move(root), std::size_t{threads} * 8, models);
        std::vector<std::vector<Bits>> found(cubes.size());
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < cubes.size(); i = next++)
                    dfs(std::move(cubes[i]), shared, found[i]);
            });
        for (auto& th : pool)
            th.join();
        for (auto& f : found)
            models.insert(models.end(), std::make_move_iterator(f.begin()), std::make_move_iterator(f.end()));
    }
    result.nodes = shared.nodes;
    result.complete = !shared.timed_out;

    std::set<std::string> seen;
    std::vector<std::pair<std::string, TernaryRelation>> keyed;
    for (auto& m : models) {
        TernaryRelation r(alg, std::move(m));
        if (options.up_to_iso)
            r = canonical_relation(r);
        std::string key = bit_key(r.bits());
        if (seen.insert(key).second)
            keyed.emplace_back(std::move(key), std::move(r));
    }
    std::ranges::sort(keyed, {}, &std::pair<std::string, TernaryRelation>::first);
    for (auto& [key, r] : keyed)
        result.relations.push_back(std::move(r));
    return result;
}

namespace {

bool satisfies(const TernaryOperator& op, const std::vector<NamedSentence>& axioms) {
    return std::ranges::all_of(axioms, [&](const NamedSentence& s) { return holds(s.sentence, op).holds; });
}

void sort_unique(std::vector<TernaryOperator>& ops) {
    std::ranges::sort(ops, [](const TernaryOperator& x, const TernaryOperator& y) { return x.table() < y.table(); });
    ops.erase(std::unique(ops.begin(), ops.end()), ops.end());
}

bool pruned(const Algebra& alg, const std::vector<NamedSentence>& axioms, const std::vector<std::int16_t>& table) {
    return std::ranges::any_of(axioms, [&](const NamedSentence& s) {
        const auto v = holds_partial(s.sentence, alg, table);
        return v.has_value() && !*v;
    });
}

void exhaustive_tables(const Algebra& alg, const std::vector<NamedSentence>& axioms, std::vector<std::int16_t>& table,
                       std::size_t pos, std::vector<TernaryOperator>& out) {
    if (pos == table.size()) {
        std::vector<std::uint8_t> t(table.begin(), table.end());
        TernaryOperator op(alg, std::move(t));
        if (satisfies(op, axioms))
            out.push_back(std::move(op));
        return;
    }
    for (Element v = 0; v < alg.size(); ++v) {
        table[pos] = static_cast<std::int16_t>(v);
        if (!pruned(alg, axioms, table))
            exhaustive_tables(alg, axioms, table, pos + 1, out);
    }
    table[pos] = -1;
}

// Randomized propagation: entries in a shuffled order, values in a shuffled
// order, pruning on decided violations, with a node cap.
bool random_descent(const Algebra& alg, const std::vector<NamedSentence>& axioms, const std::vector<std::size_t>& order,
                    std::vector<std::int16_t>& table, std::size_t pos, std::mt19937_64& rng, std::size_t& nodes) {
    if (++nodes > 4096)
        return false;
    if (pos == order.size())
        return true;
    std::vector<Element> values(alg.size());
    std::iota(values.begin(), values.end(), Element{0});
    std::ranges::shuffle(values, rng);
    for (Element v : values) {
        table[order[pos]] = static_cast<std::int16_t>(v);
        if (!pruned(alg, axioms, table) && random_descent(alg, axioms, order, table, pos + 1, rng, nodes))
            return true;
    }
    table[order[pos]] = -1;
    return false;
}

} // namespace

OperatorEnumeration enumerate_operators(const Algebra& alg, const std::vector<NamedSentence>& axioms,
                                        OperatorMode mode, std::size_t samples, std::optional<std::uint64_t> seed) {
    OperatorEnumeration result;
    const std::size_t cells = alg.size() * alg.size() * alg.size();
    switch (mode) {
    case OperatorMode::Exhaustive: {
        if (alg.atoms() >= 2)
            throw InfeasibleError(fmt::format("exhaustive enumeration of general tables on {} atoms is infeasible "
                                              "({}^{} tables); use relational or sampled mode",
                                              alg.atoms(), alg.size(), cells));
        std::vector<std::int16_t> table(cells, -1);
        exhaustive_tables(alg, axioms, table, 0, result.operators);
        result.label = "exhaustive";
        break;
    }
    case OperatorMode::Relational: {
        for (const auto& r : enumerate_ecas(alg).relations) {
            TernaryOperator op = rel_to_op(r);
            if (satisfies(op, axioms))
                result.operators.push_back(std::move(op));
        }
        result.exhaustive = false;
        result.label = "relational";
        break;
    }
    case OperatorMode::Sampled: {
        std::mt19937_64 rng(seed.value_or(detail::sampling_seed()));
        std::vector<std::size_t> order(cells);
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (std::size_t i = 0; i < samples; ++i) {
            std::ranges::shuffle(order, rng);
            std::vector<std::int16_t> table(cells, -1);
            std::size_t nodes = 0;
            if (random_descent(alg, axioms, order, table, 0, rng, nodes))
                result.operators.emplace_back(alg, std::vector<std::uint8_t>(table.begin(), table.end()));
        }
        result.exhaustive = false;
        result.label = "sampled";
        break;
    }
    }
    for (auto& op : result.operators)
        op = canonical_operator(op);
    sort_unique(result.operators);
    return result;
}

namespace {

// Component check at output atom t; join-preservation in the first two
// coordinates, normality and monotonicity hold by construction.
bool component_is_psi(const TernaryRelation& g, unsigned t) {
    const Algebra& alg = g.algebra();
    const Element n = static_cast<Element>(alg.size());
    const Element tbit = Element{1} << t;
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
            if (g.contains(a, b, alg.neg(a)))
                return false;
            for (Element f = 0; f < n; ++f) {
                if (g.contains(a, b, f) && !g.contains(b, a, f))
                    return false;
                if (a == b && (a & f & tbit) && !g.contains(a, a, f))
                    return false;
            }
        }
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element f = 0; f < n; ++f) {
                if (!g.contains(a, b, f))
                    continue;
                for (Element d = 0; d < n; ++d)
                    for (Element e = 0; e < n; ++e)
                        if (!g.contains(a, b, alg.neg(d)) && !g.contains(a, b, alg.neg(e)) && !g.contains(d, e, f))
                            return false;
            }
    return true;
}

} // namespace

std::vector<PsiComponent> psi_components(const Algebra& alg, unsigned t) {
    if (alg.atoms() > kMaxAtomwiseAtoms)
        throw SizeError(fmt::format("atomwise enumeration is capped at {} atoms, got {}", kMaxAtomwiseAtoms,
                                    alg.atoms()));
    if (t >= alg.atoms())
        throw InputError(fmt::format("{} is not an atom index", t));
    const unsigned k = alg.atoms();
    const Element n = static_cast<Element>(alg.size());
    const unsigned free_bits = k * k * (n - 1);
    auto bit = [&](unsigned i, unsigned j, Element c) { return (i * k + j) * (n - 1) + (c - 1); };
    std::vector<PsiComponent> out;
    for (std::uint32_t code = 0; code < (1U << free_bits); ++code) {
        auto g = [&](unsigned i, unsigned j, Element c) { return c != 0 && ((code >> bit(i, j, c)) & 1U); };
        bool monotone = true;
        for (unsigned i = 0; i < k && monotone; ++i)
            for (unsigned j = 0; j < k && monotone; ++j)
                for (Element c = 1; c < n && monotone; ++c)
                    for (Element d = 1; d < n && monotone; ++d)
                        monotone = !(detail::leq(c, d) && g(i, j, c) && !g(i, j, d));
        if (!monotone)
            continue;
        auto rel = TernaryRelation::from_predicate(alg, [&](Element a, Element b, Element c) {
            for (unsigned i = 0; i < k; ++i)
                for (unsigned j = 0; j < k; ++j)
                    if (((a >> i) & 1U) && ((b >> j) & 1U) && g(i, j, c))
                        return true;
            return false;
        });
        if (component_is_psi(rel, t))
            out.push_back(std::move(rel));
    }
    return out;
}

std::vector<TernaryOperator> psi_operators_atomwise(const Algebra& alg) {
    std::vector<std::vector<PsiComponent>> comps;
    for (unsigned t = 0; t < alg.atoms(); ++t)
        comps.push_back(psi_components(alg, t));
    std::vector<TernaryOperator> out;
    std::vector<std::size_t> pick(alg.atoms(), 0);
    while (true) {
        out.push_back(TernaryOperator::from_function(alg, [&](Element a, Element b, Element c) {
            Element v = 0;
            for (unsigned t = 0; t < alg.atoms(); ++t)
                if (comps[t][pick[t]].contains(a, b, c))
                    v |= Element{1} << t;
            return v;
        }));
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == comps[i].size())
            pick[i++] = 0;
        if (i == pick.size())
            break;
    }
    for (const auto& op : out)
        if (!check_psi(op).all_passed())
            throw InternalError("atomwise assembly produced a non-PSI operator");
    sort_unique(out);
    return out;
}

std::vector<TernaryOperator> sample_psi_operators(const Algebra& alg, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<TernaryOperator> pool{smallest_diamond(alg), rel_to_op(largest_eca(alg))};
    sort_unique(pool);
    const unsigned k = alg.atoms();
    std::bernoulli_distribution coin(0.5);
    for (std::size_t attempt = 0; pool.size() < count && attempt < count * 50; ++attempt) {
        std::optional<TernaryOperator> cand;
        if (coin(rng)) {
            // S[x] for each atom x: x itself plus random others.
            std::vector<Element> image(k);
            for (unsigned x = 0; x < k; ++x) {
                image[x] = Element{1} << x;
                for (unsigned y = 0; y < k; ++y)
                    if (y != x && coin(rng))
                        image[x] |= Element{1} << y;
            }
            cand = TernaryOperator::from_function(alg, [&](Element a, Element b, Element c) {
                Element v = 0;
                for (unsigned x = 0; x < k; ++x)
                    if (((a & b & c) >> x) & 1U)
                        v |= image[x];
                return v;
            });
        } else {
            std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
            cand = pointwise_join(pool[pick(rng)], pool[pick(rng)]);
        }
        if (std::ranges::find(pool, *cand) != pool.end())
            continue;
        if (!check_psi(*cand).all_passed())
            throw InternalError("closure construction produced a non-PSI operator");
        pool.push_back(std::move(*cand));
    }
    return pool;
}

SpaceMembers space_members(const SearchSpace& space) {
    const Algebra alg = make_algebra(space.atoms);
    SpaceMembers m;
    auto refuse = [&](const char* what, unsigned cap) {
        throw InfeasibleError(fmt::format("{} search space is only available for k <= {}, got {}", what, cap,
                                          space.atoms));
    };
    switch (space.kind) {
    case SpaceKind::ThreeBamo:
        if (space.atoms > 1)
            refuse("3bamo", 1);
        m.operators = enumerate_operators(alg, builtin_axioms("3bamo"), OperatorMode::Exhaustive).operators;
        break;
    case SpaceKind::Strict:
        if (space.atoms > 1)
            refuse("strict", 1);
        m.operators = enumerate_operators(alg, builtin_axioms("strict"), OperatorMode::Exhaustive).operators;
        break;
    case SpaceKind::Psi:
        if (space.atoms > kMaxAtomwiseAtoms)
            refuse("psi", kMaxAtomwiseAtoms);
        for (const auto& op : psi_operators_atomwise(alg))
            m.operators.push_back(canonical_operator(op));
        sort_unique(m.operators);
        break;
    case SpaceKind::Relational: {
        if (space.atoms > kMaxEcaAtoms)
            refuse("relational", kMaxEcaAtoms);
        const auto ecas = enumerate_ecas(alg);
        for (const auto& r : ecas.relations)
            m.operators.push_back(canonical_operator(rel_to_op(r)));
        sort_unique(m.operators);
        m.exhaustive = ecas.complete;
        break;
    }
    }
    return m;
}

CounterexampleSearch find_counterexample(const Sentence& s, const SearchSpace& space) {
    const SpaceMembers members = space_members(space);
    CounterexampleSearch r;
    for (std::size_t i = 0; i < members.operators.size(); ++i) {
        ++r.examined;
        const auto v = holds(s, members.operators[i]);
        if (!v.holds) {
            r.witness = Counterexample{i, members.operators[i], *v.witness};
            return r;
        }
    }
    r.exhausted = members.exhaustive;
    return r;
}

} // namespace psiforge
