#include "psiforge/term.hpp"

#include "psiforge/errors.hpp"

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

namespace psiforge {

namespace {

enum class Tok { Ident, Zero, One, LParen, RParen, Comma, Eq, Leq, Arrow, Implies, Amp, Plus, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        const std::size_t col = i + 1;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c >= 'a' && c <= 'z') {
            std::size_t j = i + 1;
            while (j < s.size() && ((s[j] >= 'a' && s[j] <= 'z') || (s[j] >= '0' && s[j] <= '9') || s[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), col});
            i = j;
            continue;
        }
        auto two = [&](char a, char b) { return c == a && i + 1 < s.size() && s[i + 1] == b; };
        if (two('<', '=')) {
            out.push_back({Tok::Leq, "<=", col});
            i += 2;
        } else if (two('-', '>')) {
            out.push_back({Tok::Arrow, "->", col});
            i += 2;
        } else if (two('=', '>')) {
            out.push_back({Tok::Implies, "=>", col});
            i += 2;
        } else if (c == '0' || c == '1') {
            if (i + 1 < s.size() && std::isalnum(static_cast<unsigned char>(s[i + 1])))
                throw ParseError(fmt::format("unknown symbol '{}'", s.substr(i, 2)), col);
            out.push_back({c == '0' ? Tok::Zero : Tok::One, std::string(1, c), col});
            ++i;
        } else {
            Tok k{};
            switch (c) {
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case ',': k = Tok::Comma; break;
            case '=': k = Tok::Eq; break;
            case '&': k = Tok::Amp; break;
            case '+': k = Tok::Plus; break;
            default: throw ParseError(fmt::format("unknown symbol '{}'", c), col);
            }
            out.push_back({k, std::string(1, c), col});
            ++i;
        }
    }
    out.push_back({Tok::End, "", s.size() + 1});
    return out;
}

bool reserved(const std::string& w) { return w == "not" || w == "and" || w == "or" || w == "xor"; }

class Parser {
  public:
    explicit Parser(std::string_view s) : toks_(tokenize(s)) {}

    Sentence sentence() {
        Sentence s;
        std::vector<Atom> atoms{atom()};
        while (peek().kind == Tok::Amp) {
            ++pos_;
            atoms.push_back(atom());
        }
        if (peek().kind == Tok::Implies) {
            ++pos_;
            s.premises = std::move(atoms);
            s.conclusion = atom();
        } else if (atoms.size() == 1) {
            s.conclusion = std::move(atoms.front());
        } else {
            fail("expected '=>' after premises");
        }
        expect_end();
        for (const auto* a : collect(s)) {
            for (auto& v : term_variables(a->lhs))
                add_var(s.variables, v);
            for (auto& v : term_variables(a->rhs))
                add_var(s.variables, v);
        }
        return s;
    }

    Term whole_term() {
        Term t = implies();
        expect_end();
        return t;
    }

  private:
    static std::vector<const Atom*> collect(const Sentence& s) {
        std::vector<const Atom*> out;
        for (const auto& p : s.premises)
            out.push_back(&p);
        out.push_back(&s.conclusion);
        return out;
    }

    static void add_var(std::vector<std::string>& vars, const std::string& v) {
        if (std::ranges::find(vars, v) == vars.end())
            vars.push_back(v);
    }

    const Token& peek() const { return toks_[pos_]; }
    bool peek_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw ParseError(t.kind == Tok::End ? msg + ", found end of input" : fmt::format("{}, found '{}'", msg, t.text),
                         t.column);
    }

    void expect(Tok k, const char* what) {
        if (peek().kind != k)
            fail(fmt::format("expected {}", what));
        ++pos_;
    }

    void expect_end() {
        if (peek().kind != Tok::End)
            fail("expected end of input");
    }

    Atom atom() {
        Atom a;
        a.lhs = implies();
        if (peek().kind == Tok::Eq)
            a.rel = Relation::Eq;
        else if (peek().kind == Tok::Leq)
            a.rel = Relation::Leq;
        else
            fail("expected '=' or '<='");
        ++pos_;
        a.rhs = implies();
        return a;
    }

    static Term binary(TermKind k, Term l, Term r) {
        Term t{k, {}, {}};
        t.args.push_back(std::move(l));
        t.args.push_back(std::move(r));
        return t;
    }

    Term implies() {
        Term t = disj();
        while (peek().kind == Tok::Arrow) {
            ++pos_;
            t = binary(TermKind::Implies, std::move(t), disj());
        }
        return t;
    }

    Term disj() {
        Term t = exclusive();
        while (peek_word("or")) {
            ++pos_;
            t = binary(TermKind::Or, std::move(t), exclusive());
        }
        return t;
    }

    Term exclusive() {
        Term t = conj();
        while (peek_word("xor") || peek().kind == Tok::Plus) {
            ++pos_;
            t = binary(TermKind::Xor, std::move(t), conj());
        }
        return t;
    }

    Term conj() {
        Term t = unary();
        while (peek_word("and")) {
            ++pos_;
            t = binary(TermKind::And, std::move(t), unary());
        }
        return t;
    }

    Term unary() {
        if (peek_word("not")) {
            ++pos_;
            Term t{TermKind::Not, {}, {}};
            t.args.push_back(unary());
            return t;
        }
        return primary();
    }

    Term primary() {
        const Token tok = peek();
        switch (tok.kind) {
        case Tok::Zero: ++pos_; return Term{TermKind::Zero, {}, {}};
        case Tok::One: ++pos_; return Term{TermKind::One, {}, {}};
        case Tok::LParen: {
            ++pos_;
            Term t = implies();
            expect(Tok::RParen, "')'");
            return t;
        }
        case Tok::Ident: break;
        default: fail("expected a term");
        }
        if (reserved(tok.text))
            fail("expected a term");
        ++pos_;
        const bool call = peek().kind == Tok::LParen;
        if (!call) {
            if (tok.text == "dia" || tok.text == "mu" || tok.text == "disc")
                fail(fmt::format("expected '(' after {}", tok.text));
            return Term{TermKind::Var, tok.text, {}};
        }
        TermKind kind{};
        std::size_t arity = 0;
        if (tok.text == "dia")
            kind = TermKind::Dia, arity = 3;
        else if (tok.text == "disc")
            kind = TermKind::Disc, arity = 3;
        else if (tok.text == "mu")
            kind = TermKind::Mu, arity = 1;
        else if (tok.text == "d")
            kind = TermKind::D, arity = 1;
        else
            throw ParseError(fmt::format("unknown symbol '{}'", tok.text), tok.column);
        ++pos_;
        Term t{kind, {}, {}};
        t.args.push_back(implies());
        while (peek().kind == Tok::Comma) {
            ++pos_;
            t.args.push_back(implies());
        }
        expect(Tok::RParen, "',' or ')'");
        if (t.args.size() != arity)
            throw ArityError(fmt::format("{} expects {} argument{}, got {} (column {})", tok.text, arity,
                                         arity == 1 ? "" : "s", t.args.size(), tok.column));
        return t;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

int precedence(TermKind k) {
    switch (k) {
    case TermKind::Implies: return 1;
    case TermKind::Or: return 2;
    case TermKind::Xor: return 3;
    case TermKind::And: return 4;
    case TermKind::Not: return 5;
    default: return 6;
    }
}

void print(const Term& t, std::string& out) {
    auto sub = [&](const Term& x, int min_prec) {
        if (precedence(x.kind) < min_prec) {
            out += '(';
            print(x, out);
            out += ')';
        } else {
            print(x, out);
        }
    };
    auto call = [&](const char* name) {
        out += name;
        out += '(';
        for (std::size_t i = 0; i < t.args.size(); ++i) {
            if (i)
                out += ',';
            print(t.args[i], out);
        }
        out += ')';
    };
    auto infix = [&](const char* op) {
        const int p = precedence(t.kind);
        sub(t.args[0], p);
        out += op;
        sub(t.args[1], p + 1);
    };
    switch (t.kind) {
    case TermKind::Zero: out += '0'; break;
    case TermKind::One: out += '1'; break;
    case TermKind::Var: out += t.name; break;
    case TermKind::Not:
        out += "not ";
        sub(t.args[0], precedence(TermKind::Not));
        break;
    case TermKind::Mu: call("mu"); break;
    case TermKind::D: call("d"); break;
    case TermKind::Dia: call("dia"); break;
    case TermKind::Disc: call("disc"); break;
    case TermKind::And: infix(" and "); break;
    case TermKind::Or: infix(" or "); break;
    case TermKind::Xor: infix(" xor "); break;
    case TermKind::Implies: infix(" -> "); break;
    }
}

void collect_vars(const Term& t, std::vector<std::string>& out) {
    if (t.kind == TermKind::Var && std::ranges::find(out, t.name) == out.end())
        out.push_back(t.name);
    for (const auto& a : t.args)
        collect_vars(a, out);
}

// Variables resolved to slots once per sentence.
struct Node {
    TermKind kind;
    int slot = -1;
    std::vector<Node> kids;
};

Node compile(const Term& t, const std::vector<std::string>& vars) {
    Node n{t.kind, -1, {}};
    if (t.kind == TermKind::Var) {
        const auto it = std::ranges::find(vars, t.name);
        if (it == vars.end())
            throw InputError(fmt::format("unassigned variable '{}'", t.name));
        n.slot = static_cast<int>(it - vars.begin());
    }
    for (const auto& a : t.args)
        n.kids.push_back(compile(a, vars));
    return n;
}

// Values are masks; -1 marks "undetermined" on partial tables.
using Val = std::int32_t;
constexpr Val kUnknown = -1;

template <class Lookup>
struct Evaluator {
    const Algebra& alg;
    Lookup lookup;  // (a,b,c) -> Val
    std::span<const Element> env;

    Val neg(Val x) const { return x < 0 ? kUnknown : static_cast<Val>(alg.neg(static_cast<Element>(x))); }
    Val meet(Val x, Val y) const {
        if (x == 0 || y == 0)
            return 0;
        return x < 0 || y < 0 ? kUnknown : (x & y);
    }
    Val join(Val x, Val y) const {
        const Val top = static_cast<Val>(alg.top());
        if (x == top || y == top)
            return top;
        return x < 0 || y < 0 ? kUnknown : (x | y);
    }
    Val dia(Val x, Val y, Val z) const { return x < 0 || y < 0 || z < 0 ? kUnknown : lookup(x, y, z); }
    Val mu(Val z) const {
        const Val top = static_cast<Val>(alg.top());
        const Val nz = neg(z);
        return meet(neg(dia(top, top, nz)), neg(dia(top, nz, top)));
    }
    Val d(Val x) const { return neg(mu(neg(x))); }

    Val operator()(const Node& n) const {
        switch (n.kind) {
        case TermKind::Zero: return 0;
        case TermKind::One: return static_cast<Val>(alg.top());
        case TermKind::Var: return static_cast<Val>(env[static_cast<std::size_t>(n.slot)]);
        case TermKind::Not: return neg((*this)(n.kids[0]));
        case TermKind::Mu: return mu((*this)(n.kids[0]));
        case TermKind::D: return d((*this)(n.kids[0]));
        case TermKind::And: return meet((*this)(n.kids[0]), (*this)(n.kids[1]));
        case TermKind::Or: return join((*this)(n.kids[0]), (*this)(n.kids[1]));
        case TermKind::Implies: return join(neg((*this)(n.kids[0])), (*this)(n.kids[1]));
        case TermKind::Xor: {
            const Val x = (*this)(n.kids[0]);
            const Val y = (*this)(n.kids[1]);
            return x < 0 || y < 0 ? kUnknown : (x ^ y);
        }
        case TermKind::Dia: return dia((*this)(n.kids[0]), (*this)(n.kids[1]), (*this)(n.kids[2]));
        case TermKind::Disc: {
            const Val x = (*this)(n.kids[0]);
            const Val y = (*this)(n.kids[1]);
            const Val z = (*this)(n.kids[2]);
            const Val dx = d(x < 0 || y < 0 ? kUnknown : (x ^ y));
            return join(meet(x, dx), meet(z, neg(dx)));
        }
        }
        return kUnknown;
    }
};

struct CompiledAtom {
    Node lhs;
    Relation rel;
    Node rhs;
};

struct CompiledSentence {
    std::vector<CompiledAtom> premises;
    CompiledAtom conclusion;
};

CompiledSentence compile(const Sentence& s) {
    CompiledSentence c{{}, {compile(s.conclusion.lhs, s.variables), s.conclusion.rel,
                            compile(s.conclusion.rhs, s.variables)}};
    for (const auto& p : s.premises)
        c.premises.push_back({compile(p.lhs, s.variables), p.rel, compile(p.rhs, s.variables)});
    return c;
}

// -1 unknown, 0 false, 1 true.
template <class E>
int truth(const E& ev, const CompiledAtom& a) {
    const Val l = ev(a.lhs);
    const Val r = ev(a.rhs);
    if (a.rel == Relation::Leq && (l == 0 || r == static_cast<Val>(ev.alg.top())))
        return 1;
    if (l < 0 || r < 0)
        return -1;
    return a.rel == Relation::Eq ? (l == r) : ((l & ~r) == 0);
}

template <class E>
int sentence_truth(const E& ev, const CompiledSentence& c) {
    bool unknown = false;
    for (const auto& p : c.premises) {
        const int t = truth(ev, p);
        if (t == 0)
            return 1;
        unknown = unknown || t < 0;
    }
    const int t = truth(ev, c.conclusion);
    if (t == 1)
        return 1;
    return unknown || t < 0 ? -1 : 0;
}

// Visits every assignment in lexicographic order; stops when f returns true.
template <class F>
void for_each_assignment(std::size_t vars, Element n, F&& f) {
    std::vector<Element> env(vars, 0);
    while (true) {
        if (f(std::span<const Element>(env)))
            return;
        std::size_t i = vars;
        while (true) {
            if (i == 0)
                return;
            --i;
            if (++env[i] < n)
                break;
            env[i] = 0;
        }
    }
}

void check_cap(const Sentence& s, Element n) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < s.variables.size(); ++i) {
        total *= n;
        if (total > kMaxAssignments)
            throw InfeasibleError(fmt::format("{} variables over {} elements exceed the assignment cap",
                                              s.variables.size(), n));
    }
}

} // namespace

Term parse_term(std::string_view text) { return Parser(text).whole_term(); }

Sentence parse_sentence(std::string_view text) { return Parser(text).sentence(); }

std::string to_string(const Term& t) {
    std::string out;
    print(t, out);
    return out;
}

std::string to_string(const Atom& a) {
    return to_string(a.lhs) + (a.rel == Relation::Eq ? " = " : " <= ") + to_string(a.rhs);
}

std::string to_string(const Sentence& s) {
    std::string out;
    for (std::size_t i = 0; i < s.premises.size(); ++i) {
        if (i)
            out += " & ";
        out += to_string(s.premises[i]);
    }
    if (!s.premises.empty())
        out += " => ";
    out += to_string(s.conclusion);
    return out;
}

std::vector<std::string> term_variables(const Term& t) {
    std::vector<std::string> out;
    collect_vars(t, out);
    return out;
}

Element eval_term(const Term& t, const TernaryOperator& op, const Assignment& env) {
    const auto vars = term_variables(t);
    std::vector<Element> values;
    for (const auto& v : vars) {
        const auto it = env.find(v);
        if (it == env.end())
            throw InputError(fmt::format("unassigned variable '{}'", v));
        if (!op.algebra().contains(it->second))
            throw InputError(fmt::format("value {} of '{}' is outside the carrier", it->second, v));
        values.push_back(it->second);
    }
    const Node n = compile(t, vars);
    auto lookup = [&](Val a, Val b, Val c) { return static_cast<Val>(op(a, b, c)); };
    const Evaluator<decltype(lookup)> ev{op.algebra(), lookup, values};
    return static_cast<Element>(ev(n));
}

SentenceVerdict holds(const Sentence& s, const TernaryOperator& op) {
    const Element n = static_cast<Element>(op.n());
    check_cap(s, n);
    const CompiledSentence c = compile(s);
    auto lookup = [&](Val a, Val b, Val d) { return static_cast<Val>(op(a, b, d)); };
    SentenceVerdict v;
    for_each_assignment(s.variables.size(), n, [&](std::span<const Element> env) {
        const Evaluator<decltype(lookup)> ev{op.algebra(), lookup, env};
        if (sentence_truth(ev, c) == 0) {
            v.holds = false;
            v.witness = std::vector<Element>(env.begin(), env.end());
            return true;
        }
        return false;
    });
    return v;
}

std::optional<bool> holds_partial(const Sentence& s, const Algebra& alg, std::span<const std::int16_t> table) {
    const Element n = static_cast<Element>(alg.size());
    if (table.size() != std::size_t{n} * n * n)
        throw InputError(fmt::format("partial table has {} entries, expected {}", table.size(), n * n * n));
    check_cap(s, n);
    const CompiledSentence c = compile(s);
    auto lookup = [&](Val a, Val b, Val d) {
        return static_cast<Val>(table[(static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)) * n +
                                      static_cast<std::size_t>(d)]);
    };
    bool unknown = false;
    bool violated = false;
    for_each_assignment(s.variables.size(), n, [&](std::span<const Element> env) {
        const Evaluator<decltype(lookup)> ev{alg, lookup, env};
        const int t = sentence_truth(ev, c);
        violated = t == 0;
        unknown = unknown || t < 0;
        return violated;
    });
    if (violated)
        return false;
    if (unknown)
        return std::nullopt;
    return true;
}

namespace {

struct Builtin {
    const char* id;
    const char* text;
};

constexpr Builtin kMo[] = {
    {"MO1-1", "dia(0,b,c) = 0"},
    {"MO1-2", "dia(a,0,c) = 0"},
    {"MO1-3", "dia(a,b,0) = 0"},
    {"MO2", "dia(a or x,b,c) = dia(a,b,c) or dia(x,b,c)"},
    {"MO3", "dia(a,b or x,c) = dia(a,b,c) or dia(a,x,c)"},
    {"MO4", "dia(a,b,c) or dia(a,b,x) <= dia(a,b,c or x)"},
};

constexpr Builtin kPi[] = {
    {"PI1", "dia(a,b,f) <= dia(a,b,not d) or dia(a,b,not e) or dia(d,e,f)"},
    {"PI2", "dia(a,b,not a) = 0"},
    {"PI3", "a and f <= dia(a,a,f)"},
    {"PI4", "dia(a,b,f) <= dia(b,a,f)"},
};

constexpr Builtin kStrict[] = {
    {"R1", "dia(x,y,a) and not dia(x,y,b) <= dia(1,1,a and not b)"},
    {"R2", "dia(x,a,y) and not dia(x,b,y) <= dia(1,a and not b,1)"},
    {"S", "dia(a,b,c) <= mu(dia(a,b,c))"},
};

void append(std::vector<NamedSentence>& out, std::span<const Builtin> xs) {
    for (const auto& b : xs)
        out.push_back({b.id, parse_sentence(b.text)});
}

} // namespace

std::vector<NamedSentence> builtin_axioms(std::string_view name) {
    std::vector<NamedSentence> out;
    if (name != "3bamo" && name != "psi" && name != "strict")
        throw InputError(fmt::format("unknown axiom set '{}' (expected 3bamo, psi or strict)", name));
    append(out, kMo);
    if (name != "3bamo")
        append(out, kPi);
    if (name == "strict")
        append(out, kStrict);
    return out;
}

std::vector<NamedSentence> parse_axiom_file(std::string_view text) {
    std::vector<NamedSentence> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        std::string id = fmt::format("line {}", line_no);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            std::string_view label = line.substr(hash + 1);
            line = line.substr(0, hash);
            while (!label.empty() && std::isspace(static_cast<unsigned char>(label.front())))
                label.remove_prefix(1);
            while (!label.empty() && std::isspace(static_cast<unsigned char>(label.back())))
                label.remove_suffix(1);
            if (!label.empty())
                id = std::string(label);
        }
        if (std::ranges::all_of(line, [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }))
            continue;
        try {
            out.push_back({id, parse_sentence(line)});
        } catch (const ParseError& e) {
            throw InputError(fmt::format("line {}: {}", line_no, e.what()));
        }
    }
    return out;
}

} // namespace psiforge
