#pragma once

#include "psiforge/boolean_core.hpp"
#include "psiforge/ternary_operator.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace psiforge {

enum class TermKind { Zero, One, Var, Not, Mu, D, And, Or, Implies, Xor, Dia, Disc };

/// Abstract syntax. `name` is set for variables only.
struct Term {
    TermKind kind = TermKind::Zero;
    std::string name;
    std::vector<Term> args;

    friend bool operator==(const Term&, const Term&) = default;
};

enum class Relation { Eq, Leq };

struct Atom {
    Term lhs;
    Relation rel = Relation::Eq;
    Term rhs;

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// premises => conclusion; an identity or inequality has no premises.
/// `variables` lists every variable in order of first occurrence.
struct Sentence {
    std::vector<Atom> premises;
    Atom conclusion;
    std::vector<std::string> variables;

    friend bool operator==(const Sentence&, const Sentence&) = default;
};

/// Grammar, loosest first:
///   sentence := atom ('&' atom)* ('=>' atom)?
///   atom     := term ('=' | '<=') term
///   term     := term '->' term | term 'or' term | term 'xor' term
///             | term 'and' term | 'not' term | primary
///   primary  := '0' | '1' | ident | '(' term ')' | dia(t,t,t) | disc(t,t,t)
///             | mu(t) | d(t)
/// All binary operators are left-associative; '+' is accepted for 'xor'.
/// `d` is a variable unless followed by '('.
/// Throws ParseError (1-based column) or ArityError.
Term parse_term(std::string_view text);
Sentence parse_sentence(std::string_view text);

/// Canonical concrete syntax, minimal parentheses, no space after commas.
std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Sentence& s);

std::vector<std::string> term_variables(const Term& t);

using Assignment = std::map<std::string, Element>;

/// mu, d and disc expand to their definitions in terms of dia.
/// Throws InputError for an unassigned variable or a value outside the
/// carrier.
Element eval_term(const Term& t, const TernaryOperator& op, const Assignment& env);

/// Cap on n^(number of variables) for holds().
inline constexpr std::uint64_t kMaxAssignments = std::uint64_t{1} << 24;

struct SentenceVerdict {
    bool holds = true;
    /// Values in the order of Sentence::variables; lexicographically first.
    std::optional<std::vector<Element>> witness;
};

/// Sweeps all assignments. Throws InfeasibleError above kMaxAssignments.
SentenceVerdict holds(const Sentence& s, const TernaryOperator& op);

/// Three-valued check against a partially filled table (entries < 0 are
/// undecided): false when some assignment is violated using decided
/// entries only, true when every assignment is decided and satisfied,
/// nullopt otherwise.
std::optional<bool> holds_partial(const Sentence& s, const Algebra& alg, std::span<const std::int16_t> table);

struct NamedSentence {
    std::string id;
    Sentence sentence;
};

/// Built-in axiom sets: "3bamo" (MO1-MO4 split by coordinate), "psi"
/// (3bamo plus PI1-PI4), "strict" (psi plus R1, R2, S). Throws InputError
/// for an unknown name.
std::vector<NamedSentence> builtin_axioms(std::string_view name);

/// One sentence per line; '#' starts a comment. A comment after a
/// sentence names it, otherwise the id is "line N".
std::vector<NamedSentence> parse_axiom_file(std::string_view text);

} // namespace psiforge
