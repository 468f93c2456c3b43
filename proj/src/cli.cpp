#include "psiforge/cli.hpp"

#include "psiforge/contact_relation.hpp"
#include "psiforge/duality_frames.hpp"
#include "psiforge/enumerate.hpp"
#include "psiforge/errors.hpp"
#include "psiforge/json_io.hpp"
#include "psiforge/term.hpp"
#include "psiforge/ternary_operator.hpp"
#include "psiforge/topo_models.hpp"
#include "psiforge/verify_suite.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <fmt/format.h>

namespace psiforge {

namespace {

std::string read_input(const std::string& path, std::istream& in) {
    if (path == "-")
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw InputError(fmt::format("cannot open '{}'", path));
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Json read_json(const std::string& path, std::istream& in) { return parse_json(read_input(path, in)); }

int emit_report(const CheckReport& r, bool json, std::ostream& out) {
    if (json)
        out << to_json(r).dump(2) << '\n';
    else
        out << format_report(r);
    return r.all_passed() ? kExitPass : kExitPropertyFailed;
}

struct Options {
    std::string input = "-";
    std::string kind;
    bool json = false;
    std::string to;
    bool bits = false;
    std::string mode = "auto";
    std::string what = "eca";
    unsigned k = 1;
    unsigned suite_k = 2;
    std::string axioms = "psi";
    std::string enum_mode = "exhaustive";
    unsigned threads = 1;
    bool labeled = false;
    std::size_t samples = kDefaultOperatorSamples;
    std::string sentence;
    std::string space = "psi";
};

int cmd_check(const Options& o, std::istream& in, std::ostream& out) {
    const Json j = read_json(o.input, in);
    const std::string& kind = o.kind;
    if (kind == "3bamo")
        return emit_report(check_3bamo(operator_from_json(j)), o.json, out);
    if (kind == "psi")
        return emit_report(check_psi(operator_from_json(j)), o.json, out);
    if (kind == "strict") {
        const auto op = operator_from_json(j);
        CheckReport r = check_psi(op);
        r.kind = "strict";
        r.append(check_strict(op));
        return emit_report(r, o.json, out);
    }
    if (kind == "eca")
        return emit_report(check_eca(relation_from_json(j)), o.json, out);
    if (kind == "extca")
        return emit_report(check_extca(relation_from_json(j)), o.json, out);
    const PsiFrame frame = frame_from_json(j);
    if (kind == "frame")
        return emit_report(check_psi_frame(frame), o.json, out);
    if (kind == "space") {
        CheckReport r = check_psi_frame(frame);
        r.kind = "space";
        if (r.all_passed())
            r.append(check_psi_space(frame));
        return emit_report(r, o.json, out);
    }
    // total
    const auto v = is_total(frame);
    CheckReport r{"total", true, {}};
    if (v.total)
        r.add("T", true);
    else
        r.add_failure("T", std::vector<std::uint32_t>(v.witness->begin(), v.witness->end()),
                      {"Y1", "Y2", "Y3", "x", "y"});
    return emit_report(r, o.json, out);
}

int cmd_convert(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
    const Json j = read_json(o.input, in);
    if (o.to == "op") {
        out << to_json(rel_to_op(relation_from_json(j))).dump(2) << '\n';
        return kExitPass;
    }
    const auto op = operator_from_json(j);
    const auto rep = op_to_rel_report(op);
    if (!rep.all_passed()) {
        err << "psiforge: operator is not relational; op_to_rel is only a bijection on relational operators\n"
            << format_report(rep);
        return kExitPropertyFailed;
    }
    out << to_json(op_to_rel(op), o.bits).dump(2) << '\n';
    return kExitPass;
}

int cmd_dualize(const Options& o, std::istream& in, std::ostream& out) {
    const auto op = operator_from_json(read_json(o.input, in));
    const DualMode mode = o.mode == "reduced"        ? DualMode::Reduced
                          : o.mode == "definitional" ? DualMode::Definitional
                                                     : DualMode::Auto;
    out << to_json(dual_frame(op, mode)).dump(2) << '\n';
    return kExitPass;
}

int cmd_complex(const Options& o, std::istream& in, std::ostream& out) {
    out << to_json(complex_algebra(frame_from_json(read_json(o.input, in)))).dump(2) << '\n';
    return kExitPass;
}

std::vector<NamedSentence> load_axioms(const std::string& spec, std::istream& in) {
    if (spec == "3bamo" || spec == "psi" || spec == "strict")
        return builtin_axioms(spec);
    return parse_axiom_file(read_input(spec, in));
}

int cmd_enumerate(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
    const Algebra alg = make_algebra(o.k);
    if (o.what == "eca") {
        EnumerationOptions opt;
        opt.up_to_iso = !o.labeled;
        opt.threads = o.threads;
        const auto res = enumerate_ecas(alg, opt);
        for (const auto& r : res.relations)
            out << to_json(r, o.bits).dump() << '\n';
        err << fmt::format("# {} ECAs on {} atoms ({}{})\n", res.relations.size(), o.k,
                           o.labeled ? "labeled" : "up to iso", res.complete ? "" : ", incomplete: budget exhausted");
        return kExitPass;
    }
    const OperatorMode mode = o.enum_mode == "relational" ? OperatorMode::Relational
                              : o.enum_mode == "sampled"  ? OperatorMode::Sampled
                                                          : OperatorMode::Exhaustive;
    const auto res = enumerate_operators(alg, load_axioms(o.axioms, in), mode, o.samples);
    for (const auto& op : res.operators)
        out << to_json(op).dump() << '\n';
    err << fmt::format("# {} operators on {} atoms ({})\n", res.operators.size(), o.k, res.label);
    return kExitPass;
}

int cmd_find(const Options& o, std::ostream& out) {
    const Sentence s = parse_sentence(o.sentence);
    SearchSpace space;
    space.atoms = o.k;
    space.kind = o.space == "3bamo"        ? SpaceKind::ThreeBamo
                 : o.space == "strict"     ? SpaceKind::Strict
                 : o.space == "relational" ? SpaceKind::Relational
                                           : SpaceKind::Psi;
    const auto r = find_counterexample(s, space);
    out << "sentence: " << to_string(s) << '\n';
    if (r.witness) {
        std::vector<std::uint32_t> w(r.witness->assignment.begin(), r.witness->assignment.end());
        std::string vars;
        for (std::size_t i = 0; i < s.variables.size(); ++i)
            vars += (i ? "," : "") + s.variables[i];
        out << fmt::format("counterexample: operator #{} of {} examined, ({})={}\n", r.witness->index, r.examined,
                           vars, format_tuple(w));
        out << to_json(r.witness->op).dump() << '\n';
        return kExitPropertyFailed;
    }
    out << fmt::format("no counterexample among {} operators ({})\n", r.examined,
                       r.exhausted ? "space exhausted" : "space not exhaustive");
    return kExitPass;
}

int cmd_topo(const Options& o, std::istream& in, std::ostream& out) {
    const auto t = eca_from_topology(topology_from_json(read_json(o.input, in)));
    Json j = to_json(t.rel);
    Json regions = Json::array();
    for (PointSet a : t.rc.atoms()) {
        Json pts = Json::array();
        for (unsigned x = 0; a >> x; ++x)
            if ((a >> x) & 1U)
                pts.push_back(x);
        regions.push_back(std::move(pts));
    }
    j["regions"] = std::move(regions);
    out << j.dump(2) << '\n';
    return kExitPass;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"psiforge: ternary pseudo-inference operators, extended contact algebras and their duals",
                 "psiforge"};
    app.require_subcommand(1);
    Options o;

    auto* check = app.add_subcommand("check", "check axioms of a structure");
    check->add_option("--kind", o.kind, "which checker to run")
        ->required()
        ->check(CLI::IsMember({"3bamo", "psi", "strict", "eca", "extca", "frame", "space", "total"}));
    check->add_flag("--json", o.json, "emit the report as JSON");
    check->add_option("input", o.input, "input file, - for stdin")->required();

    auto* convert = app.add_subcommand("convert", "translate between relations and operators");
    convert->add_option("--to", o.to, "target form")->required()->check(CLI::IsMember({"op", "rel"}));
    convert->add_flag("--bits", o.bits, "emit relations in base64 bitset form");
    convert->add_option("input", o.input, "input file, - for stdin")->required();

    auto* dualize = app.add_subcommand("dualize", "dual frame of an operator");
    dualize->add_option("--mode", o.mode, "relation construction")
        ->check(CLI::IsMember({"auto", "reduced", "definitional"}));
    dualize->add_option("input", o.input, "input file, - for stdin")->required();

    auto* complex = app.add_subcommand("complex", "complex algebra of a frame");
    complex->add_option("input", o.input, "input file, - for stdin")->required();

    auto* enumerate = app.add_subcommand("enumerate", "stream canonical models as JSON lines");
    enumerate->add_option("--what", o.what, "eca or operators")->check(CLI::IsMember({"eca", "operators"}));
    enumerate->add_option("--k", o.k, "number of atoms")->check(CLI::Range(1, 6));
    enumerate->add_option("--axioms", o.axioms, "3bamo, psi, strict or an axiom file");
    enumerate->add_option("--mode", o.enum_mode, "operator enumeration mode")
        ->check(CLI::IsMember({"exhaustive", "relational", "sampled"}));
    enumerate->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 256));
    enumerate->add_option("--samples", o.samples, "attempts in sampled mode");
    enumerate->add_flag("--labeled", o.labeled, "do not identify isomorphic models");
    enumerate->add_flag("--bits", o.bits, "emit relations in base64 bitset form");

    auto* find = app.add_subcommand("find", "search for a counterexample to a sentence");
    find->add_option("--sentence", o.sentence, "sentence in the term language")->required();
    find->add_option("--space", o.space, "search space")
        ->check(CLI::IsMember({"3bamo", "psi", "strict", "relational"}));
    find->add_option("--k", o.k, "number of atoms")->check(CLI::Range(1, 6));

    auto* suite = app.add_subcommand("verify-suite", "run every lemma check and print a scoreboard");
    suite->add_option("--k", o.suite_k, "largest number of atoms")->check(CLI::Range(1, 6));

    auto* topo = app.add_subcommand("topo", "ECA of the regular closed sets of a finite space");
    topo->add_option("input", o.input, "input file, - for stdin")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (check->parsed())
            return cmd_check(o, in, out);
        if (convert->parsed())
            return cmd_convert(o, in, out, err);
        if (dualize->parsed())
            return cmd_dualize(o, in, out);
        if (complex->parsed())
            return cmd_complex(o, in, out);
        if (enumerate->parsed())
            return cmd_enumerate(o, in, out, err);
        if (find->parsed())
            return cmd_find(o, out);
        if (suite->parsed()) {
            const auto r = verify_suite(o.suite_k);
            out << format_scoreboard(r);
            return r.all_passed() ? kExitPass : kExitPropertyFailed;
        }
        if (topo->parsed())
            return cmd_topo(o, in, out);
    } catch (const InternalError& e) {
        err << "psiforge: internal error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "psiforge: " << e.what() << '\n';
        return kExitUsage;
    }
    err << "psiforge: no command\n";
    return kExitUsage;
}

} // namespace psiforge
