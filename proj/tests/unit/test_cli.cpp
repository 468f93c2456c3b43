#include "psiforge/cli.hpp"
#include "psiforge/contact_relation.hpp"
#include "psiforge/duality_frames.hpp"
#include "psiforge/json_io.hpp"

#include <doctest.h>

#include <sstream>

using namespace psiforge;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome call(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(PSIFORGE_DATA_DIR) + "/" + name; }

} // namespace

TEST_CASE("check reports the lexicographically first PI1 witness") {
    const auto r = call({"check", "--kind", "psi", data("example_3bamo.json")});
    CHECK(r.code == kExitPropertyFailed);
    CHECK(r.out.find("PI1            FAIL witness (a,b,f,d,e)=(1,1,3,1,2)") != std::string::npos);
    const auto j = call({"check", "--kind", "psi", "--json", data("example_3bamo.json")});
    CHECK(j.code == kExitPropertyFailed);
    CHECK(parse_json(j.out)["results"][0]["witness"] == Json::array({1, 1, 3, 1, 2}));
    CHECK(call({"check", "--kind", "3bamo", data("example_3bamo.json")}).code == kExitPass);
}

TEST_CASE("convert then check strict") {
    const auto conv = call({"convert", "--to", "op", data("largest_eca_k2.json")});
    REQUIRE(conv.code == kExitPass);
    const auto chk = call({"check", "--kind", "strict", "-"}, conv.out);
    CHECK(chk.code == kExitPass);
    CHECK(chk.out.rfind("strict: PASS", 0) == 0);
    const auto back = call({"convert", "--to", "rel", "--bits", "-"}, conv.out);
    CHECK(back.code == kExitPass);
    CHECK(relation_from_json(parse_json(back.out)) == largest_eca(make_algebra(2)));
    CHECK(call({"check", "--kind", "eca", "-"}, back.out).code == kExitPass);
    CHECK(call({"check", "--kind", "extca", data("largest_eca_k2.json")}).code == kExitPass);
}

TEST_CASE("convert refuses non-relational operators") {
    const auto r = call({"convert", "--to", "rel", data("example_3bamo.json")});
    CHECK(r.code == kExitPropertyFailed);
    CHECK(r.err.find("not relational") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("dualize, complex and frame checks compose") {
    const auto d = call({"dualize", data("example_3bamo.json")});
    REQUIRE(d.code == kExitPass);
    CHECK(call({"check", "--kind", "frame", "-"}, d.out).code == kExitPass);
    const auto space = call({"check", "--kind", "space", "-"}, d.out);
    CHECK(space.code == kExitPropertyFailed);
    CHECK(space.out.find("PIF1") != std::string::npos);
    const auto c = call({"complex", "-"}, d.out);
    REQUIRE(c.code == kExitPass);
    CHECK(operator_from_json(parse_json(c.out)) == example_3bamo());
    CHECK(call({"dualize", "--mode", "definitional", data("example_3bamo.json")}).out == d.out);

    const auto big = call({"dualize", "-"}, call({"convert", "--to", "op", data("largest_eca_k2.json")}).out);
    CHECK(call({"check", "--kind", "total", "-"}, big.out).code == kExitPass);
    const auto sd = to_json(dual_frame(smallest_diamond(make_algebra(2)))).dump();
    const auto t = call({"check", "--kind", "total", "-"}, sd);
    CHECK(t.code == kExitPropertyFailed);
    CHECK(t.out.find("witness") != std::string::npos);
}

TEST_CASE("enumerate streams JSON lines") {
    const auto e = call({"enumerate", "--what", "eca", "--k", "2"});
    CHECK(e.code == kExitPass);
    std::istringstream lines(e.out);
    std::string line;
    std::size_t n = 0;
    while (std::getline(lines, line)) {
        CHECK(check_eca(relation_from_json(parse_json(line))).all_passed());
        ++n;
    }
    CHECK(e.err == "# " + std::to_string(n) + " ECAs on 2 atoms (up to iso)\n");
    CHECK(call({"enumerate", "--what", "eca", "--k", "2", "--threads", "4"}).out == e.out);

    const auto ops = call({"enumerate", "--what", "operators", "--k", "1", "--axioms", "strict"});
    CHECK(ops.code == kExitPass);
    CHECK(ops.err.find("(exhaustive)") != std::string::npos);

    const auto refused = call({"enumerate", "--what", "operators", "--k", "2"});
    CHECK(refused.code == kExitUsage);
    CHECK(refused.err.find("infeasible") != std::string::npos);
    CHECK(call({"enumerate", "--what", "eca", "--k", "4"}).code == kExitUsage);
}

TEST_CASE("find") {
    const auto none = call({"find", "--sentence", "dia(a,b,c) = dia(a,c,b)", "--k", "1"});
    CHECK(none.code == kExitPass);
    CHECK(none.out.find("space exhausted") != std::string::npos);
    const auto some = call({"find", "--sentence", "dia(a,b,c) = dia(a,c,b)", "--k", "2"});
    CHECK(some.code == kExitPropertyFailed);
    CHECK(some.out.find("counterexample: operator #") != std::string::npos);
    const auto bad = call({"find", "--sentence", "dia(a,b"});
    CHECK(bad.code == kExitUsage);
    CHECK(bad.err.find("column 8") != std::string::npos);
}

TEST_CASE("verify-suite scoreboard") {
    const auto r = call({"verify-suite", "--k", "1"});
    CHECK(r.code == kExitPass);
    CHECK(r.out.find("eca-iff-extca") != std::string::npos);
    CHECK(r.out.find("passed") != std::string::npos);
    CHECK(call({"verify-suite", "--k", "3"}).code == kExitUsage);
}

TEST_CASE("topo emits the relation with its regions") {
    const auto r = call({"topo", "-"}, R"({"points": 3, "opens": [[0], [2]]})");
    REQUIRE(r.code == kExitPass);
    const auto j = parse_json(r.out);
    CHECK(j["regions"] == Json::parse("[[0,1],[1,2]]"));
    CHECK(call({"check", "--kind", "eca", "-"}, r.out).code == kExitPass);
}

TEST_CASE("usage and input errors exit 2") {
    CHECK(call({}).code == kExitUsage);
    CHECK(call({"bogus"}).code == kExitUsage);
    CHECK(call({"check", data("example_3bamo.json")}).code == kExitUsage);
    CHECK(call({"check", "--kind", "nope", data("example_3bamo.json")}).code == kExitUsage);
    const auto missing = call({"check", "--kind", "psi", "/nonexistent/x.json"});
    CHECK(missing.code == kExitUsage);
    CHECK(missing.err.rfind("psiforge: ", 0) == 0);
    CHECK(call({"check", "--kind", "psi", "-"}, "{").code == kExitUsage);
    CHECK(call({"check", "--kind", "eca", data("example_3bamo.json")}).code == kExitUsage);
    CHECK(call({"--help"}).code == kExitPass);
}
