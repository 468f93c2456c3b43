#include "psiforge/json_io.hpp"

#include "psiforge/errors.hpp"

#include <openssl/evp.h>

#include <fmt/format.h>

namespace psiforge {

namespace {

void expect_type(const Json& j, std::string_view type) {
    if (!j.is_object())
        throw InputError(fmt::format("expected a JSON object for {}", type));
    const std::string t = document_type(j);
    if (!t.empty() && t != type)
        throw InputError(fmt::format("expected a {} document, got '{}'", type, t));
}

const Json& member(const Json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end())
        throw InputError(fmt::format("missing member '{}'", key));
    return *it;
}

std::uint32_t as_uint(const Json& j, const char* what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        throw InputError(fmt::format("{} must be a non-negative integer", what));
    const auto v = j.get<std::uint64_t>();
    if (v > 0xFFFFFFFFULL)
        throw InputError(fmt::format("{} is out of range", what));
    return static_cast<std::uint32_t>(v);
}

const Json& array_member(const Json& j, const char* key) {
    const Json& a = member(j, key);
    if (!a.is_array())
        throw InputError(fmt::format("member '{}' must be an array", key));
    return a;
}

PointSet point_list(const Json& j, unsigned points) {
    if (!j.is_array())
        throw InputError("a point set must be an array of point indices");
    PointSet s = 0;
    for (const auto& p : j) {
        const auto x = as_uint(p, "point");
        if (x >= points)
            throw InputError(fmt::format("point {} is outside 0..{}", x, points - 1));
        s |= PointSet{1} << x;
    }
    return s;
}

Json points_of(PointSet s) {
    Json a = Json::array();
    for (unsigned x = 0; s >> x; ++x)
        if ((s >> x) & 1U)
            a.push_back(x);
    return a;
}

} // namespace

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(fmt::format("malformed JSON: {}", e.what()));
    }
}

std::string base64_encode(std::span<const std::uint8_t> bytes) {
    std::string out(4 * ((bytes.size() + 2) / 3), '\0');
    const int len = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                    static_cast<int>(bytes.size()));
    out.resize(static_cast<std::size_t>(len));
    return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
    if (text.size() % 4 != 0)
        throw InputError("base64 length must be a multiple of 4");
    std::vector<std::uint8_t> out(3 * (text.size() / 4));
    const int len = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()),
                                    static_cast<int>(text.size()));
    if (len < 0)
        throw InputError("invalid base64");
    // EVP_DecodeBlock keeps the bytes produced by '=' padding; drop them.
    std::size_t pad = 0;
    for (std::size_t i = text.size(); i > 0 && text[i - 1] == '=' && pad < 2; --i)
        ++pad;
    out.resize(static_cast<std::size_t>(len) - pad);
    return out;
}

std::string bits_to_base64(const Bits& bits) {
    std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i])
            bytes[i / 8] |= static_cast<std::uint8_t>(1U << (i % 8));
    return base64_encode(bytes);
}

Bits bits_from_base64(std::string_view text, std::size_t size) {
    const auto bytes = base64_decode(text);
    if (bytes.size() != (size + 7) / 8)
        throw InputError(fmt::format("bitset has {} bytes, expected {}", bytes.size(), (size + 7) / 8));
    Bits out(size);
    for (std::size_t i = 0; i < size; ++i)
        out[i] = (bytes[i / 8] >> (i % 8)) & 1U;
    for (std::size_t i = size; i < 8 * bytes.size(); ++i)
        if ((bytes[i / 8] >> (i % 8)) & 1U)
            throw InputError("bitset has bits set past its size");
    return out;
}

std::string document_type(const Json& j) {
    if (!j.is_object())
        return {};
    const auto it = j.find("type");
    if (it == j.end())
        return {};
    if (!it->is_string())
        throw InputError("member 'type' must be a string");
    return it->get<std::string>();
}

Json to_json(const Algebra& alg) {
    Json j;
    j["type"] = "algebra";
    j["atoms"] = alg.atoms();
    j["names"] = alg.names();
    return j;
}

Algebra algebra_from_json(const Json& j) {
    expect_type(j, "algebra");
    const unsigned k = as_uint(member(j, "atoms"), "atoms");
    std::vector<std::string> names;
    if (const auto it = j.find("names"); it != j.end()) {
        if (!it->is_array())
            throw InputError("member 'names' must be an array of strings");
        for (const auto& n : *it) {
            if (!n.is_string())
                throw InputError("member 'names' must be an array of strings");
            names.push_back(n.get<std::string>());
        }
    }
    try {
        return Algebra(k, std::move(names));
    } catch (const SizeError& e) {
        throw InputError(e.what());
    }
}

Json to_json(const TernaryOperator& op) {
    Json j;
    j["type"] = "operator";
    j["alg"] = to_json(op.algebra());
    Json t = Json::array();
    for (auto v : op.table())
        t.push_back(v);
    j["table"] = std::move(t);
    return j;
}

TernaryOperator operator_from_json(const Json& j) {
    expect_type(j, "operator");
    Algebra alg = algebra_from_json(member(j, "alg"));
    std::vector<std::uint8_t> table;
    for (const auto& v : array_member(j, "table")) {
        const auto x = as_uint(v, "table entry");
        if (x > 0xFF)
            throw InputError(fmt::format("table entry {} is outside the carrier", x));
        table.push_back(static_cast<std::uint8_t>(x));
    }
    return TernaryOperator(std::move(alg), std::move(table));
}

Json to_json(const TernaryRelation& rel, bool as_bits) {
    Json j;
    j["type"] = "relation";
    j["alg"] = to_json(rel.algebra());
    if (as_bits) {
        j["bits"] = bits_to_base64(rel.bits());
        return j;
    }
    Json t = Json::array();
    const Element n = static_cast<Element>(rel.n());
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element c = 0; c < n; ++c)
                if (rel.contains(a, b, c))
                    t.push_back({a, b, c});
    j["triples"] = std::move(t);
    return j;
}

TernaryRelation relation_from_json(const Json& j) {
    expect_type(j, "relation");
    Algebra alg = algebra_from_json(member(j, "alg"));
    const std::size_t n = alg.size();
    const bool has_bits = j.contains("bits");
    const bool has_triples = j.contains("triples");
    if (has_bits == has_triples)
        throw InputError("a relation needs exactly one of 'bits' and 'triples'");
    if (has_bits) {
        const Json& b = member(j, "bits");
        if (!b.is_string())
            throw InputError("member 'bits' must be a base64 string");
        return TernaryRelation(std::move(alg), bits_from_base64(b.get<std::string>(), n * n * n));
    }
    TernaryRelation rel(std::move(alg));
    for (const auto& t : array_member(j, "triples")) {
        if (!t.is_array() || t.size() != 3)
            throw InputError("each triple must be an array of three masks");
        const Element a = as_uint(t[0], "mask"), b = as_uint(t[1], "mask"), c = as_uint(t[2], "mask");
        if (a >= n || b >= n || c >= n)
            throw InputError(fmt::format("triple ({},{},{}) leaves the carrier", a, b, c));
        rel.set(a, b, c);
    }
    return rel;
}

Json to_json(const PsiFrame& frame) {
    Json j;
    j["type"] = "frame";
    j["points"] = frame.points();
    Json r = Json::array();
    for (unsigned x = 0; x < frame.points(); ++x)
        for (std::size_t t = 0; t < frame.triples(); ++t) {
            const auto y = frame.triple_at(t);
            if (frame.related(x, y))
                r.push_back({x, points_of(y.y1), points_of(y.y2), points_of(y.y3)});
        }
    j["R"] = std::move(r);
    return j;
}

PsiFrame frame_from_json(const Json& j) {
    expect_type(j, "frame");
    const unsigned m = as_uint(member(j, "points"), "points");
    if (m == 0 || m > PsiFrame::kMaxPoints)
        throw InputError(fmt::format("frames need 1..{} points, got {}", PsiFrame::kMaxPoints, m));
    if (j.contains("bits")) {
        const Json& b = member(j, "bits");
        if (!b.is_string())
            throw InputError("member 'bits' must be a base64 string");
        const PsiFrame probe(m);
        return PsiFrame(m, bits_from_base64(b.get<std::string>(), probe.bits().size()));
    }
    PsiFrame f(m);
    for (const auto& e : array_member(j, "R")) {
        if (!e.is_array() || e.size() != 4)
            throw InputError("each R entry must be [x, [Y1], [Y2], [Y3]]");
        const auto x = as_uint(e[0], "point");
        if (x >= m)
            throw InputError(fmt::format("point {} is outside 0..{}", x, m - 1));
        f.set(x, {point_list(e[1], m), point_list(e[2], m), point_list(e[3], m)});
    }
    return f;
}

Json to_json(const FiniteTopology& top) {
    Json j;
    j["type"] = "topology";
    j["points"] = top.points();
    Json o = Json::array();
    for (PointSet s : top.opens())
        o.push_back(points_of(s));
    j["opens"] = std::move(o);
    return j;
}

FiniteTopology topology_from_json(const Json& j) {
    expect_type(j, "topology");
    const unsigned m = as_uint(member(j, "points"), "points");
    if (m == 0 || m > FiniteTopology::kMaxPoints)
        throw InputError(fmt::format("topologies need 1..{} points, got {}", FiniteTopology::kMaxPoints, m));
    std::vector<PointSet> basis;
    for (const auto& o : array_member(j, "opens"))
        basis.push_back(point_list(o, m));
    return make_topology(m, basis);
}

Json to_json(const BooleanHom& h) {
    Json j;
    j["type"] = "hom";
    j["source"] = to_json(h.source());
    j["target"] = to_json(h.target());
    j["atom_map"] = h.atom_map();
    return j;
}

BooleanHom hom_from_json(const Json& j) {
    expect_type(j, "hom");
    std::vector<unsigned> m;
    for (const auto& v : array_member(j, "atom_map"))
        m.push_back(as_uint(v, "atom_map entry"));
    return make_hom(algebra_from_json(member(j, "source")), algebra_from_json(member(j, "target")), std::move(m));
}

Json to_json(const CheckReport& r) {
    Json j;
    j["type"] = "report";
    j["kind"] = r.kind;
    j["exhaustive"] = r.exhaustive;
    Json rows = Json::array();
    for (const auto& x : r.results) {
        Json row;
        row["axiom"] = x.id;
        row["pass"] = x.passed;
        row["witness"] = x.passed ? Json(nullptr) : Json(x.witness);
        row["vars"] = x.witness_vars;
        row["note"] = x.note;
        rows.push_back(std::move(row));
    }
    j["results"] = std::move(rows);
    return j;
}

} // namespace psiforge
