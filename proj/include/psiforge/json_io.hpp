#pragma once

#include "psiforge/boolean_core.hpp"
#include "psiforge/check_report.hpp"
#include "psiforge/contact_relation.hpp"
#include "psiforge/duality_frames.hpp"
#include "psiforge/morphisms.hpp"
#include "psiforge/ternary_operator.hpp"
#include "psiforge/topo_models.hpp"

#include <json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace psiforge {

using Json = nlohmann::ordered_json;

// Documents carry a "type" member on output; on input it is optional but
// must match when present. Every reader throws InputError on malformed data.
//
//   algebra   {"atoms": k, "names": [...]}
//   operator  {"alg": algebra, "table": [n^3 masks, row-major (a, b, c)]}
//   relation  {"alg": algebra, "triples": [[a, b, c], ...]}
//             or {"alg": algebra, "bits": base64 of the n^3 bitset}
//   frame     {"points": m, "R": [[x, [Y1], [Y2], [Y3]], ...]}, 0-based
//   topology  {"points": m, "opens": [[...], ...]}, 0-based
//   hom       {"source": algebra, "target": algebra, "atom_map": [...]}

/// Throws InputError on malformed JSON.
Json parse_json(std::string_view text);

std::string base64_encode(std::span<const std::uint8_t> bytes);
/// Throws InputError on invalid input.
std::vector<std::uint8_t> base64_decode(std::string_view text);

/// Bit i of the set is bit (i % 8) of byte i / 8.
std::string bits_to_base64(const Bits& bits);
Bits bits_from_base64(std::string_view text, std::size_t size);

Json to_json(const Algebra& alg);
Algebra algebra_from_json(const Json& j);

Json to_json(const TernaryOperator& op);
TernaryOperator operator_from_json(const Json& j);

Json to_json(const TernaryRelation& rel, bool as_bits = false);
TernaryRelation relation_from_json(const Json& j);

Json to_json(const PsiFrame& frame);
PsiFrame frame_from_json(const Json& j);

Json to_json(const FiniteTopology& top);
FiniteTopology topology_from_json(const Json& j);

Json to_json(const BooleanHom& h);
BooleanHom hom_from_json(const Json& j);

Json to_json(const CheckReport& r);

/// The "type" member, or empty when absent.
std::string document_type(const Json& j);

} // namespace psiforge
