#pragma once

#include "psiforge/boolean_core.hpp"
#include "psiforge/check_report.hpp"
#include "psiforge/contact_relation.hpp"
#include "psiforge/duality_frames.hpp"
#include "psiforge/ternary_operator.hpp"

#include <optional>
#include <vector>

namespace psiforge {

/// A Boolean homomorphism h: source -> target given by its dual map on
/// atoms, atom_map: atoms(target) -> atoms(source). h(a) is the set of
/// target atoms t with atom_map[t] below a.
class BooleanHom {
  public:
    [[nodiscard]] const Algebra& source() const { return source_; }
    [[nodiscard]] const Algebra& target() const { return target_; }
    [[nodiscard]] const std::vector<unsigned>& atom_map() const { return atom_map_; }
    [[nodiscard]] Element operator()(Element a) const;
    [[nodiscard]] bool is_bijective() const;

    friend bool operator==(const BooleanHom&, const BooleanHom&) = default;

  private:
    friend BooleanHom make_hom(const Algebra&, const Algebra&, std::vector<unsigned>);
    BooleanHom(Algebra s, Algebra t, std::vector<unsigned> m)
        : source_(std::move(s)), target_(std::move(t)), atom_map_(std::move(m)) {}
    Algebra source_;
    Algebra target_;
    std::vector<unsigned> atom_map_;
};

/// Throws InputError if atom_map is not a total map atoms(target) ->
/// atoms(source). Self-checks that h preserves join, meet, complement, 0, 1.
BooleanHom make_hom(const Algebra& source, const Algebra& target, std::vector<unsigned> atom_map);

/// Every homomorphism source -> target, atom maps in lexicographic order.
std::vector<BooleanHom> all_homs(const Algebra& source, const Algebra& target);

/// outer after inner (inner: A -> B, outer: B -> C).
BooleanHom compose(const BooleanHom& outer, const BooleanHom& inner);

/// The inverse of a bijective hom, if any.
std::optional<BooleanHom> inverse(const BooleanHom& h);

struct MorphismClassification {
    bool semi = true;  ///< h(dia_A(a,b,c)) <= dia_B(h a, h b, h c)
    bool hemi = true;  ///< dia_B(h a, h b, h c) <= h(dia_A(a,b,c))
    bool full = true;
    std::optional<std::array<Element, 3>> semi_witness;
    std::optional<std::array<Element, 3>> hemi_witness;
};

/// Throws InputError if the operators do not live on h's source and target.
MorphismClassification classify_psi_morphism(const BooleanHom& h, const TernaryOperator& op_source,
                                             const TernaryOperator& op_target);

/// A point map f: X1 -> X2, f[x] < points of X2.
using PointMap = std::vector<unsigned>;

/// Sp1 (trivial on finite discrete spaces), Sp2 (image form) and Sp3
/// (existential form). The semi/hemi naming follows the algebraic side:
/// h is a semi-homomorphism iff its dual map satisfies Sp3, and a
/// hemi-homomorphism iff it satisfies Sp2.
struct FrameMapClassification {
    bool sp1 = true;
    bool sp2 = true;
    bool sp3 = true;
    std::optional<std::array<std::uint32_t, 4>> sp2_witness;  ///< (x, Y1, Y2, Y3)
    std::optional<std::array<std::uint32_t, 4>> sp3_witness;  ///< (x, Z1, Z2, Z3)

    [[nodiscard]] bool semi() const { return sp1 && sp3; }
    [[nodiscard]] bool hemi() const { return sp1 && sp2; }
    [[nodiscard]] bool psi() const { return sp1 && sp2 && sp3; }
};

/// Throws InputError if f is not a map from frame1's points to frame2's.
FrameMapClassification classify_frame_map(const PointMap& f, const PsiFrame& frame1, const PsiFrame& frame2);

/// f*(U) = f^{-1}[U] as a hom from the complex algebra of X2 to that of X1.
BooleanHom frame_map_dual(const PointMap& f, unsigned points1, unsigned points2);

/// The dual point map of h (its atom map).
PointMap hom_dual(const BooleanHom& h);

/// Checks the three biconditionals between h and its dual map, and the
/// same biconditionals between the dual map and its f*. Throws
/// PreconditionError unless both operators pass check_psi.
CheckReport morphism_duality_check(const BooleanHom& h, const TernaryOperator& op_source,
                                   const TernaryOperator& op_target);

struct EcaMorphismClassification {
    bool reflecting = true;  ///< (h a, h b) |- h c implies (a, b) |- c
    bool preserving = true;  ///< (a, b) |- c implies (h a, h b) |- h c
    bool similarity = true;
    std::optional<std::array<Element, 3>> reflecting_witness;
    std::optional<std::array<Element, 3>> preserving_witness;
    /// reflecting iff semi, preserving iff hemi, similarity iff full, on
    /// the rel_to_op images.
    CheckReport equivalences;
};

/// Throws PreconditionError unless both relations pass check_eca.
EcaMorphismClassification classify_eca_morphism(const BooleanHom& h, const TernaryRelation& rel_source,
                                                const TernaryRelation& rel_target);

} // namespace psiforge
