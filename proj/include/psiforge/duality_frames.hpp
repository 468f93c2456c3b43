#pragma once

#include "psiforge/boolean_core.hpp"
#include "psiforge/check_report.hpp"
#include "psiforge/contact_relation.hpp"
#include "psiforge/ternary_operator.hpp"

#include <optional>
#include <vector>

namespace psiforge {

/// A triple of point sets. As a frame argument every component must be
/// non-empty; as an argument of the set operators components may be empty.
struct ClosedTriple {
    PointSet y1 = 0, y2 = 0, y3 = 0;

    [[nodiscard]] bool nonempty() const { return y1 != 0 && y2 != 0 && y3 != 0; }
    [[nodiscard]] bool subset_of(const ClosedTriple& o) const {
        return (y1 & ~o.y1) == 0 && (y2 & ~o.y2) == 0 && (y3 & ~o.y3) == 0;
    }
    friend auto operator<=>(const ClosedTriple&, const ClosedTriple&) = default;
};

/// A finite PSI-frame candidate: points {0..m-1} with the discrete topology
/// and R a subset of X x C0(X)^3, stored as a bitset indexed by
/// x * s^3 + triple_index, s = 2^m - 1.
class PsiFrame {
  public:
    static constexpr unsigned kMaxPoints = 6;

    /// Empty relation. Throws SizeError outside 1..kMaxPoints.
    explicit PsiFrame(unsigned points);
    /// Throws InputError if `r` has the wrong size.
    PsiFrame(unsigned points, Bits r);

    [[nodiscard]] unsigned points() const { return points_; }
    [[nodiscard]] PointSet whole() const { return static_cast<PointSet>((1U << points_) - 1); }
    /// Number of non-empty subsets.
    [[nodiscard]] std::size_t subsets() const { return whole(); }
    [[nodiscard]] std::size_t triples() const { return subsets() * subsets() * subsets(); }
    [[nodiscard]] std::size_t triple_index(const ClosedTriple& y) const {
        return ((static_cast<std::size_t>(y.y1) - 1) * subsets() + (y.y2 - 1)) * subsets() + (y.y3 - 1);
    }
    [[nodiscard]] ClosedTriple triple_at(std::size_t t) const;

    [[nodiscard]] bool related(unsigned x, const ClosedTriple& y) const {
        return y.nonempty() && r_[x * triples() + triple_index(y)];
    }
    /// Throws InputError for an empty component or a point out of range.
    void set(unsigned x, const ClosedTriple& y, bool value = true);

    [[nodiscard]] const Bits& bits() const { return r_; }

    friend bool operator==(const PsiFrame&, const PsiFrame&) = default;

  private:
    unsigned points_;
    Bits r_;
};

/// L_U: the non-empty triples meeting U in some component, in index order.
std::vector<ClosedTriple> l_set(const PsiFrame& frame, const ClosedTriple& u);

/// {x : some Y in R(x) lies inside U componentwise}.
PointSet diamond_R(const PsiFrame& frame, const ClosedTriple& u);

/// {x : R(x) is inside L_U}.
PointSet box_R(const PsiFrame& frame, const ClosedTriple& u);

/// R^{-1}(Y) = {x : (x, Y) in R}; empty when a component of Y is empty.
PointSet preimage(const PsiFrame& frame, const ClosedTriple& y);

/// R(x) upward closed under componentwise inclusion for every x.
bool is_monotone_frame(const PsiFrame& frame);

/// Cap for the definitional DF2 sweep over all clopen triples; above it the
/// equivalent upward-closure form is used.
inline constexpr unsigned kDefinitionalDf2MaxPoints = 4;

/// DF1 (reported as trivially satisfied on finite discrete spaces), DF2, DF3.
CheckReport check_psi_frame(const PsiFrame& frame);

inline constexpr unsigned kPif1MaxPoints = 4;

/// PIF1-PIF4 with cl the identity. Throws PreconditionError unless the frame
/// passes check_psi_frame, SizeError above kPif1MaxPoints.
CheckReport check_psi_space(const PsiFrame& frame);

/// The stronger condition R^{-1}(Y1, Y2, cl(Y1^c)) = empty, one row.
CheckReport check_ecua_rem(const PsiFrame& frame);

enum class DualMode {
    Auto,         ///< Reduced when the operator passes check_3bamo.
    Reduced,      ///< u <= dia(join Y1, join Y2, join Y3).
    Definitional  ///< every triple of the filter product lands in u.
};

/// Points are the ultrafilters (atoms); Y_i are atom sets.
PsiFrame dual_frame(const TernaryOperator& op, DualMode mode = DualMode::Auto);

/// (powerset of X, diamond_R) with no preconditions.
TernaryOperator complex_operator(const PsiFrame& frame);

/// complex_operator after checking that the frame is a PSI-frame
/// (PreconditionError otherwise). Self-checks MO1-MO4 and, on PSI-spaces,
/// PI1-PI4 (InternalError on failure).
TernaryOperator complex_algebra(const PsiFrame& frame);

/// On the dual frame of a 3BAMO, with beta(a) the atom set of a: rows
/// dia-beta (dia_R(beta a, beta b, beta c) = beta(dia(a,b,c))), box-beta (the
/// same for box) and box-dia-dual (box_R(U) = complement of dia_R of the
/// complements). Witnesses are (a, b, c). Throws PreconditionError unless
/// op passes check_3bamo.
CheckReport stone_commutation_check(const TernaryOperator& op);

/// beta is an isomorphism op -> complex_operator(dual_frame(op)); one row
/// "double-dual" with witness (a, b, c). Throws PreconditionError unless op
/// passes check_3bamo.
CheckReport double_dual_check(const TernaryOperator& op);

struct TotalityVerdict {
    bool total = true;
    /// (Y1, Y2, Y3, x, y): (x, Y) in R but (y, Y) not.
    std::optional<std::array<std::uint32_t, 5>> witness;
};

TotalityVerdict is_total(const PsiFrame& frame);

/// Search for a finite frame passing DF1-DF3 and PIF2 but failing the
/// stronger condition. Candidate frames are seeded random upward-closed
/// relations on 1-3 points plus the dual frames of `pool`.
struct SeparationSearch {
    std::size_t frames_examined = 0;
    std::size_t frames_passing_pif2 = 0;
    std::optional<PsiFrame> separating;
};

SeparationSearch search_pif2_separation(std::span<const TernaryOperator> pool, std::size_t random_frames,
                                        std::uint64_t seed);

} // namespace psiforge
