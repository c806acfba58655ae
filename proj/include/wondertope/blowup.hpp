#pragma once

#include "wondertope/building_set.hpp"
#include "wondertope/canonical_form.hpp"

namespace wt {

/// One affine chart of the blow-up of the ambient chart along a linear
/// center of codimension c >= 2. After the standardizing coordinate change
/// the center is {u_{k+1} = ... = u_n = 0}; the chart dehomogenizes the
/// exceptional P^{c-1} at quotient position j, and the blow-down map reads
///   (u_1..u_k, y_.., e, y_..) |-> (u_1..u_k, y_{k+1} e, .., e, .., y_n e)
/// in standardized coordinates, conjugated back by the coordinate change.
struct BlowupChart {
    LinearSubspace center;
    ChartStandardization coord_change;  // includes any sign flip on u_j
    size_t k = 0;                       // dim of the center block
    size_t c = 0;                       // codimension of the center
    size_t j = 0;                       // dehomogenized quotient position (1-based)
    std::string exceptional_var;
    std::vector<std::string> source_vars;
    PolyMap map;  // source chart -> ambient chart

    /// Rational inverse on the dense open where the blow-down is invertible.
    PolyMap section() const;
};

/// Chart of Bl_W along a standardized center. `chart_index` picks j
/// (default: last quotient position); `flip` negates u_j first; `tag` is
/// appended to the generated variable names.
BlowupChart blowup_chart(const LinearSubspace& w, int chart_index = -1, bool flip = false,
                         const std::string& tag = "");

/// Chart with the sign and dehomogenization arranged so the exceptional
/// variable is nonnegative on the strict transform of int(P).
BlowupChart blowup_chart_for(const Polytope& p, const LinearSubspace& w, int chart_index = -1,
                             const std::string& tag = "");

/// Strict transform of a polynomial on the target chart: substitute the
/// blow-down map and cancel the exceptional variable's maximal power.
MPoly strict_transform_poly(const MPoly& f, const BlowupChart& step);

/// Sequential blow-up along an inclusion-ordered list of centers, on one
/// chart path. Codimension-1 and projectively empty members are isomorphisms
/// and are skipped (their indices are recorded).
struct BlowupSequence {
    std::vector<BlowupChart> steps;
    std::vector<size_t> blown;    // indices into the input list, step order
    std::vector<size_t> skipped;  // hyperplanes and empty members
    PolyMap composed;             // final chart -> ambient chart

    const std::vector<std::string>& final_vars() const { return composed.source_vars; }
    /// Exceptional divisor of step s expressed in the final chart.
    MPoly exceptional_in_final_chart(size_t s) const;
    PolyMap section() const;
};

BlowupSequence sequential_blowup(const GeomBuildingSet& b, const std::vector<int>& chart_path = {});

/// The fundamental computation at a single center: pole order of the pulled
/// back canonical form along E, and when dim P_W = dim PW the exact residue
/// factorization Res_E pi*Omega = Omega(P_W) wedge Omega(P^W).
VerificationReport verify_fundamental(const Polytope& p, const LinearSubspace& w,
                                      int chart_index = -1);

/// Wondertope verification: per-divisor residue factorizations via the
/// fundamental computation, facet residues in the base chart, and the pole
/// census of the sequential pullback on a chart path.
VerificationReport verify_wondertope(const Polytope& p, const GeomBuildingSet& b,
                                     const std::vector<int>& chart_path = {});

}  // namespace wt
