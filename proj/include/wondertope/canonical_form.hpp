#pragma once

#include "wondertope/polytope.hpp"
#include "wondertope/report.hpp"

namespace wt {

/// Canonical form of a full-dimensional simplex on its chart, oriented by the
/// standard orientation of the chart's ordered variables (rays reordered to
/// positive determinant first). Coefficient is 1/(det * product of the n+1
/// facet forms); facets on the hyperplane at infinity contribute no pole.
TopForm simplex_form(const Simplex& s);

/// Sum of simplex forms over a pulling triangulation.
TopForm polytope_form(const Polytope& p, const std::vector<size_t>& pull_order = {});

/// Residue of the canonical form along facet i, on the chart obtained by
/// eliminating the facet form's pivot variable.
TopForm facet_residue(const Polytope& p, size_t facet_index);

/// Iterated residue along a sequence of affine-linear divisors; later
/// divisors are restricted through each elimination.
TopForm iterated_residue(TopForm w, std::vector<RatFunc> divisors);

/// Recursive positive-geometry check: simple poles exactly on facet
/// hyperplanes, residues matching the facets' canonical forms with induced
/// orientation, terminating at +-1 on the vertices. One check per stratum.
VerificationReport verify_recursion(const Polytope& p);

}  // namespace wt
