#pragma once

#include "wondertope/polytope.hpp"
#include "wondertope/report.hpp"

namespace wt {

/// Ordered family of proper linear subspaces (projectively empty members are
/// allowed; they matter for the intersection condition but never produce
/// divisors). Order respects inclusions: contained subspaces come first.
struct GeomBuildingSet {
    std::vector<std::string> chart_vars;
    std::vector<LinearSubspace> subspaces;

    GeomBuildingSet() = default;
    GeomBuildingSet(std::vector<std::string> vars, std::vector<LinearSubspace> subs);

    size_t size() const { return subspaces.size(); }
    void sort_inclusions_first();
};

/// Projective dimension of P cap PF (-1 when empty).
int intersection_dim(const Polytope& p, const LinearSubspace& f);

/// Condition (1): every member meets P in a (possibly empty) face.
VerificationReport check_face_condition(const Polytope& p, const GeomBuildingSet& b);

/// Condition (2): every facet hyperplane of P belongs to B.
bool check_facet_hyperplanes(const Polytope& p, const GeomBuildingSet& b);

/// Condition (3): for every intersection L of members, the minimal members
/// containing L have codimensions summing to codim L. Codimensions are taken
/// in V (so the projectively empty subspace participates consistently).
VerificationReport check_building_set(const GeomBuildingSet& b);

/// Restriction of B and P to a facet hyperplane H of P, in H's adapted chart:
/// B_H = {F cap PH : F in B, F not containing PH}, deduplicated.
struct FacetRestriction {
    Polytope polytope;           // P_H
    GeomBuildingSet building_set;  // B_H
};
FacetRestriction restrict_to_facet(const Polytope& p, const GeomBuildingSet& b,
                                   const LinearSubspace& h);

/// B_W (inside PW, face chart) and B^W (inside P(V/W), quotient chart) for
/// W a member of B.
GeomBuildingSet restrict_inside(const GeomBuildingSet& b, const LinearSubspace& w);
GeomBuildingSet restrict_quotient(const GeomBuildingSet& b, const LinearSubspace& w,
                                  int chart_index = -1);

/// Recursive well-adaptedness: every facet restriction B_H is a building set
/// satisfying the face condition on P_H and is itself well-adapted.
VerificationReport check_well_adapted(const Polytope& p, const GeomBuildingSet& b);

/// Predicted boundary divisors of the wondertope.
struct PredictedDivisor {
    bool exceptional;          // E_F for F in B vs. untouched facet hyperplane
    LinearSubspace subspace;   // F, or the facet hyperplane
    std::string label;
};
std::vector<PredictedDivisor> predicted_boundary(const Polytope& p, const GeomBuildingSet& b);

}  // namespace wt
