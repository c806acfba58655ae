#pragma once

#include "wondertope/blowup.hpp"
#include "wondertope/matroid.hpp"

namespace wt {

/// Braid-arrangement data for n marked points (plus the three fixed ones):
/// hyperplane normals in the quotient coordinates, the lattice of flats, and
/// the minimal building set of one-big-block partitions.
struct BraidData {
    size_t n = 0;
    std::vector<VecQ> normals;                    // one per pair i<j, in R^{n-1}
    std::vector<std::pair<int, int>> pairs;       // aligned with normals (1-based)
    FlatLattice lattice;                          // isomorphic to the partition lattice
    std::vector<FlatId> minimal;                  // one block of size >= 2
};

BraidData braid_data(size_t n);

/// Chart variables z1..z_{n-2} of the moduli chart.
std::vector<std::string> moduli_chart(size_t n);

/// Geometric subspace of a partition flat inside the moduli chart.
LinearSubspace flat_subspace(const BraidData& bd, FlatId f);

/// The open region 0 < z1 < ... < z_{n-2} < 1 as a polytope.
Polytope order_region(size_t n);

/// The same region after the unimodular change x1 = z1, xi = zi - z_{i-1}:
/// the simplex {xi > 0, sum < 1}.
Polytope simplex_region(size_t n);

/// The change of coordinates from the z-chart to the x-chart.
PolyMap region_chart_change(size_t n);

/// 1 / (z1 (z2-z1) ... (1 - z_{n-2})) on the moduli chart.
TopForm parke_taylor(size_t n);

/// The canonical form of the order region equals the Parke-Taylor form, and
/// the pullback of the simplex form under the chart change reproduces it.
VerificationReport verify_parke_taylor(size_t n);

/// |B^min| - 1 (the top flat is projectively empty); checked against
/// 2^n - n - 2 and the vertex count of the minimal nested set complex.
struct DivisorCount {
    size_t count = 0;
    bool matches_formula = false;
    bool matches_nested_vertices = false;
};
DivisorCount divisor_count(size_t n);

/// The n = 4 pentagon: blowing up the two vertex flats of the order triangle
/// yields exactly five simple-pole boundary divisors with factoring residues,
/// and the canonical form is the Parke-Taylor form.
VerificationReport verify_m05_pentagon();

}  // namespace wt
