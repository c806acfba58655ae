#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wondertope/linalg.hpp"
#include "wondertope/report.hpp"

namespace wt {

using FlatId = size_t;

/// Geometric lattice of flats of a matroid on a ground set of at most 31
/// elements. Flats are stored as bitsets; joins are closures of unions and
/// meets are intersections. Construction validates the lattice axioms.
class FlatLattice {
  public:
    static FlatLattice from_arrangement(const std::vector<VecQ>& normals);
    static FlatLattice partition_lattice(size_t n);  // braid matroid on the C(n,2) edges
    static FlatLattice boolean_lattice(size_t n);
    static FlatLattice uniform_lattice(size_t rank, size_t n);
    static FlatLattice from_flats(size_t ground, std::vector<uint32_t> flats);

    size_t size() const { return flats_.size(); }
    size_t ground() const { return ground_; }
    uint32_t flat(FlatId f) const { return flats_[f]; }
    int rank(FlatId f) const { return rank_[f]; }
    int rank() const { return rank_[top_]; }
    FlatId bottom() const { return bottom_; }
    FlatId top() const { return top_; }

    bool leq(FlatId a, FlatId b) const { return (flats_[a] & ~flats_[b]) == 0; }
    bool lt(FlatId a, FlatId b) const { return a != b && leq(a, b); }
    bool incomparable(FlatId a, FlatId b) const { return !leq(a, b) && !leq(b, a); }
    FlatId join(FlatId a, FlatId b) const { return join_[a][b]; }
    FlatId meet(FlatId a, FlatId b) const { return meet_[a][b]; }

    std::optional<FlatId> find(uint32_t set) const;
    FlatId closure(uint32_t set) const;  // smallest flat containing the set
    std::vector<FlatId> atoms() const;
    std::vector<FlatId> interval(FlatId lo, FlatId hi) const;

    /// For the partition lattice: flats as set partitions of [n].
    static uint32_t partition_to_edges(const std::vector<std::vector<int>>& blocks, size_t n);
    std::vector<std::vector<int>> edges_to_partition(uint32_t edges, size_t n) const;

  private:
    size_t ground_ = 0;
    std::vector<uint32_t> flats_;  // sorted by (rank, value)
    std::vector<int> rank_;
    std::vector<std::vector<FlatId>> join_, meet_;
    FlatId bottom_ = 0, top_ = 0;

    void finish(const char* what);  // sorts, builds tables, validates
};

/// Building-set test on an interval [lo, hi] of the lattice (the whole
/// lattice by default): for every X in the interval above lo, the canonical
/// join map from the product of [lo, X_j] over the factors X_j = maximal
/// members below X is an order isomorphism onto [lo, X]. Returns the first
/// failing X as witness.
std::pair<bool, std::optional<FlatId>> is_building_set(const FlatLattice& l,
                                                       const std::vector<FlatId>& b);
std::pair<bool, std::optional<FlatId>> is_building_set_interval(const FlatLattice& l,
                                                                const std::vector<FlatId>& b,
                                                                FlatId lo, FlatId hi);

/// Flats whose lower interval is not a nontrivial product (equivalently,
/// flats with connected restriction).
std::vector<FlatId> minimal_building_set(const FlatLattice& l);
std::vector<FlatId> maximal_building_set(const FlatLattice& l);

/// Nested-set predicate: every incomparable subset of size >= 2 joins
/// outside the member list.
bool is_nested(const FlatLattice& l, const std::vector<FlatId>& members,
               const std::vector<FlatId>& subset);

struct NestedComplex {
    std::vector<FlatId> vertices;            // members minus the maximal ones
    std::vector<std::vector<FlatId>> faces;  // all nested subsets, sorted, incl. {}
};

/// All nested subsets of members \ max(members); error if not a building set.
NestedComplex nested_set_complex(const FlatLattice& l, const std::vector<FlatId>& members);

/// Link of F: faces I with F not in I and I + {F} nested.
NestedComplex link(const FlatLattice& l, const std::vector<FlatId>& members,
                   const NestedComplex& n, FlatId f);

struct RestrictContract {
    std::vector<FlatId> b_res;   // B^F = members below F
    std::vector<FlatId> b_con;   // B_F = {X v F : X not below F}, flats above F
    std::vector<FlatId> part1;   // (B_F)_1 = members strictly above F
    std::vector<FlatId> part2;   // (B_F)_2 = joins X v F outside the members
};
RestrictContract restrict_contract(const FlatLattice& l, const std::vector<FlatId>& members,
                                   FlatId f);

/// tau(X): X when comparable with F, X v F otherwise.
FlatId tau(const FlatLattice& l, const std::vector<FlatId>& members, FlatId f, FlatId x);

/// Product theorem: tau is a vertex bijection from the link of F onto the
/// disjoint union of the vertices of N(B^F) and N(B_F), and identifies the
/// link with the product complex face-for-face, both directions.
VerificationReport verify_product_theorem(const FlatLattice& l, const std::vector<FlatId>& members,
                                          FlatId f);

/// Helpers for naming partition flats like "123|45|6".
std::string partition_string(const FlatLattice& l, FlatId f, size_t n);
std::optional<FlatId> parse_partition_flat(const FlatLattice& l, const std::string& s, size_t n);

}  // namespace wt
