#pragma once

#include <optional>
#include <vector>

#include "wondertope/rat.hpp"

namespace wt {

using VecQ = std::vector<Rat>;

/// Dense exact-rational matrix, row-major.
struct MatQ {
    std::vector<VecQ> rows;

    MatQ() = default;
    MatQ(size_t r, size_t c) : rows(r, VecQ(c, Rat(0))) {}
    explicit MatQ(std::vector<VecQ> rs) : rows(std::move(rs)) {}

    size_t nrows() const { return rows.size(); }
    size_t ncols() const { return rows.empty() ? 0 : rows[0].size(); }
    VecQ& operator[](size_t i) { return rows[i]; }
    const VecQ& operator[](size_t i) const { return rows[i]; }
};

/// In-place reduced row echelon form; returns pivot column indices.
std::vector<size_t> rref(MatQ& m);

size_t rank(MatQ m);

Rat det(MatQ m);

/// One solution of A x = b, if consistent (free variables set to 0).
std::optional<VecQ> solve(const MatQ& a, const VecQ& b);

/// Basis of the right nullspace of A.
std::vector<VecQ> nullspace(const MatQ& a);

VecQ add(const VecQ& a, const VecQ& b);
VecQ sub(const VecQ& a, const VecQ& b);
VecQ scale(const VecQ& a, const Rat& c);
Rat dot(const VecQ& a, const VecQ& b);
bool is_zero(const VecQ& a);

/// Scales to coprime integer entries; sign of the first nonzero entry
/// is preserved.
VecQ primitive_vector(const VecQ& v);

/// Membership of v in the cone generated by rays (exact; enumerates
/// linearly independent subsets per Caratheodory).
bool in_cone(const VecQ& v, const std::vector<VecQ>& rays);

/// True when the cone generated by the rays contains no line, i.e. zero is
/// not a nontrivial nonnegative combination of the rays.
bool cone_is_pointed(const std::vector<VecQ>& rays);

}  // namespace wt
