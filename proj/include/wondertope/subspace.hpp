#pragma once

#include <optional>
#include <string>
#include <vector>

#include <functional>

#include "wondertope/algebra.hpp"
#include "wondertope/linalg.hpp"

namespace wt {

/// Projective linear subspace of the space carrying the given affine chart.
/// Stored as independent homogeneous linear equations in the coordinates
/// (X0, x1, ..., xn), X0 the homogenizing coordinate; kept in canonical RREF
/// so equality is structural. The projectively empty subspace (only the
/// origin upstairs) is allowed.
class LinearSubspace {
  public:
    LinearSubspace() = default;
    LinearSubspace(std::vector<std::string> chart_vars, MatQ homogeneous_equations);

    /// From affine-linear forms (as polynomials in the chart) that vanish on
    /// the subspace.
    static LinearSubspace from_affine_equations(const std::vector<std::string>& chart_vars,
                                                const std::vector<MPoly>& equations);
    /// Span of the given affine points of the chart.
    static LinearSubspace span_of_points(const std::vector<std::string>& chart_vars,
                                         const std::vector<VecQ>& points);

    const std::vector<std::string>& chart_vars() const { return chart_vars_; }
    const MatQ& equations() const { return eqs_; }

    size_t ambient_dim() const { return chart_vars_.size(); }          // n
    size_t codim() const { return eqs_.nrows(); }                      // in V = R^{n+1}
    int dim() const { return int(ambient_dim()) - int(codim()); }      // projective; -1 when empty
    bool is_empty() const { return dim() < 0; }
    bool is_hyperplane() const { return codim() == 1; }

    /// True when the subspace has points inside the affine chart.
    bool meets_chart() const;

    bool contains_point(const VecQ& homogeneous_point) const;
    bool contains(const LinearSubspace& other) const;

    LinearSubspace intersect(const LinearSubspace& other) const;

    bool operator==(const LinearSubspace& o) const;
    bool operator<(const LinearSubspace& o) const;  // deterministic ordering

    /// Equations as affine-linear polynomials in the chart variables.
    std::vector<MPoly> affine_equations() const;

    std::string str() const;

  private:
    std::vector<std::string> chart_vars_;
    MatQ eqs_;  // canonical RREF, no zero rows
};

/// Invertible affine change of chart u = A*(1,x) making a subspace the
/// coordinate subspace {u_{k+1} = ... = u_n = 0}.  Row 0 of the homogeneous
/// matrix is (1,0,...,0): the homogenizing coordinate is preserved, so
/// finite points stay finite.
struct ChartStandardization {
    std::vector<std::string> old_vars;
    std::vector<std::string> new_vars;
    MatQ forward;   // (n+1)x(n+1), maps (1,x) to (1,u)
    MatQ backward;  // inverse
    size_t center_dim_k;  // subspace becomes {u_{k+1..n} = 0}

    PolyMap new_to_old() const;  // substitution map: old coords in terms of new
    PolyMap old_to_new() const;
    VecQ push_point(const VecQ& homogeneous_point) const;  // forward image
};

/// Builds the standardization for a subspace that meets the chart.
/// New variables are named by `namer(i)` for positions 1..n.
ChartStandardization standardize(const LinearSubspace& w,
                                 const std::function<std::string(size_t)>& namer);

}  // namespace wt
