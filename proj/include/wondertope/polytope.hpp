#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wondertope/subspace.hpp"

namespace wt {

/// Simplex in a chart, as homogeneous rays (coordinate 0 = homogenizer,
/// primitive integer scaling). Rays with vanishing first coordinate are
/// points on the hyperplane at infinity; bounded simplices have none.
struct Simplex {
    std::vector<std::string> chart_vars;
    std::vector<VecQ> rays;  // dim+1 linearly independent rays

    int dim() const { return int(rays.size()) - 1; }
    bool is_bounded() const;
    /// Euclidean volume; all rays must be finite.
    Rat volume() const;
    /// Determinant of the ray matrix (rows in stored order).
    Rat orientation_det() const;
};

struct Triangulation {
    std::vector<Simplex> simplices;
};

/// Face of a polytope: ray indices, tight facet indices, projective dim.
struct Face {
    std::vector<size_t> rays;
    std::vector<size_t> tight_facets;
    int dim = -1;
};

/// Exact polytope in an affine chart of projective space, stored as the
/// pointed homogenization cone: extreme rays plus supporting facet
/// functionals (relative to the span when not full-dimensional).
/// User-facing constructors require bounded input; polytopes touching the
/// hyperplane at infinity (the standard simplex, normal polytopes) only
/// arise internally.
class Polytope {
  public:
    Polytope() = default;

    static Polytope from_vertices(std::vector<std::string> chart_vars, const std::vector<VecQ>& points);
    static Polytope from_inequalities(std::vector<std::string> chart_vars, const std::vector<MPoly>& ineqs);
    /// Internal: homogeneous rays, infinity allowed.
    static Polytope from_rays(std::vector<std::string> chart_vars, std::vector<VecQ> rays);
    /// Standard projective simplex on an n-variable chart: the closure of the
    /// positive orthant, one facet on the hyperplane at infinity.
    static Polytope standard_simplex(size_t n);
    static Polytope empty(std::vector<std::string> chart_vars);

    const std::vector<std::string>& chart_vars() const { return chart_vars_; }
    const std::vector<VecQ>& rays() const { return rays_; }
    const std::vector<VecQ>& facets() const { return facets_; }
    const MatQ& span_equations() const { return span_eqs_; }

    int dim() const { return dim_; }
    size_t ambient_dim() const { return chart_vars_.size(); }
    bool is_empty() const { return rays_.empty(); }
    bool is_full_dimensional() const { return dim_ == int(ambient_dim()); }
    bool is_bounded() const;
    bool is_simplex() const { return int(rays_.size()) == dim_ + 1; }

    /// Finite vertices in affine chart coordinates.
    std::vector<VecQ> affine_vertices() const;
    /// Facet inequalities as affine-linear polynomials (>= 0 on P).
    std::vector<MPoly> inequality_polys() const;
    MPoly facet_poly(size_t i) const;

    bool contains_affine(const VecQ& point) const;
    /// A relative-interior rational point (finite part); polytope nonempty.
    VecQ relative_interior_point() const;
    /// Deterministic list of distinct relative-interior points.
    std::vector<VecQ> interior_sample(size_t count, uint64_t seed = 0) const;

    Rat volume() const;

    /// All faces including the polytope itself and the empty face; sorted by
    /// dimension then ray set.
    std::vector<Face> face_lattice() const;

    /// Pulling triangulation; `pull_order` permutes ray indices (default
    /// identity = lowest-index vertex first).
    Triangulation triangulate(const std::vector<size_t>& pull_order = {}) const;

    bool operator==(const Polytope& o) const {
        return chart_vars_ == o.chart_vars_ && rays_ == o.rays_ && facets_ == o.facets_;
    }

    std::string str() const;

  private:
    std::vector<std::string> chart_vars_;
    std::vector<VecQ> rays_;       // canonical primitive, sorted
    std::vector<VecQ> facets_;     // canonical primitive, sorted; >= 0 on cone
    MatQ span_eqs_;                // functionals vanishing on the span
    int dim_ = -1;

    void finish_from_rays();
};

/// Result of the face test for a subspace.
struct FaceQuery {
    bool is_face = false;
    /// Ray indices of the face P cap PS when it is one (empty face = {}).
    std::vector<size_t> face_rays;
    /// Affine witness point violating faceness otherwise.
    std::optional<VecQ> witness;
};

/// Is the intersection of P with the subspace a (possibly empty) face of P?
FaceQuery is_face_of(const Polytope& p, const LinearSubspace& s);

/// Extreme rays of the cone over P intersected with the subspace.
std::vector<VecQ> cone_section_rays(const Polytope& p, const LinearSubspace& s);

/// Face of P relative to W, in coordinates adapted to W (chart u1..uk).
/// Precondition: is_face_of(p, w).
Polytope face_relative(const Polytope& p, const LinearSubspace& w);

/// Normal polytope of P relative to W in the quotient chart: coordinates
/// named y{i}, dehomogenized at quotient coordinate `chart_index`
/// (1-based among the c quotient coordinates; default the last).
/// Empty when P cap PW is empty.
Polytope normal_polytope(const Polytope& p, const LinearSubspace& w, int chart_index = -1);

/// Names used by the adapted charts.
std::string face_chart_name(size_t i);    // "u{i}"
std::string normal_chart_name(size_t i);  // "y{i}"

/// Canonical ray scaling: leading 1 for finite rays, primitive otherwise.
VecQ canonical_ray(const VecQ& r);

/// Shared quotient-chart data for normal polytopes and blow-up charts:
/// standardized coordinates for W, the dehomogenized quotient position j,
/// and a sign flip making the polytope's cone image nonnegative there.
struct QuotientChart {
    ChartStandardization std_;
    size_t k = 0;     // dim of the standardized center block
    size_t j = 0;     // 1-based quotient position being dehomogenized
    bool flip = false;
    std::vector<std::string> vars;  // chart of P^W

    /// Quotient image of a homogeneous ray, dehomogenizer first.
    VecQ project(const VecQ& ray) const;
};

/// chart_index = -1 picks the largest quotient position that is one-signed
/// on the image cone; a concrete index insists on that position (error when
/// the cone meets both sides of it).
QuotientChart quotient_chart(const Polytope& p, const LinearSubspace& w, int chart_index = -1);

/// Triangulation of P_W induced by a triangulation of P (simplices meeting
/// W in a face of top dimension), in the adapted chart of face_relative.
Triangulation induced_face_triangulation(const Triangulation& t, const Polytope& p,
                                         const LinearSubspace& w);

/// Triangulation of P^W induced by the simplices whose face at W equals F
/// (a simplex of the induced face triangulation, given in adapted coords).
/// Requires dim P_W = dim PW.
Triangulation induced_normal_triangulation(const Triangulation& t, const Polytope& p,
                                           const LinearSubspace& w, const Simplex& f,
                                           int chart_index = -1);

/// Exhaustive validity check: simplices full-dimensional in P's span,
/// pairwise intersections common faces, and the union covers P (interior
/// facet pairing; volume cross-check when bounded).
bool triangulation_is_valid(const Polytope& p, const Triangulation& t, std::string* why = nullptr);

}  // namespace wt
