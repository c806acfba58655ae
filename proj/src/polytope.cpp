#include "wondertope/polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace wt {

namespace {

VecQ homogenize(const VecQ& p) {
    VecQ h(p.size() + 1);
    h[0] = 1;
    for (size_t i = 0; i < p.size(); ++i) h[i + 1] = p[i];
    return h;
}

VecQ dehomogenize(const VecQ& h) {
    if (h[0] == 0) throw error("point on the hyperplane at infinity");
    VecQ p(h.size() - 1);
    for (size_t i = 1; i < h.size(); ++i) p[i - 1] = h[i] / h[0];
    return p;
}

}  // namespace

VecQ canonical_ray(const VecQ& r) {
    if (r[0] != 0) {
        VecQ s(r.size());
        for (size_t i = 0; i < r.size(); ++i) s[i] = r[i] / r[0];
        return s;
    }
    return primitive_vector(r);
}

namespace {

// Orthonormal-free span basis via row reduction.
MatQ span_basis(const std::vector<VecQ>& rays) {
    MatQ m(rays);
    auto pivots = rref(m);
    MatQ basis;
    for (size_t i = 0; i < pivots.size(); ++i) basis.rows.push_back(m[i]);
    return basis;
}

// Coordinates of x in the span basis (rows of B); x must lie in the span.
VecQ span_coords(const MatQ& basis, const VecQ& x) {
    MatQ a(x.size(), basis.nrows());
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < basis.nrows(); ++j) a[i][j] = basis[j][i];
    auto c = solve(a, x);
    if (!c) throw error("point outside span");
    return *c;
}

std::vector<VecQ> dedupe_sorted(std::vector<VecQ> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Extreme rays: r is extreme iff it is not a nonnegative combination of the
// others.
std::vector<VecQ> extreme_rays(std::vector<VecQ> rays) {
    rays = dedupe_sorted(std::move(rays));
    std::vector<VecQ> out;
    for (size_t i = 0; i < rays.size(); ++i) {
        std::vector<VecQ> others;
        for (size_t j = 0; j < rays.size(); ++j)
            if (j != i) others.push_back(rays[j]);
        if (!in_cone(rays[i], others)) out.push_back(rays[i]);
    }
    return out;
}

// Rays of the cone {ineqs >= 0, eqs = 0} in R^m: basic solutions from rank
// m-1 tight subsets.
std::vector<VecQ> enumerate_cone_rays(const std::vector<VecQ>& ineqs, const MatQ& eqs, size_t m) {
    std::vector<VecQ> rays;
    size_t base_rank = rank(eqs);
    if (base_rank >= m) return {};
    size_t need = m - 1 - base_rank;  // inequality rows to tighten
    std::vector<size_t> idx(ineqs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<size_t> cur;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (cur.size() == need) {
            MatQ sys = eqs;
            for (auto i : cur) sys.rows.push_back(ineqs[i]);
            auto ns = nullspace(sys);
            if (ns.size() != 1) return;
            for (VecQ r : {ns[0], scale(ns[0], Rat(-1))}) {
                bool ok = true;
                for (auto& f : ineqs)
                    if (dot(f, r) < 0) { ok = false; break; }
                if (ok) rays.push_back(primitive_vector(r));
            }
            return;
        }
        for (size_t i = start; i < idx.size(); ++i) {
            cur.push_back(idx[i]);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return extreme_rays(std::move(rays));
}

std::vector<size_t> sorted_intersection(const std::vector<size_t>& a, const std::vector<size_t>& b) {
    std::vector<size_t> r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

MPoly functional_to_poly(const std::vector<std::string>& vars, const VecQ& f) {
    MPoly p(vars, f[0]);
    for (size_t i = 0; i < vars.size(); ++i) {
        if (f[i + 1] == 0) continue;
        p = p + MPoly::var(vars, vars[i]) * f[i + 1];
    }
    return p;
}

}  // namespace

bool Simplex::is_bounded() const {
    return std::all_of(rays.begin(), rays.end(), [](const VecQ& r) { return r[0] != 0; });
}

Rat Simplex::volume() const {
    if (!is_bounded()) throw error("volume of unbounded simplex");
    if (rays.size() != chart_vars.size() + 1) throw error("volume of non-full-dimensional simplex");
    size_t n = chart_vars.size();
    MatQ m(n, n);
    VecQ v0 = dehomogenize(rays[0]);
    for (size_t i = 1; i <= n; ++i) {
        VecQ vi = dehomogenize(rays[i]);
        for (size_t j = 0; j < n; ++j) m[i - 1][j] = vi[j] - v0[j];
    }
    Rat d = det(m);
    if (d < 0) d = -d;
    Rat fact = 1;
    for (size_t i = 2; i <= n; ++i) fact *= int(i);
    return d / fact;
}

Rat Simplex::orientation_det() const {
    MatQ m(rays);
    return det(m);
}

void Polytope::finish_from_rays() {
    rays_ = extreme_rays(std::move(rays_));
    std::sort(rays_.begin(), rays_.end());
    size_t m = chart_vars_.size() + 1;
    if (rays_.empty()) {
        dim_ = -1;
        facets_.clear();
        span_eqs_ = MatQ(0, m);
        return;
    }
    MatQ basis = span_basis(rays_);
    size_t d = basis.nrows();
    dim_ = int(d) - 1;
    // Span equations: nullspace of the ray span, as functionals.
    {
        MatQ rm(rays_);
        span_eqs_ = MatQ();
        for (auto& v : nullspace(rm)) span_eqs_.rows.push_back(v);
        rref(span_eqs_);
    }
    facets_.clear();
    if (d < 2) return;  // a single projective point has no relative facets
    std::vector<VecQ> coords;
    for (auto& r : rays_) coords.push_back(span_coords(basis, r));
    std::set<VecQ> seen;
    std::vector<size_t> cur;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (cur.size() == d - 1) {
            MatQ sub;
            for (auto i : cur) sub.rows.push_back(coords[i]);
            auto ns = nullspace(sub);
            if (ns.size() != 1) return;
            VecQ fb = primitive_vector(ns[0]);
            int lo = 0, hi = 0;
            for (auto& c : coords) {
                int s = sign(dot(fb, c));
                lo = std::min(lo, s);
                hi = std::max(hi, s);
            }
            if (lo < 0 && hi > 0) return;  // not supporting
            if (lo < 0) fb = scale(fb, Rat(-1));
            if (seen.count(fb)) return;
            seen.insert(fb);
            // Lift: solve basis * F = fb.
            auto F = solve(basis, fb);
            if (!F) throw error("facet lift failed");
            facets_.push_back(primitive_vector(*F));
            return;
        }
        for (size_t i = start; i < rays_.size(); ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    facets_ = dedupe_sorted(std::move(facets_));
}

Polytope Polytope::from_vertices(std::vector<std::string> chart_vars, const std::vector<VecQ>& points) {
    Polytope p;
    p.chart_vars_ = std::move(chart_vars);
    for (auto& pt : points) {
        if (pt.size() != p.chart_vars_.size()) throw error("vertex arity mismatch");
        p.rays_.push_back(homogenize(pt));
    }
    p.finish_from_rays();
    return p;
}

Polytope Polytope::from_rays(std::vector<std::string> chart_vars, std::vector<VecQ> rays) {
    Polytope p;
    p.chart_vars_ = std::move(chart_vars);
    for (auto& r : rays) {
        if (r.size() != p.chart_vars_.size() + 1) throw error("ray arity mismatch");
        if (is_zero(r)) continue;
        if (r[0] < 0) throw error("ray behind the chart");
        p.rays_.push_back(canonical_ray(r));
    }
    p.finish_from_rays();
    return p;
}

Polytope Polytope::from_inequalities(std::vector<std::string> chart_vars, const std::vector<MPoly>& ineqs) {
    size_t n = chart_vars.size();
    std::vector<VecQ> rows;
    for (auto& q : ineqs) {
        MPoly f = q.with_vars(chart_vars);
        if (f.degree() > 1) throw error("inequality is not affine-linear");
        VecQ row(n + 1, Rat(0));
        for (auto& [e, c] : f.terms()) {
            int v = -1;
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i] == 1) { v = int(i); break; }
            row[size_t(v + 1)] = c;
        }
        rows.push_back(row);
    }
    // The homogenizing half-space closes the cone over the polytope.
    VecQ x0(n + 1, Rat(0));
    x0[0] = 1;
    rows.push_back(x0);
    auto rays = enumerate_cone_rays(rows, MatQ(0, n + 1), n + 1);
    for (auto& r : rays)
        if (r[0] == 0) throw error("polytope must avoid the hyperplane at infinity");
    Polytope p;
    p.chart_vars_ = chart_vars;
    p.rays_ = rays;
    p.finish_from_rays();
    return p;
}

Polytope Polytope::standard_simplex(size_t n) {
    std::vector<std::string> vars;
    for (size_t i = 1; i <= n; ++i) vars.push_back("x" + std::to_string(i));
    std::vector<VecQ> rays;
    for (size_t i = 0; i <= n; ++i) {
        VecQ r(n + 1, Rat(0));
        r[i] = 1;
        rays.push_back(r);
    }
    Polytope p;
    p.chart_vars_ = std::move(vars);
    p.rays_ = std::move(rays);
    p.finish_from_rays();
    return p;
}

Polytope Polytope::empty(std::vector<std::string> chart_vars) {
    Polytope p;
    p.chart_vars_ = std::move(chart_vars);
    p.finish_from_rays();
    return p;
}

bool Polytope::is_bounded() const {
    return std::all_of(rays_.begin(), rays_.end(), [](const VecQ& r) { return r[0] != 0; });
}

std::vector<VecQ> Polytope::affine_vertices() const {
    std::vector<VecQ> out;
    for (auto& r : rays_)
        if (r[0] != 0) out.push_back(dehomogenize(r));
    return out;
}

std::vector<MPoly> Polytope::inequality_polys() const {
    std::vector<MPoly> out;
    for (auto& f : facets_) out.push_back(functional_to_poly(chart_vars_, f));
    return out;
}

MPoly Polytope::facet_poly(size_t i) const { return functional_to_poly(chart_vars_, facets_[i]); }

bool Polytope::contains_affine(const VecQ& point) const {
    VecQ h = homogenize(point);
    for (auto& e : span_eqs_.rows)
        if (dot(e, h) != 0) return false;
    for (auto& f : facets_)
        if (dot(f, h) < 0) return false;
    return !is_empty();
}

VecQ Polytope::relative_interior_point() const {
    if (is_empty()) throw error("interior of empty polytope");
    VecQ acc(chart_vars_.size() + 1, Rat(0));
    for (auto& r : rays_) acc = add(acc, r);
    if (acc[0] == 0) throw error("no finite interior point");
    return dehomogenize(acc);
}

std::vector<VecQ> Polytope::interior_sample(size_t count, uint64_t seed) const {
    // Deterministic positive combinations of the rays.
    std::vector<VecQ> out;
    uint64_t state = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    auto next = [&]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return (state >> 33) % 7 + 1;
    };
    for (size_t k = 0; k < count; ++k) {
        VecQ acc(chart_vars_.size() + 1, Rat(0));
        for (auto& r : rays_) acc = add(acc, scale(r, Rat(long(next()))));
        if (acc[0] == 0) throw error("no finite interior point");
        out.push_back(dehomogenize(acc));
    }
    return out;
}

Rat Polytope::volume() const {
    if (!is_bounded()) throw error("volume of unbounded polytope");
    if (is_empty() || dim_ == 0) return 0;
    if (!is_full_dimensional()) throw error("volume of non-full-dimensional polytope");
    Rat v = 0;
    for (auto& s : triangulate().simplices) v += s.volume();
    return v;
}

std::vector<Face> Polytope::face_lattice() const {
    std::vector<Face> out;
    if (is_empty()) {
        out.push_back(Face{{}, {}, -1});
        return out;
    }
    std::vector<size_t> all(rays_.size());
    std::iota(all.begin(), all.end(), 0);
    std::set<std::vector<size_t>> sets;
    sets.insert(all);
    std::vector<std::vector<size_t>> tight(facets_.size());
    for (size_t j = 0; j < facets_.size(); ++j) {
        for (size_t i = 0; i < rays_.size(); ++i)
            if (dot(facets_[j], rays_[i]) == 0) tight[j].push_back(i);
        sets.insert(tight[j]);
    }
    // Closure under intersection.
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<size_t>> cur(sets.begin(), sets.end());
        for (auto& a : cur)
            for (auto& t : tight) {
                auto s = sorted_intersection(a, t);
                if (!sets.count(s)) {
                    sets.insert(s);
                    grew = true;
                }
            }
    }
    sets.insert({});
    for (auto& s : sets) {
        Face f;
        f.rays = s;
        if (s.empty()) {
            f.dim = -1;
        } else {
            MatQ m;
            for (auto i : s) m.rows.push_back(rays_[i]);
            f.dim = int(rank(m)) - 1;
        }
        for (size_t j = 0; j < facets_.size(); ++j) {
            bool all0 = std::all_of(s.begin(), s.end(),
                                    [&](size_t i) { return dot(facets_[j], rays_[i]) == 0; });
            if (all0) f.tight_facets.push_back(j);
        }
        out.push_back(f);
    }
    std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.rays < b.rays;
    });
    return out;
}

Triangulation Polytope::triangulate(const std::vector<size_t>& pull_order) const {
    if (is_empty()) return {};
    std::vector<size_t> pos(rays_.size());
    if (pull_order.empty()) {
        std::iota(pos.begin(), pos.end(), 0);
    } else {
        if (pull_order.size() != rays_.size()) throw error("pull order arity mismatch");
        for (size_t k = 0; k < pull_order.size(); ++k) pos[pull_order[k]] = k;
    }
    auto faces = face_lattice();
    // Index faces by ray set for facet lookup.
    std::map<std::vector<size_t>, size_t> id;
    for (size_t i = 0; i < faces.size(); ++i) id[faces[i].rays] = i;
    // facets_of[i]: faces of dimension dim-1 below face i.
    std::vector<std::vector<size_t>> facets_of(faces.size());
    for (size_t i = 0; i < faces.size(); ++i)
        for (size_t j = 0; j < faces.size(); ++j) {
            if (faces[j].dim != faces[i].dim - 1) continue;
            if (std::includes(faces[i].rays.begin(), faces[i].rays.end(), faces[j].rays.begin(),
                              faces[j].rays.end()))
                facets_of[i].push_back(j);
        }
    std::map<size_t, std::vector<std::vector<size_t>>> memo;
    std::function<const std::vector<std::vector<size_t>>&(size_t)> pull = [&](size_t fi)
        -> const std::vector<std::vector<size_t>>& {
        auto it = memo.find(fi);
        if (it != memo.end()) return it->second;
        const Face& f = faces[fi];
        std::vector<std::vector<size_t>> result;
        if (int(f.rays.size()) == f.dim + 1) {
            result.push_back(f.rays);
        } else {
            size_t pulled = f.rays[0];
            for (auto i : f.rays)
                if (pos[i] < pos[pulled]) pulled = i;
            for (auto gi : facets_of[fi]) {
                const Face& g = faces[gi];
                if (std::binary_search(g.rays.begin(), g.rays.end(), pulled)) continue;
                for (auto s : pull(gi)) {
                    s.push_back(pulled);
                    std::sort(s.begin(), s.end());
                    result.push_back(s);
                }
            }
        }
        return memo.emplace(fi, std::move(result)).first->second;
    };
    size_t top = id.at([&] {
        std::vector<size_t> all(rays_.size());
        std::iota(all.begin(), all.end(), 0);
        return all;
    }());
    Triangulation t;
    for (auto& s : pull(top)) {
        Simplex sim;
        sim.chart_vars = chart_vars_;
        for (auto i : s) sim.rays.push_back(rays_[i]);
        t.simplices.push_back(std::move(sim));
    }
    return t;
}

std::string Polytope::str() const {
    std::ostringstream os;
    os << "polytope(dim " << dim_ << ", " << rays_.size() << " vertices, " << facets_.size()
       << " facets)";
    return os.str();
}

std::vector<VecQ> cone_section_rays(const Polytope& p, const LinearSubspace& s) {
    if (p.is_empty()) return {};
    MatQ eqs = p.span_equations();
    for (auto& row : s.equations().rows) eqs.rows.push_back(row);
    std::vector<VecQ> ineqs = p.facets();
    VecQ x0(p.chart_vars().size() + 1, Rat(0));
    x0[0] = 1;
    ineqs.push_back(x0);
    return enumerate_cone_rays(ineqs, eqs, p.chart_vars().size() + 1);
}

FaceQuery is_face_of(const Polytope& p, const LinearSubspace& s) {
    FaceQuery q;
    if (p.is_empty()) {
        q.is_face = true;
        return q;
    }
    auto qrays = cone_section_rays(p, s);
    if (qrays.empty()) {
        q.is_face = true;  // empty face
        return q;
    }
    std::vector<size_t> tight;
    for (size_t j = 0; j < p.facets().size(); ++j) {
        bool all0 = std::all_of(qrays.begin(), qrays.end(),
                                [&](const VecQ& r) { return dot(p.facets()[j], r) == 0; });
        if (all0) tight.push_back(j);
    }
    std::vector<size_t> face_rays;
    for (size_t i = 0; i < p.rays().size(); ++i) {
        bool ok = std::all_of(tight.begin(), tight.end(),
                              [&](size_t j) { return dot(p.facets()[j], p.rays()[i]) == 0; });
        if (ok) face_rays.push_back(i);
    }
    for (auto i : face_rays) {
        if (!s.contains_point(p.rays()[i])) {
            q.is_face = false;
            const VecQ& r = p.rays()[i];
            q.witness = r[0] != 0 ? dehomogenize(r) : r;
            return q;
        }
    }
    q.is_face = true;
    q.face_rays = face_rays;
    return q;
}

std::string face_chart_name(size_t i) { return "u" + std::to_string(i); }
std::string normal_chart_name(size_t i) { return "y" + std::to_string(i); }

Polytope face_relative(const Polytope& p, const LinearSubspace& w) {
    auto fq = is_face_of(p, w);
    if (!fq.is_face) throw error("subspace does not meet the polytope in a face");
    if (w.is_empty() || !w.meets_chart() || fq.face_rays.empty()) {
        size_t k = w.is_empty() ? 0 : size_t(std::max(0, w.dim()));
        std::vector<std::string> vars;
        for (size_t i = 1; i <= k; ++i) vars.push_back(face_chart_name(i));
        return Polytope::empty(vars);
    }
    auto std_ = standardize(w, face_chart_name);
    size_t k = std_.center_dim_k;
    std::vector<std::string> vars(std_.new_vars.begin(), std_.new_vars.begin() + k);
    std::vector<VecQ> rays;
    for (auto i : fq.face_rays) {
        VecQ u = std_.push_point(p.rays()[i]);
        for (size_t j = k + 1; j < u.size(); ++j)
            if (u[j] != 0) throw error("face ray escapes the subspace");
        rays.push_back(VecQ(u.begin(), u.begin() + k + 1));
    }
    return Polytope::from_rays(vars, rays);
}

VecQ QuotientChart::project(const VecQ& ray) const {
    VecQ u = std_.push_point(ray);  // flips are baked into std_
    size_t n = vars.size() + k + 1;  // ambient chart dimension
    VecQ q;
    q.push_back(u[j]);
    for (size_t i = k + 1; i <= n; ++i)
        if (i != j) q.push_back(u[i]);
    return q;
}

namespace {

// Negate coordinate u_i: row i of forward, column i of the inverse.
void negate_coordinate(ChartStandardization& s, size_t i) {
    for (auto& x : s.forward[i]) x = -x;
    for (auto& row : s.backward.rows) row[i] = -row[i];
}

}  // namespace

QuotientChart quotient_chart(const Polytope& p, const LinearSubspace& w, int chart_index) {
    size_t n = p.chart_vars().size();
    size_t c = w.codim();
    size_t k = n - c;
    QuotientChart qc;
    qc.std_ = standardize(w, normal_chart_name);
    qc.k = k;
    // Raw quotient images of the cone, indexed by quotient position.
    auto signs_at = [&](size_t pos) {
        bool has_pos = false, has_neg = false;
        for (auto& r : p.rays()) {
            VecQ u = qc.std_.push_point(r);
            if (u[pos] > 0) has_pos = true;
            if (u[pos] < 0) has_neg = true;
        }
        return std::pair<bool, bool>(has_pos, has_neg);
    };
    size_t j = 0;
    bool flip = false;
    if (chart_index >= 0) {
        if (chart_index <= int(k) || chart_index > int(n)) throw error("chart index outside the quotient block");
        j = size_t(chart_index);
        auto [pos, neg] = signs_at(j);
        if (pos && neg) throw error("chart path unsupported: normal cone leaves the chart");
        flip = neg;
    } else {
        bool found = false;
        for (size_t cand = n; cand > k; --cand) {
            auto [pos, neg] = signs_at(cand);
            if (pos && neg) continue;
            j = cand;
            flip = neg;
            found = true;
            break;
        }
        if (!found) throw error("chart path unsupported: no one-signed quotient coordinate");
    }
    qc.j = j;
    qc.flip = flip;
    if (flip) negate_coordinate(qc.std_, j);
    // The residue comparison assumes an orientation-preserving coordinate
    // change; restore a positive determinant by negating one ratio
    // coordinate (which only reorients the quotient chart).
    {
        MatQ lin(n, n);
        for (size_t r = 1; r <= n; ++r)
            for (size_t col = 1; col <= n; ++col) lin[r - 1][col - 1] = qc.std_.forward[r][col];
        if (det(lin) < 0) {
            size_t target = n != j ? n : n - 1;
            if (target <= k) throw error("chart path unsupported: cannot orient the quotient chart");
            negate_coordinate(qc.std_, target);
        }
    }
    for (size_t i = k + 1; i <= n; ++i)
        if (i != j) qc.vars.push_back(normal_chart_name(i));
    return qc;
}

Polytope normal_polytope(const Polytope& p, const LinearSubspace& w, int chart_index) {
    auto fq = is_face_of(p, w);
    if (!fq.is_face) throw error("subspace does not meet the polytope in a face");
    if (fq.face_rays.empty()) {
        // Empty face: the normal polytope is empty by the case split.
        size_t n = p.chart_vars().size();
        size_t k = n - w.codim();
        size_t j = chart_index < 0 ? n : size_t(chart_index);
        std::vector<std::string> vars;
        for (size_t i = k + 1; i <= n; ++i)
            if (i != j) vars.push_back(normal_chart_name(i));
        return Polytope::empty(vars);
    }
    QuotientChart qc = quotient_chart(p, w, chart_index);
    std::vector<VecQ> rays;
    for (auto& r : p.rays()) {
        VecQ q = qc.project(r);
        if (!is_zero(q)) rays.push_back(q);
    }
    return Polytope::from_rays(qc.vars, rays);
}

Triangulation induced_face_triangulation(const Triangulation& t, const Polytope& p,
                                         const LinearSubspace& w) {
    auto fq = is_face_of(p, w);
    if (!fq.is_face) throw error("subspace does not meet the polytope in a face");
    Polytope pw = face_relative(p, w);
    if (pw.is_empty()) return {};
    auto std_ = standardize(w, face_chart_name);
    size_t k = std_.center_dim_k;
    std::vector<std::string> vars(std_.new_vars.begin(), std_.new_vars.begin() + k);

    Triangulation out;
    std::set<std::vector<VecQ>> seen;
    for (auto& s : t.simplices) {
        std::vector<VecQ> in_w;
        for (auto& r : s.rays)
            if (w.contains_point(r)) in_w.push_back(r);
        if (in_w.empty()) continue;
        MatQ m(in_w);
        if (int(rank(m)) - 1 != pw.dim()) continue;
        std::vector<VecQ> pushed;
        for (auto& r : in_w) {
            VecQ u = std_.push_point(r);
            pushed.push_back(canonical_ray(VecQ(u.begin(), u.begin() + k + 1)));
        }
        std::sort(pushed.begin(), pushed.end());
        if (seen.count(pushed)) continue;
        seen.insert(pushed);
        out.simplices.push_back(Simplex{vars, pushed});
    }
    return out;
}

Triangulation induced_normal_triangulation(const Triangulation& t, const Polytope& p,
                                           const LinearSubspace& w, const Simplex& f,
                                           int chart_index) {
    Polytope pw = face_relative(p, w);
    if (pw.dim() != w.dim()) throw error("normal triangulation undefined");
    size_t k = p.chart_vars().size() - w.codim();
    QuotientChart qc = quotient_chart(p, w, chart_index);
    auto ustd = standardize(w, face_chart_name);

    std::vector<VecQ> fray = f.rays;
    std::sort(fray.begin(), fray.end());

    Triangulation out;
    for (auto& s : t.simplices) {
        std::vector<VecQ> in_w, off_w;
        for (auto& r : s.rays)
            (w.contains_point(r) ? in_w : off_w).push_back(r);
        // The simplex's face at W, in adapted coordinates.
        std::vector<VecQ> pushed;
        for (auto& r : in_w) {
            VecQ u = ustd.push_point(r);
            pushed.push_back(canonical_ray(VecQ(u.begin(), u.begin() + k + 1)));
        }
        std::sort(pushed.begin(), pushed.end());
        if (pushed != fray) continue;
        std::vector<VecQ> proj;
        for (auto& r : off_w) proj.push_back(canonical_ray(qc.project(r)));
        std::sort(proj.begin(), proj.end());
        out.simplices.push_back(Simplex{qc.vars, proj});
    }
    return out;
}

bool triangulation_is_valid(const Polytope& p, const Triangulation& t, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (p.is_empty()) return t.simplices.empty() ? true : fail("nonempty triangulation of empty polytope");
    if (t.simplices.empty()) return fail("empty triangulation");
    if (p.dim() == 0) {
        if (t.simplices.size() != 1 || t.simplices[0].rays != p.rays())
            return fail("point polytope must be its own triangulation");
        return true;
    }
    for (auto& s : t.simplices) {
        if (s.dim() != p.dim()) return fail("simplex of wrong dimension");
        MatQ m(s.rays);
        if (int(rank(m)) != s.dim() + 1) return fail("degenerate simplex");
        for (auto& r : s.rays) {
            for (auto& e : p.span_equations().rows)
                if (dot(e, r) != 0) return fail("simplex ray outside span");
            for (auto& f : p.facets())
                if (dot(f, r) < 0) return fail("simplex ray outside polytope");
        }
    }
    // Pairwise intersections are common faces: the cone intersection equals
    // the cone on the shared rays.
    for (size_t a = 0; a < t.simplices.size(); ++a)
        for (size_t b = a + 1; b < t.simplices.size(); ++b) {
            const auto& A = t.simplices[a].rays;
            const auto& B = t.simplices[b].rays;
            std::vector<VecQ> shared;
            for (auto& r : A)
                if (std::find(B.begin(), B.end(), r) != B.end()) shared.push_back(r);
            Polytope pa = Polytope::from_rays(p.chart_vars(), A);
            Polytope pb = Polytope::from_rays(p.chart_vars(), B);
            std::vector<VecQ> ineqs = pa.facets();
            for (auto& f : pb.facets()) ineqs.push_back(f);
            MatQ eqs = pa.span_equations();
            for (auto& e : pb.span_equations().rows) eqs.rows.push_back(e);
            auto xrays = enumerate_cone_rays(ineqs, eqs, p.chart_vars().size() + 1);
            for (auto& r : xrays)
                if (!in_cone(r, shared)) return fail("simplices do not meet in a common face");
        }
    // Cover: every simplex facet is on the boundary of P or shared by
    // exactly two simplices.
    std::map<std::vector<VecQ>, int> facet_count;
    for (auto& s : t.simplices) {
        for (size_t drop = 0; drop < s.rays.size(); ++drop) {
            std::vector<VecQ> g;
            for (size_t i = 0; i < s.rays.size(); ++i)
                if (i != drop) g.push_back(s.rays[i]);
            std::sort(g.begin(), g.end());
            bool on_boundary = false;
            for (auto& f : p.facets()) {
                bool all0 = std::all_of(g.begin(), g.end(),
                                        [&](const VecQ& r) { return dot(f, r) == 0; });
                if (all0) { on_boundary = true; break; }
            }
            if (!on_boundary) facet_count[g] += 1;
        }
    }
    for (auto& [g, c] : facet_count)
        if (c != 2) return fail("interior wall not shared by exactly two simplices");
    if (p.is_bounded() && p.is_full_dimensional()) {
        Rat v = 0;
        for (auto& s : t.simplices) v += s.volume();
        if (v != p.volume()) return fail("volume mismatch");
    }
    return true;
}

}  // namespace wt
