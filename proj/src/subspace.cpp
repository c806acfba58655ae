#include "wondertope/subspace.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace wt {

LinearSubspace::LinearSubspace(std::vector<std::string> chart_vars, MatQ homogeneous_equations)
    : chart_vars_(std::move(chart_vars)), eqs_(std::move(homogeneous_equations)) {
    for (auto& row : eqs_.rows)
        if (row.size() != chart_vars_.size() + 1) throw error("subspace equation arity mismatch");
    rref(eqs_);
    while (!eqs_.rows.empty() && is_zero(eqs_.rows.back())) eqs_.rows.pop_back();
}

LinearSubspace LinearSubspace::from_affine_equations(const std::vector<std::string>& chart_vars,
                                                     const std::vector<MPoly>& equations) {
    MatQ m;
    for (auto& e : equations) {
        MPoly p = e.with_vars(chart_vars);
        if (p.degree() > 1) throw error("subspace equation is not affine-linear");
        VecQ row(chart_vars.size() + 1, Rat(0));
        for (auto& [exp, c] : p.terms()) {
            int v = -1;
            for (size_t i = 0; i < exp.size(); ++i)
                if (exp[i] == 1) { v = int(i); break; }
            row[size_t(v + 1)] = c;  // v = -1 is the constant term, homogenized by X0
        }
        m.rows.push_back(row);
    }
    return LinearSubspace(chart_vars, m);
}

LinearSubspace LinearSubspace::span_of_points(const std::vector<std::string>& chart_vars,
                                              const std::vector<VecQ>& points) {
    size_t n = chart_vars.size();
    MatQ span;
    for (auto& p : points) {
        if (p.size() != n) throw error("point arity mismatch");
        VecQ h(n + 1);
        h[0] = 1;
        for (size_t i = 0; i < n; ++i) h[i + 1] = p[i];
        span.rows.push_back(h);
    }
    // Equations = nullspace of the span, as row functionals.
    MatQ eqs;
    for (auto& v : nullspace(span)) eqs.rows.push_back(v);
    return LinearSubspace(chart_vars, eqs);
}

bool LinearSubspace::meets_chart() const {
    // Some solution has X0 != 0 iff restricting to {X0 = 0} raises the rank.
    if (is_empty()) return false;
    MatQ with_inf = eqs_;
    VecQ x0(chart_vars_.size() + 1, Rat(0));
    x0[0] = 1;
    with_inf.rows.push_back(x0);
    return rank(with_inf) > eqs_.nrows();
}

bool LinearSubspace::contains_point(const VecQ& h) const {
    for (auto& row : eqs_.rows)
        if (dot(row, h) != 0) return false;
    return true;
}

bool LinearSubspace::contains(const LinearSubspace& other) const {
    // this contains other iff every equation of this vanishes on other's
    // solution space iff rank(other.eqs + row) stays put for each row.
    MatQ m = other.eqs_;
    size_t r = m.nrows();
    for (auto& row : eqs_.rows) m.rows.push_back(row);
    return rank(m) == r;
}

LinearSubspace LinearSubspace::intersect(const LinearSubspace& other) const {
    if (chart_vars_ != other.chart_vars_) throw error("subspace chart mismatch");
    MatQ m = eqs_;
    for (auto& row : other.eqs_.rows) m.rows.push_back(row);
    return LinearSubspace(chart_vars_, m);
}

bool LinearSubspace::operator==(const LinearSubspace& o) const {
    return chart_vars_ == o.chart_vars_ && eqs_.rows == o.eqs_.rows;
}

bool LinearSubspace::operator<(const LinearSubspace& o) const {
    if (eqs_.nrows() != o.eqs_.nrows()) return eqs_.nrows() < o.eqs_.nrows();
    return eqs_.rows < o.eqs_.rows;
}

std::vector<MPoly> LinearSubspace::affine_equations() const {
    std::vector<MPoly> out;
    for (auto& row : eqs_.rows) {
        MPoly p(chart_vars_);
        Exp zero(chart_vars_.size(), 0);
        p.add_term(zero, row[0]);
        for (size_t i = 0; i < chart_vars_.size(); ++i) {
            Exp e(chart_vars_.size(), 0);
            e[i] = 1;
            p.add_term(e, row[i + 1]);
        }
        out.push_back(p);
    }
    return out;
}

std::string LinearSubspace::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto& e : affine_equations()) {
        if (!first) os << ", ";
        first = false;
        os << e.str() << " = 0";
    }
    os << "}";
    return os.str();
}

PolyMap ChartStandardization::new_to_old() const {
    // x_i = (backward * (1,u))_i for i >= 1.
    std::vector<RatFunc> comp;
    for (size_t i = 1; i < backward.nrows(); ++i) {
        MPoly p(new_vars, backward[i][0]);
        for (size_t j = 1; j < backward.ncols(); ++j) {
            if (backward[i][j] == 0) continue;
            p = p + MPoly::var(new_vars, new_vars[j - 1]) * backward[i][j];
        }
        comp.push_back(RatFunc(p));
    }
    return PolyMap(new_vars, old_vars, std::move(comp));
}

PolyMap ChartStandardization::old_to_new() const {
    std::vector<RatFunc> comp;
    for (size_t i = 1; i < forward.nrows(); ++i) {
        MPoly p(old_vars, forward[i][0]);
        for (size_t j = 1; j < forward.ncols(); ++j) {
            if (forward[i][j] == 0) continue;
            p = p + MPoly::var(old_vars, old_vars[j - 1]) * forward[i][j];
        }
        comp.push_back(RatFunc(p));
    }
    return PolyMap(old_vars, new_vars, std::move(comp));
}

VecQ ChartStandardization::push_point(const VecQ& h) const {
    VecQ r(forward.nrows(), Rat(0));
    for (size_t i = 0; i < forward.nrows(); ++i) r[i] = dot(forward[i], h);
    return r;
}

ChartStandardization standardize(const LinearSubspace& w,
                                 const std::function<std::string(size_t)>& namer) {
    if (!w.meets_chart()) throw error("chart path unsupported: center does not meet the chart");
    size_t n = w.ambient_dim();
    size_t c = w.codim();
    size_t k = n - c;

    // Pivot columns of the linear part; the homogenizing column plays no
    // role in choosing complementary coordinate axes.
    MatQ linear(c, n);
    for (size_t i = 0; i < c; ++i)
        for (size_t j = 0; j < n; ++j) linear[i][j] = w.equations()[i][j + 1];
    auto pivots = rref(linear);
    if (pivots.size() < c) throw error("chart path unsupported: center does not meet the chart");
    std::vector<bool> pivot_col(n + 1, false);
    for (auto p : pivots) pivot_col[p + 1] = true;
    MatQ m = w.equations();

    ChartStandardization s;
    s.old_vars = w.chart_vars();
    s.center_dim_k = k;
    s.forward = MatQ(n + 1, n + 1);
    s.forward[0][0] = 1;
    // Free chart coordinates keep their own axes, in increasing index order.
    size_t row = 1;
    for (size_t col = 1; col <= n && row <= k; ++col) {
        if (pivot_col[col]) continue;
        s.forward[row][col] = 1;
        ++row;
    }
    for (size_t e = 0; e < c; ++e) s.forward.rows[k + 1 + e] = m[e];

    if (det(s.forward) == 0) throw error("standardization is singular");
    // Exact inverse by solving against the identity.
    s.backward = MatQ(n + 1, n + 1);
    MatQ aug = s.forward;
    for (size_t i = 0; i <= n; ++i)
        for (size_t j = 0; j <= n; ++j) aug[i].push_back(i == j ? Rat(1) : Rat(0));
    rref(aug);
    for (size_t i = 0; i <= n; ++i)
        for (size_t j = 0; j <= n; ++j) s.backward[i][j] = aug[i][n + 1 + j];

    for (size_t i = 1; i <= n; ++i) s.new_vars.push_back(namer(i));
    return s;
}

}  // namespace wt
