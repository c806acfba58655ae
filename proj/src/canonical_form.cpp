#include "wondertope/canonical_form.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace wt {

namespace {

MPoly functional_poly(const std::vector<std::string>& vars, const VecQ& f) {
    MPoly p(vars, f[0]);
    for (size_t i = 0; i < vars.size(); ++i) {
        if (f[i + 1] == 0) continue;
        p = p + MPoly::var(vars, vars[i]) * f[i + 1];
    }
    return p;
}

std::string idx_str(const std::vector<size_t>& v) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "}";
    return os.str();
}

}  // namespace

TopForm simplex_form(const Simplex& s) {
    size_t n = s.chart_vars.size();
    if (s.rays.size() != n + 1) throw error("degenerate simplex");
    std::vector<VecQ> rays = s.rays;
    MatQ a(rays);
    Rat d = det(a);
    if (d == 0) throw error("degenerate simplex");
    if (d < 0) {
        std::swap(rays[0], rays[1]);
        a = MatQ(rays);
        d = -d;
    }
    // Vertex functionals: columns of A^{-1}; facet i is the zero set of the
    // functional dual to ray i.
    MatQ aug = a;
    for (size_t i = 0; i <= n; ++i)
        for (size_t j = 0; j <= n; ++j) aug[i].push_back(i == j ? Rat(1) : Rat(0));
    rref(aug);
    RatFunc denom = RatFunc::constant(s.chart_vars, d);
    for (size_t i = 0; i <= n; ++i) {
        VecQ ell(n + 1);
        for (size_t r = 0; r <= n; ++r) ell[r] = aug[r][n + 1 + i];
        denom = denom * RatFunc(functional_poly(s.chart_vars, ell));
    }
    return TopForm(s.chart_vars, RatFunc::constant(s.chart_vars, 1) / denom);
}

TopForm polytope_form(const Polytope& p, const std::vector<size_t>& pull_order) {
    if (p.is_empty() || !p.is_full_dimensional()) throw error("degenerate polytope");
    auto t = p.triangulate(pull_order);
    TopForm acc(p.chart_vars(), RatFunc::constant(p.chart_vars(), 0));
    for (auto& s : t.simplices) acc = acc + simplex_form(s);
    return acc;
}

TopForm facet_residue(const Polytope& p, size_t facet_index) {
    if (facet_index >= p.facets().size()) throw error("no such facet");
    TopForm w = polytope_form(p);
    return residue_linear(w, RatFunc(p.facet_poly(facet_index)));
}

TopForm iterated_residue(TopForm w, std::vector<RatFunc> divisors) {
    for (size_t i = 0; i < divisors.size(); ++i) {
        RatFunc f = divisors[i].with_vars(w.chart);
        auto [pivot, sol] = pivot_solution(w.chart, f);
        w = residue_linear(w, f);
        for (size_t j = i + 1; j < divisors.size(); ++j)
            divisors[j] = divisors[j].with_vars(f.vars()).substitute_var(pivot, sol).without_var(pivot);
    }
    return w;
}

namespace {

struct Stratum {
    Polytope poly;
    std::vector<size_t> orig;  // original ray index per poly ray
    TopForm form;
};

}  // namespace

VerificationReport verify_recursion(const Polytope& p) {
    VerificationReport rep;
    if (p.is_empty() || !p.is_full_dimensional() || !p.is_bounded())
        throw error("degenerate polytope");

    std::map<std::vector<size_t>, TopForm> memo;

    std::function<void(const Stratum&)> visit = [&](const Stratum& st) {
        std::vector<size_t> key = st.orig;
        std::sort(key.begin(), key.end());
        std::string name = "stratum dim " + std::to_string(st.poly.dim()) + " " + idx_str(key);
        auto it = memo.find(key);
        if (it != memo.end()) {
            rep.add(name + ": form agrees across residue chains up to orientation",
                    equal_up_to_sign(st.form, it->second), st.form.str());
            return;
        }
        memo.emplace(key, st.form);

        if (st.poly.dim() == 0) {
            bool ok = st.form.chart.empty() && st.form.coef.is_constant() && !st.form.is_zero();
            Rat v = ok ? st.form.coef.constant_value() : Rat(0);
            ok = ok && (v == 1 || v == -1);
            rep.add(name + ": vertex residue is exactly +-1", ok, st.form.str());
            return;
        }

        TopForm own = polytope_form(st.poly);
        rep.add(name + ": residue equals the stratum's canonical form up to induced orientation",
                equal_up_to_sign(st.form, own),
                st.form.coef == own.coef ? "sign +" : "sign -");

        bool poles_ok = true;
        std::string pole_witness;
        MPoly rem = st.form.coef.den();
        for (size_t i = 0; i < st.poly.facets().size(); ++i) {
            MPoly f = st.poly.facet_poly(i).primitive();
            int ord = pole_order(st.form, RatFunc(f));
            if (ord != 1) {
                poles_ok = false;
                pole_witness = "pole order " + std::to_string(ord) + " on facet " + f.str();
            }
            auto q = rem.divide_exact(f);
            if (q) rem = *q;
        }
        if (!rem.is_constant()) {
            poles_ok = false;
            pole_witness = "extra pole factor " + rem.str();
        }
        rep.add(name + ": simple poles exactly on the facet hyperplanes", poles_ok, pole_witness);

        for (size_t i = 0; i < st.poly.facets().size(); ++i) {
            RatFunc f = RatFunc(st.poly.facet_poly(i));
            TopForm wg = residue_linear(st.form, f);
            int pivot = residue_pivot(st.poly.chart_vars(), f);

            // Facet polytope in the chart with the pivot variable eliminated.
            std::vector<std::string> sub_vars = st.poly.chart_vars();
            sub_vars.erase(sub_vars.begin() + pivot);
            std::vector<std::pair<VecQ, size_t>> projected;
            for (size_t r = 0; r < st.poly.rays().size(); ++r) {
                if (dot(st.poly.facets()[i], st.poly.rays()[r]) != 0) continue;
                VecQ v = st.poly.rays()[r];
                v.erase(v.begin() + pivot + 1);
                projected.push_back({canonical_ray(v), st.orig[r]});
            }
            std::vector<VecQ> rays;
            for (auto& [v, o] : projected) rays.push_back(v);
            Polytope sub = Polytope::from_rays(sub_vars, rays);
            Stratum next;
            next.poly = sub;
            next.form = wg;
            for (auto& ray : sub.rays()) {
                auto itp = std::find_if(projected.begin(), projected.end(),
                                        [&](auto& pr) { return pr.first == ray; });
                if (itp == projected.end()) throw error("facet ray lost in projection");
                next.orig.push_back(itp->second);
            }
            visit(next);
        }
    };

    Stratum top;
    top.poly = p;
    top.orig.resize(p.rays().size());
    std::iota(top.orig.begin(), top.orig.end(), 0);
    top.form = polytope_form(p);
    visit(top);
    return rep;
}

}  // namespace wt
