#include "wondertope/blowup.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace wt {

namespace {

std::string tag_name(const std::string& base, size_t i, const std::string& tag) {
    return base + std::to_string(i) + tag;
}

// Negating u_j: negate row j of the forward matrix, column j of the inverse.
void apply_flip(ChartStandardization& s, size_t j) {
    for (auto& x : s.forward[j]) x = -x;
    for (auto& row : s.backward.rows) row[j] = -row[j];
}

MPoly equation_poly(const std::vector<std::string>& vars, const VecQ& row) {
    MPoly p(vars, row[0]);
    for (size_t i = 0; i < vars.size(); ++i) {
        if (row[i + 1] == 0) continue;
        p = p + MPoly::var(vars, vars[i]) * row[i + 1];
    }
    return p;
}

}  // namespace

namespace {

BlowupChart blowup_chart_with(const LinearSubspace& w, ChartStandardization std_, size_t j,
                              const std::string& tag) {
    size_t n = w.ambient_dim();
    size_t c = w.codim();
    if (c < 2) throw error("blow-up is an isomorphism");
    if (c > n) throw error("cannot blow up the empty subspace");
    size_t k = n - c;
    if (j <= k || j > n) throw error("chart index outside the quotient block");

    BlowupChart ch;
    ch.center = w;
    ch.coord_change = std::move(std_);
    ch.coord_change.new_vars.clear();
    for (size_t i = 1; i <= n; ++i) ch.coord_change.new_vars.push_back(tag_name("u", i, tag));
    ch.k = k;
    ch.c = c;
    ch.j = j;
    ch.exceptional_var = "e" + tag;
    for (size_t i = 1; i <= n; ++i) {
        if (i <= k) ch.source_vars.push_back(tag_name("u", i, tag));
        else if (i == j) ch.source_vars.push_back(ch.exceptional_var);
        else ch.source_vars.push_back(tag_name("y", i, tag));
    }
    std::vector<RatFunc> comp;
    RatFunc e = RatFunc::var(ch.source_vars, ch.exceptional_var);
    for (size_t i = 1; i <= n; ++i) {
        if (i <= k) comp.push_back(RatFunc::var(ch.source_vars, ch.source_vars[i - 1]));
        else if (i == j) comp.push_back(e);
        else comp.push_back(RatFunc::var(ch.source_vars, ch.source_vars[i - 1]) * e);
    }
    PolyMap blow(ch.source_vars, ch.coord_change.new_vars, std::move(comp));
    ch.map = compose(ch.coord_change.new_to_old(), blow);
    return ch;
}

}  // namespace

BlowupChart blowup_chart(const LinearSubspace& w, int chart_index, bool flip, const std::string& tag) {
    size_t n = w.ambient_dim();
    size_t j = chart_index < 0 ? n : size_t(chart_index);
    ChartStandardization std_ = standardize(w, [&](size_t i) { return tag_name("u", i, tag); });
    if (flip) apply_flip(std_, j);
    return blowup_chart_with(w, std::move(std_), j, tag);
}

BlowupChart blowup_chart_for(const Polytope& p, const LinearSubspace& w, int chart_index,
                             const std::string& tag) {
    auto fq = is_face_of(p, w);
    if (!fq.is_face) throw error("subspace does not meet the polytope in a face");
    if (fq.face_rays.empty()) return blowup_chart(w, chart_index, false, tag);
    QuotientChart qc = quotient_chart(p, w, chart_index);
    return blowup_chart_with(w, qc.std_, qc.j, tag);
}

PolyMap BlowupChart::section() const {
    const auto& old_vars = coord_change.old_vars;
    PolyMap to_u = coord_change.old_to_new();
    size_t n = old_vars.size();
    std::vector<RatFunc> comp;
    RatFunc uj = to_u.components[j - 1];
    for (size_t i = 1; i <= n; ++i) {
        if (i <= k || i == j) comp.push_back(to_u.components[i - 1]);
        else comp.push_back(to_u.components[i - 1] / uj);
    }
    return PolyMap(old_vars, source_vars, std::move(comp));
}

MPoly strict_transform_poly(const MPoly& f, const BlowupChart& step) {
    RatFunc sub = substitute(RatFunc(f), step.map);
    if (!sub.is_polynomial()) throw error("strict transform of non-polynomial pullback");
    MPoly p = sub.num().divide_coeff(sub.den().constant_value());
    MPoly e = MPoly::var(step.source_vars, step.exceptional_var);
    int m = p.multiplicity(e);
    for (int i = 0; i < m; ++i) p = *p.divide_exact(e);
    return p;
}

MPoly BlowupSequence::exceptional_in_final_chart(size_t s) const {
    MPoly f = MPoly::var(steps[s].source_vars, steps[s].exceptional_var);
    for (size_t t = s + 1; t < steps.size(); ++t) f = strict_transform_poly(f, steps[t]);
    return f;
}

PolyMap BlowupSequence::section() const {
    if (steps.empty()) throw error("section of empty sequence");
    PolyMap s = steps[0].section();
    for (size_t t = 1; t < steps.size(); ++t) s = compose(steps[t].section(), s);
    return s;
}

BlowupSequence sequential_blowup(const GeomBuildingSet& b, const std::vector<int>& chart_path) {
    BlowupSequence seq;
    // Working copies of the centers, transformed into the current chart.
    std::vector<LinearSubspace> current = b.subspaces;
    std::vector<bool> done(current.size(), false);

    size_t step_no = 0;
    for (size_t idx = 0; idx < current.size(); ++idx) {
        const LinearSubspace& w = current[idx];
        if (w.is_empty() || w.codim() <= 1 || w.codim() > w.ambient_dim()) {
            seq.skipped.push_back(idx);
            done[idx] = true;
            continue;
        }
        ++step_no;
        int ci = step_no - 1 < chart_path.size() ? chart_path[step_no - 1] : -1;
        std::string tag = "_" + std::to_string(step_no);
        size_t n = w.ambient_dim();
        size_t k = n - w.codim();
        std::vector<int> candidates;
        if (ci >= 0) candidates.push_back(ci);
        else
            for (size_t cand = n; cand > k; --cand) candidates.push_back(int(cand));

        // Move the remaining centers into the new chart: clean division for
        // centers through earlier ones, the section for points off them.
        auto transform_center = [](const LinearSubspace& z, const BlowupChart& step)
            -> std::optional<LinearSubspace> {
            bool linear_ok = true;
            std::vector<MPoly> eqs;
            for (auto& e : z.affine_equations()) {
                MPoly t = strict_transform_poly(e, step);
                if (!t.is_affine_linear()) { linear_ok = false; break; }
                eqs.push_back(t);
            }
            if (linear_ok) {
                LinearSubspace nz = LinearSubspace::from_affine_equations(step.source_vars, eqs);
                if (nz.codim() == z.codim() && nz.meets_chart()) return nz;
            }
            if (z.codim() != z.ambient_dim()) return std::nullopt;
            MatQ a;
            VecQ rhs;
            for (auto& row : z.equations().rows) {
                a.rows.push_back(VecQ(row.begin() + 1, row.end()));
                rhs.push_back(-row[0]);
            }
            auto sol = solve(a, rhs);
            if (!sol) return std::nullopt;
            std::vector<Rat> img;
            try {
                for (auto& compnt : step.section().components) img.push_back(compnt.eval(*sol));
            } catch (const error&) {
                return std::nullopt;  // the point misses this chart
            }
            std::vector<MPoly> eqs2;
            for (size_t v = 0; v < step.source_vars.size(); ++v)
                eqs2.push_back(MPoly::var(step.source_vars, step.source_vars[v]) -
                               MPoly(step.source_vars, img[v]));
            return LinearSubspace::from_affine_equations(step.source_vars, eqs2);
        };

        bool committed = false;
        for (int cand : candidates) {
            BlowupChart step = blowup_chart(w, cand, false, tag);
            std::vector<LinearSubspace> moved = current;
            bool ok = true;
            for (size_t later = idx + 1; later < current.size() && ok; ++later) {
                if (done[later]) continue;
                auto nz = transform_center(current[later], step);
                if (nz) moved[later] = *nz;
                else ok = false;
            }
            if (!ok) continue;
            current = std::move(moved);
            seq.steps.push_back(step);
            seq.blown.push_back(idx);
            committed = true;
            break;
        }
        if (!committed) throw error("chart path unsupported");
        done[idx] = true;
    }
    if (seq.steps.empty()) {
        seq.composed = PolyMap::identity(b.chart_vars);
    } else {
        seq.composed = seq.steps[0].map;
        for (size_t t = 1; t < seq.steps.size(); ++t) seq.composed = compose(seq.composed, seq.steps[t].map);
    }
    return seq;
}

VerificationReport verify_fundamental(const Polytope& p, const LinearSubspace& w, int chart_index) {
    auto fq = is_face_of(p, w);
    if (!fq.is_face) throw error("faceness violated: intersection is not a face of the polytope");
    VerificationReport rep;
    TopForm omega = polytope_form(p);
    BlowupChart chart = blowup_chart_for(p, w, chart_index);
    TopForm pio = pullback(omega, chart.map);
    RatFunc e = RatFunc::var(chart.source_vars, chart.exceptional_var);

    // Jacobian law: det = const * e^(c-1).
    RatFunc jac = jacobian_det(chart.map);
    RatFunc epow = e.pow(int(chart.c) - 1);
    RatFunc ratio = jac / epow;
    rep.add("jacobian is a constant times e^(c-1)", ratio.is_constant() && !ratio.is_zero(),
            jac.str());

    Polytope face = face_relative(p, w);
    int ord = pole_order(pio, e);
    if (face.is_empty() || face.dim() < w.dim()) {
        rep.add("dim P_W < dim PW: pullback has no pole along E", ord <= 0,
                "pole order " + std::to_string(ord));
    } else {
        rep.add("dim P_W = dim PW: simple pole along E", ord == 1,
                "pole order " + std::to_string(ord));
        TopForm res = residue_linear(pio, e);
        Polytope npoly = normal_polytope(p, w, int(chart.j));
        TopForm expected = wedge(polytope_form(face), polytope_form(npoly));
        rep.add("Res_E pi*Omega = Omega(P_W) ^ Omega(P^W) exactly", res == expected,
                res.str() + " vs " + expected.str());
        // The exceptional variable is nonnegative on the strict transform of
        // the interior: u_j of interior points after the arranged flip.
        bool positive = true;
        for (auto& x : p.interior_sample(10)) {
            VecQ h(x.size() + 1);
            h[0] = 1;
            for (size_t i = 0; i < x.size(); ++i) h[i + 1] = x[i];
            if (chart.coord_change.push_point(h)[chart.j] < 0) { positive = false; break; }
        }
        rep.add("exceptional coordinate nonnegative on int(P) samples", positive);
    }
    return rep;
}

namespace {

// Facet polytope of p at facet i, on the chart with the facet form's pivot
// variable eliminated (as in the recursion checks).
Polytope facet_polytope(const Polytope& p, size_t i, int& pivot_out) {
    RatFunc f = RatFunc(p.facet_poly(i));
    int pivot = residue_pivot(p.chart_vars(), f);
    pivot_out = pivot;
    std::vector<std::string> sub_vars = p.chart_vars();
    sub_vars.erase(sub_vars.begin() + pivot);
    std::vector<VecQ> rays;
    for (size_t r = 0; r < p.rays().size(); ++r) {
        if (dot(p.facets()[i], p.rays()[r]) != 0) continue;
        VecQ v = p.rays()[r];
        v.erase(v.begin() + pivot + 1);
        rays.push_back(v);
    }
    return Polytope::from_rays(sub_vars, rays);
}

}  // namespace

VerificationReport verify_wondertope(const Polytope& p, const GeomBuildingSet& b,
                                     const std::vector<int>& chart_path) {
    auto fc = check_face_condition(p, b);
    if (!fc.ok()) {
        for (auto& c : fc.checks)
            if (c.status == CheckStatus::fail)
                throw error("face condition violated: " + c.name + " " + c.witness);
    }
    auto bs = check_building_set(b);
    if (!bs.ok()) {
        for (auto& c : bs.checks)
            if (c.status == CheckStatus::fail) throw error("not a building set: " + c.witness);
    }

    VerificationReport rep;
    TopForm omega = polytope_form(p);

    // Residue factorization along each exceptional divisor, computed at the
    // single-center blow-up on a dense open chart.
    for (size_t i = 0; i < b.subspaces.size(); ++i) {
        const LinearSubspace& f = b.subspaces[i];
        if (f.is_empty() || f.codim() <= 1) continue;
        VerificationReport sub = verify_fundamental(p, f);
        for (auto& c : sub.checks) c.name = "E[" + f.str() + "] " + c.name;
        rep.merge(sub);
    }

    // Residues along the facet hyperplanes, in the base chart.
    for (size_t i = 0; i < p.facets().size(); ++i) {
        TopForm res = residue_linear(omega, RatFunc(p.facet_poly(i)));
        int pivot = 0;
        Polytope fp = facet_polytope(p, i, pivot);
        TopForm own = polytope_form(fp);
        rep.add("facet " + p.facet_poly(i).str() +
                    ": residue equals the facet's canonical form up to induced orientation",
                equal_up_to_sign(res, own),
                std::string("pivot ") + p.chart_vars()[size_t(pivot)] +
                    (res.coef == own.coef ? ", sign +" : ", sign -"));
    }

    // Pole census. The pole order along a strict transform is preserved by
    // the later blow-ups (they are isomorphisms at its generic point), so
    // each exceptional divisor is measured in its own step's chart on the
    // prefix pullback, and hyperplane divisors are measured downstairs.
    BlowupSequence seq = sequential_blowup(b, chart_path);
    std::vector<TopForm> prefix;  // prefix[s] = pullback through steps 0..s
    {
        PolyMap acc = PolyMap::identity(p.chart_vars());
        for (auto& st : seq.steps) {
            acc = compose(acc, st.map);
            prefix.push_back(pullback(omega, acc));
        }
    }

    size_t boundary_found = 0;
    for (size_t s = 0; s < seq.steps.size(); ++s) {
        const LinearSubspace& f = b.subspaces[seq.blown[s]];
        bool boundary = intersection_dim(p, f) == f.dim();
        RatFunc e = RatFunc::var(seq.steps[s].source_vars, seq.steps[s].exceptional_var);
        int ord = pole_order(prefix[s], e);
        bool ok = boundary ? ord == 1 : ord <= 0;
        if (ord == 1) ++boundary_found;
        rep.add("divisor E[" + f.str() + "]" + (boundary ? ": simple pole" : ": no pole"), ok,
                "pole order " + std::to_string(ord));
    }
    for (auto idx : seq.skipped) {
        const LinearSubspace& h = b.subspaces[idx];
        if (h.is_empty() || !h.is_hyperplane()) continue;
        bool is_facet = intersection_dim(p, h) == int(p.chart_vars().size()) - 1;
        MPoly hp = equation_poly(p.chart_vars(), h.equations()[0]);
        int ord = pole_order(omega, RatFunc(hp));
        bool ok = is_facet ? ord == 1 : ord <= 0;
        if (ord == 1) ++boundary_found;
        rep.add("divisor H[" + h.str() + "]" + (is_facet ? ": simple pole" : ": no pole"), ok,
                "pole order " + std::to_string(ord));
    }
    for (size_t i = 0; i < p.facets().size(); ++i) {
        LinearSubspace hf = LinearSubspace::from_affine_equations(p.chart_vars(), {p.facet_poly(i)});
        bool in_b = std::any_of(b.subspaces.begin(), b.subspaces.end(),
                                [&](const LinearSubspace& s) { return s == hf; });
        if (in_b) continue;
        int ord = pole_order(omega, RatFunc(p.facet_poly(i)));
        if (ord == 1) ++boundary_found;
        rep.add("divisor H[" + p.facet_poly(i).str() + "]: simple pole", ord == 1,
                "pole order " + std::to_string(ord));
    }

    // No other poles: in the final chart the denominator factors into the
    // visible divisor transforms only.
    if (!prefix.empty()) {
        const TopForm& pio = prefix.back();
        MPoly rem = pio.coef.den();
        std::vector<MPoly> factors;
        for (size_t s = 0; s < seq.steps.size(); ++s)
            factors.push_back(seq.exceptional_in_final_chart(s).primitive());
        for (size_t i = 0; i < p.facets().size(); ++i) {
            MPoly h = p.facet_poly(i);
            for (auto& st : seq.steps) h = strict_transform_poly(h, st);
            factors.push_back(h.primitive());
        }
        for (auto idx : seq.skipped) {
            const LinearSubspace& h = b.subspaces[idx];
            if (h.is_empty() || !h.is_hyperplane()) continue;
            MPoly hp = equation_poly(p.chart_vars(), h.equations()[0]);
            for (auto& st : seq.steps) hp = strict_transform_poly(hp, st);
            factors.push_back(hp.primitive());
        }
        for (auto& f : factors) {
            if (f.is_constant()) continue;
            MPoly fv = f.with_vars(pio.chart);
            int m = rem.multiplicity(fv);
            for (int t = 0; t < m; ++t) rem = *rem.divide_exact(fv);
        }
        rep.add("no poles outside the predicted boundary divisors", rem.is_constant(), rem.str());
    }

    auto predicted = predicted_boundary(p, b);
    rep.add("boundary divisor count matches prediction", boundary_found == predicted.size(),
            std::to_string(boundary_found) + " vs " + std::to_string(predicted.size()));
    return rep;
}

}  // namespace wt
