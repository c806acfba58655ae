#include "wondertope/m0n.hpp"

#include <algorithm>
#include <sstream>

namespace wt {

BraidData braid_data(size_t n) {
    if (n < 3) throw error("braid data needs n >= 3");
    BraidData bd;
    bd.n = n;
    // Coordinates y_1..y_{n-1} on V = R^n / R(1,..,1); x_i - x_j becomes
    // y_i - y_j for j < n and y_i for j = n.
    for (int i = 1; i <= int(n); ++i)
        for (int j = i + 1; j <= int(n); ++j) {
            VecQ v(n - 1, Rat(0));
            if (j < int(n)) {
                v[size_t(i - 1)] = 1;
                v[size_t(j - 1)] = -1;
            } else {
                v[size_t(i - 1)] = 1;
            }
            bd.pairs.push_back({i, j});
            bd.normals.push_back(v);
        }
    bd.lattice = FlatLattice::partition_lattice(n);
    for (size_t f = 0; f < bd.lattice.size(); ++f) {
        auto blocks = bd.lattice.edges_to_partition(bd.lattice.flat(f), n);
        size_t big = 0;
        for (auto& b : blocks)
            if (b.size() >= 2) ++big;
        if (big == 1) bd.minimal.push_back(f);
    }
    return bd;
}

std::vector<std::string> moduli_chart(size_t n) {
    std::vector<std::string> vars;
    for (size_t i = 1; i + 2 <= n; ++i) vars.push_back("z" + std::to_string(i));
    return vars;
}

LinearSubspace flat_subspace(const BraidData& bd, FlatId f) {
    // Homogeneous chart coordinates (X0, Z1..Z_{n-2}) = (y_{n-1}, y_1..y_{n-2});
    // y_n = 0. Each merged pair contributes one linear equation.
    size_t n = bd.n;
    auto vars = moduli_chart(n);
    MatQ eqs;
    uint32_t edges = bd.lattice.flat(f);
    for (size_t e = 0; e < bd.pairs.size(); ++e) {
        if (!((edges >> e) & 1)) continue;
        auto [i, j] = bd.pairs[e];
        VecQ row(n - 1, Rat(0));  // (X0, Z1..Z_{n-2})
        auto y_coord = [&](int idx, Rat coef) {
            if (idx == int(n)) return;                  // y_n = 0
            if (idx == int(n) - 1) row[0] += coef;      // y_{n-1} = X0
            else row[size_t(idx)] += coef;              // y_idx = Z_idx
        };
        y_coord(i, Rat(1));
        y_coord(j, Rat(-1));
        eqs.rows.push_back(row);
    }
    return LinearSubspace(vars, eqs);
}

Polytope order_region(size_t n) {
    auto vars = moduli_chart(n);
    size_t d = vars.size();
    std::vector<MPoly> ineqs;
    ineqs.push_back(MPoly::var(vars, vars[0]));  // z1 >= 0
    for (size_t i = 1; i < d; ++i)
        ineqs.push_back(MPoly::var(vars, vars[i]) - MPoly::var(vars, vars[i - 1]));
    ineqs.push_back(MPoly(vars, Rat(1)) - MPoly::var(vars, vars[d - 1]));  // z_{n-2} <= 1
    return Polytope::from_inequalities(vars, ineqs);
}

Polytope simplex_region(size_t n) {
    size_t d = n - 2;
    std::vector<std::string> vars;
    for (size_t i = 1; i <= d; ++i) vars.push_back("x" + std::to_string(i));
    std::vector<MPoly> ineqs;
    MPoly one_minus(vars, Rat(1));
    for (auto& v : vars) {
        ineqs.push_back(MPoly::var(vars, v));
        one_minus = one_minus - MPoly::var(vars, v);
    }
    ineqs.push_back(one_minus);
    return Polytope::from_inequalities(vars, ineqs);
}

PolyMap region_chart_change(size_t n) {
    // x1 = z1, xi = zi - z_{i-1}: source = z-chart, target = x-chart.
    auto zvars = moduli_chart(n);
    size_t d = zvars.size();
    std::vector<std::string> xvars;
    for (size_t i = 1; i <= d; ++i) xvars.push_back("x" + std::to_string(i));
    std::vector<RatFunc> comp;
    for (size_t i = 0; i < d; ++i) {
        MPoly p = MPoly::var(zvars, zvars[i]);
        if (i > 0) p = p - MPoly::var(zvars, zvars[i - 1]);
        comp.push_back(RatFunc(p));
    }
    return PolyMap(zvars, xvars, std::move(comp));
}

TopForm parke_taylor(size_t n) {
    if (n < 3) throw error("Parke-Taylor needs n >= 3");
    auto vars = moduli_chart(n);
    size_t d = vars.size();
    RatFunc den = RatFunc::var(vars, vars[0]);
    for (size_t i = 1; i < d; ++i)
        den = den * (RatFunc::var(vars, vars[i]) - RatFunc::var(vars, vars[i - 1]));
    den = den * (RatFunc::constant(vars, 1) - RatFunc::var(vars, vars[d - 1]));
    return TopForm(vars, RatFunc::constant(vars, 1) / den);
}

VerificationReport verify_parke_taylor(size_t n) {
    VerificationReport rep;
    TopForm pt = parke_taylor(n);
    // Route 1: the canonical form of the order region directly.
    TopForm direct = polytope_form(order_region(n));
    rep.add("canonical form of the order region equals the Parke-Taylor form", direct == pt,
            direct.coef == pt.coef ? "sign +" : direct.str());
    // Route 2: pull the simplex form back through the unimodular change.
    PolyMap change = region_chart_change(n);
    RatFunc jac = jacobian_det(change);
    rep.add("coordinate change is unimodular", jac.is_constant() &&
                                                   (jac.constant_value() == 1 || jac.constant_value() == -1),
            jac.str());
    TopForm pulled = pullback(polytope_form(simplex_region(n)), change);
    rep.add("pullback of the simplex form equals the Parke-Taylor form", pulled == pt,
            pulled.coef == pt.coef ? "sign +" : pulled.str());
    return rep;
}

DivisorCount divisor_count(size_t n) {
    BraidData bd = braid_data(n);
    DivisorCount dc;
    dc.count = bd.minimal.size() - 1;  // the top flat is projectively empty
    size_t formula = (size_t(1) << n) - n - 2;
    dc.matches_formula = dc.count == formula;
    NestedComplex nc = nested_set_complex(bd.lattice, bd.minimal);
    dc.matches_nested_vertices = nc.vertices.size() == dc.count;
    return dc;
}

VerificationReport verify_m05_pentagon() {
    VerificationReport rep;
    BraidData bd = braid_data(4);
    Polytope tri = order_region(4);
    auto vars = tri.chart_vars();

    // The rank-2 flats meeting the closed region at vertices: z1 = z2 = 0
    // (partition 124) and z1 = z2 = 1 (partition 123).
    std::vector<LinearSubspace> centers;
    for (auto f : bd.minimal) {
        LinearSubspace s = flat_subspace(bd, f);
        if (s.dim() != 0 || !s.meets_chart()) continue;
        auto fq = is_face_of(tri, s);
        if (fq.is_face && !fq.face_rays.empty()) centers.push_back(s);
    }
    rep.add("two vertex flats meet the closed region", centers.size() == 2,
            std::to_string(centers.size()) + " centers");
    if (centers.size() != 2) return rep;

    GeomBuildingSet b(vars, centers);
    VerificationReport wt_rep = verify_wondertope(tri, b);
    size_t boundary = 0;
    for (auto& c : wt_rep.checks)
        if (c.name.rfind("divisor", 0) == 0 && c.name.find(": simple pole") != std::string::npos &&
            c.status == CheckStatus::pass)
            ++boundary;
    rep.merge(wt_rep);
    rep.add("exactly 5 boundary divisors with simple poles", boundary == 5,
            std::to_string(boundary));

    // The canonical form is the Parke-Taylor form away from the exceptional
    // locus.
    rep.add("canonical form equals the Parke-Taylor form", polytope_form(tri) == parke_taylor(4));
    return rep;
}

}  // namespace wt
