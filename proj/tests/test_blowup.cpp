#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "wondertope/blowup.hpp"

using namespace wt;

namespace {

const std::vector<std::string> XY = {"x", "y"};
const std::vector<std::string> XYZ = {"x", "y", "z"};

VecQ pt(std::initializer_list<long> v) {
    VecQ r;
    for (auto x : v) r.push_back(Rat(x));
    return r;
}

RatFunc rf(const std::string& e, const std::vector<std::string>& vars) { return parse_ratfunc(e, vars); }

Polytope unit_cube() {
    std::vector<VecQ> vs;
    for (long a = 0; a <= 1; ++a)
        for (long b = 0; b <= 1; ++b)
            for (long c = 0; c <= 1; ++c) vs.push_back(pt({a, b, c}));
    return Polytope::from_vertices(XYZ, vs);
}

Polytope corner_simplex3() {
    return Polytope::from_vertices(
        XYZ, {pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})});
}

Polytope square_pyramid() {
    return Polytope::from_vertices(
        XYZ, {pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({1, 1, 0}), pt({0, 0, 1})});
}

// The M_{0,5} triangle 0 < z1 < z2 < 1.
Polytope m05_triangle() {
    return Polytope::from_vertices({"z1", "z2"}, {pt({0, 0}), pt({0, 1}), pt({1, 1})});
}

LinearSubspace subspace(const std::vector<std::string>& vars, const std::vector<std::string>& eqs) {
    std::vector<MPoly> ps;
    for (auto& e : eqs) ps.push_back(parse_mpoly(e, vars));
    return LinearSubspace::from_affine_equations(vars, ps);
}

}  // namespace

TEST_CASE("blowup_chart maps") {
    SUBCASE("point in the plane: (y1, e) -> (y1*e, e)") {
        auto ch = blowup_chart(subspace(XY, {"x", "y"}));
        CHECK(ch.source_vars == std::vector<std::string>{"y1", "e"});
        CHECK(ch.map.components[0] == rf("y1*e", ch.source_vars));
        CHECK(ch.map.components[1] == rf("e", ch.source_vars));
    }
    SUBCASE("x-axis in 3-space: (u1, y2, e) -> (u1, y2*e, e)") {
        auto ch = blowup_chart(subspace(XYZ, {"y", "z"}));
        CHECK(ch.source_vars == std::vector<std::string>{"u1", "y2", "e"});
        CHECK(ch.map.components[0] == rf("u1", ch.source_vars));
        CHECK(ch.map.components[1] == rf("y2*e", ch.source_vars));
        CHECK(ch.map.components[2] == rf("e", ch.source_vars));
    }
    SUBCASE("map composed with its section is the identity") {
        for (auto eqs : {std::vector<std::string>{"x", "y"}, std::vector<std::string>{"y", "z-1"},
                         std::vector<std::string>{"x-y", "z"}}) {
            auto ch = blowup_chart(subspace(XYZ, eqs));
            PolyMap round = compose(ch.map, ch.section());
            for (size_t i = 0; i < XYZ.size(); ++i)
                CHECK(round.components[i] == RatFunc::var(XYZ, XYZ[i]));
        }
    }
    SUBCASE("codimension-1 center rejected") {
        CHECK_THROWS_WITH_AS(blowup_chart(subspace(XYZ, {"z"})), "blow-up is an isomorphism", error);
    }
}

TEST_CASE("jacobian law: det = const * e^(c-1)") {
    for (auto eqs : {std::vector<std::string>{"x", "y"}, std::vector<std::string>{"x", "y", "z"},
                     std::vector<std::string>{"x-y", "z-1"}}) {
        auto ch = blowup_chart(subspace(XYZ, eqs));
        RatFunc jac = jacobian_det(ch.map);
        RatFunc e = RatFunc::var(ch.source_vars, ch.exceptional_var);
        RatFunc ratio = jac / e.pow(int(ch.c) - 1);
        CHECK(ratio.is_constant());
        CHECK(!ratio.is_zero());
    }
}

TEST_CASE("fundamental computation: cube with the edge line") {
    Polytope cube = unit_cube();
    auto w = subspace(XYZ, {"y", "z"});
    auto rep = verify_fundamental(cube, w);
    CHECK(rep.ok());

    // Independent oracle: the pullback coefficient is
    // 1/(x*u*T*(1-x)*(1-u*T)*(1-T)) with T the exceptional variable; its
    // residue at T = 0 is 1/(x*(1-x)*u).
    auto ch = blowup_chart_for(cube, w);
    TopForm pio = pullback(polytope_form(cube), ch.map);
    std::vector<std::string> sv = ch.source_vars;
    RatFunc oracle_coef = rf("1/(u1*y2*e*(1-u1)*(1-y2*e)*(1-e))", sv);
    CHECK(pio.coef == oracle_coef);
    TopForm res = residue_linear(pio, RatFunc::var(sv, "e"));
    CHECK(res == TopForm({"u1", "y2"}, rf("1/(u1*(1-u1)*y2)", {"u1", "y2"})));
    // Limit oracle: (T * coef) at T = 0 equals the residue coefficient.
    RatFunc limit = (oracle_coef * RatFunc::var(sv, "e")).substitute_var("e", RatFunc::constant(sv, 0));
    CHECK(limit.without_var("e") == res.coef.with_vars({"u1", "y2"}));
    // And it matches the wedge of the face and normal canonical forms.
    TopForm expected = wedge(polytope_form(face_relative(cube, w)),
                             polytope_form(normal_polytope(cube, w)));
    CHECK(res == expected);
}

TEST_CASE("fundamental computation: no-pole cases at a vertex line") {
    Polytope cube = unit_cube();
    SUBCASE("line inside one facet plane: pole order exactly 0") {
        auto w = subspace(XYZ, {"z", "x+y"});
        auto fq = is_face_of(cube, w);
        REQUIRE(fq.is_face);
        REQUIRE(fq.face_rays.size() == 1);
        auto rep = verify_fundamental(cube, w);
        CHECK(rep.ok());
        auto ch = blowup_chart_for(cube, w);
        TopForm pio = pullback(polytope_form(cube), ch.map);
        CHECK(pole_order(pio, RatFunc::var(ch.source_vars, ch.exceptional_var)) == 0);
    }
    SUBCASE("generic vertex line: vanishing instead of pole") {
        auto w = subspace(XYZ, {"x-y", "x+z"});
        auto fq = is_face_of(cube, w);
        REQUIRE(fq.is_face);
        auto rep = verify_fundamental(cube, w);
        CHECK(rep.ok());
        auto ch = blowup_chart_for(cube, w);
        TopForm pio = pullback(polytope_form(cube), ch.map);
        CHECK(pole_order(pio, RatFunc::var(ch.source_vars, ch.exceptional_var)) < 0);
    }
}

TEST_CASE("fundamental computation: simplex edge gives a product of segment forms") {
    Polytope s3 = corner_simplex3();
    auto w = subspace(XYZ, {"y", "z"});
    auto rep = verify_fundamental(s3, w);
    CHECK(rep.ok());
    auto ch = blowup_chart_for(s3, w);
    TopForm pio = pullback(polytope_form(s3), ch.map);
    TopForm res = residue_linear(pio, RatFunc::var(ch.source_vars, "e"));
    CHECK(res == TopForm({"u1", "y2"}, rf("1/(u1*(1-u1)*y2)", {"u1", "y2"})));
}

TEST_CASE("fundamental computation: faceness violated") {
    Polytope cube = unit_cube();
    auto w = subspace(XYZ, {"y-1/2", "z"});
    CHECK_THROWS_AS(verify_fundamental(cube, w), error);
}

TEST_CASE("chart independence of the exceptional residue") {
    Polytope cube = unit_cube();
    auto w = subspace(XYZ, {"y", "z"});
    auto c3 = blowup_chart_for(cube, w, 3);
    auto c2 = blowup_chart_for(cube, w, 2);
    TopForm omega = polytope_form(cube);
    TopForm r3 = residue_linear(pullback(omega, c3.map), RatFunc::var(c3.source_vars, "e"));
    TopForm r2 = residue_linear(pullback(omega, c2.map), RatFunc::var(c2.source_vars, "e"));
    // Charts (u1, y2) and (u1, y3) glue by y3 = 1/y2 on the overlap.
    PolyMap t(r3.chart, r2.chart, {rf("u1", r3.chart), rf("1/y2", r3.chart)});
    CHECK(pullback(r2, t) == r3);
}

TEST_CASE("sequential blow-up") {
    SUBCASE("single point in the plane") {
        GeomBuildingSet b(XY, {subspace(XY, {"x", "y"})});
        auto seq = sequential_blowup(b);
        CHECK(seq.steps.size() == 1);
        CHECK(seq.skipped.empty());
        CHECK(seq.composed.components[0] == rf("y1_1*e_1", seq.final_vars()));
        CHECK(seq.composed.components[1] == rf("e_1", seq.final_vars()));
    }
    SUBCASE("two distinct points: order independence of the pulled-back form") {
        Polytope tri = m05_triangle();
        auto vars = tri.chart_vars();
        auto p1 = subspace(vars, {"z1", "z2"});
        auto p2 = subspace(vars, {"z1-1", "z2-1"});
        GeomBuildingSet b12(vars, {p1, p2});
        GeomBuildingSet b21(vars, {p2, p1});
        auto s12 = sequential_blowup(b12);
        auto s21 = sequential_blowup(b21);
        TopForm omega = polytope_form(tri);
        TopForm f12 = pullback(omega, s12.composed);
        TopForm f21 = pullback(omega, s21.composed);
        PolyMap t = compose(s21.section(), s12.composed);
        CHECK(pullback(f21, t) == f12);
    }
    SUBCASE("line and a point on it, point first: jacobian factors") {
        auto point = subspace(XYZ, {"x", "y", "z"});
        auto line = subspace(XYZ, {"y", "z"});
        GeomBuildingSet b(XYZ, {point, line});
        CHECK(b.subspaces[0] == point);  // inclusion order: the point first
        auto seq = sequential_blowup(b, {1, -1});
        REQUIRE(seq.steps.size() == 2);
        RatFunc jac = jacobian_det(seq.composed);
        const auto& fv = seq.final_vars();
        MPoly e1 = seq.exceptional_in_final_chart(0).with_vars(fv);
        MPoly e2 = seq.exceptional_in_final_chart(1).with_vars(fv);
        // codims 3 and 2: det = const * E1^2 * e2.
        RatFunc ratio = jac / (RatFunc(e1).pow(2) * RatFunc(e2));
        CHECK(ratio.is_constant());
        CHECK(!ratio.is_zero());
    }
    SUBCASE("unsupported chart path is reported") {
        auto point = subspace(XYZ, {"x", "y", "z"});
        auto line = subspace(XYZ, {"y", "z"});
        GeomBuildingSet b(XYZ, {point, line});
        CHECK_THROWS_AS(sequential_blowup(b, {3, -1}), error);
    }
}

TEST_CASE("sequence residues match the single-center computation") {
    // M05 triangle, exceptional divisor of the second blown-up point.
    Polytope tri = m05_triangle();
    auto vars = tri.chart_vars();
    auto p1 = subspace(vars, {"z1", "z2"});
    auto p2 = subspace(vars, {"z1-1", "z2-1"});
    GeomBuildingSet b(vars, {p1, p2});
    auto seq = sequential_blowup(b);
    TopForm omega = polytope_form(tri);
    TopForm pio = pullback(omega, seq.composed);
    const auto& fv = seq.final_vars();

    TopForm res_seq = residue_linear(pio, RatFunc::var(fv, "e_2"));

    auto single = blowup_chart_for(tri, p2);
    TopForm res_single =
        residue_linear(pullback(omega, single.map), RatFunc::var(single.source_vars, "e"));

    // Induced map between the exceptional charts: normalize the transition
    // and set e_2 = 0; the rational functions extend over the divisor.
    PolyMap t = compose(single.section(), seq.composed);
    std::vector<RatFunc> comps;
    std::vector<std::string> evars = res_seq.chart;
    for (size_t i = 0; i < t.components.size(); ++i) {
        if (single.source_vars[i] == "e") continue;
        RatFunc c = t.components[i].substitute_var("e_2", RatFunc::constant(fv, 0)).without_var("e_2");
        comps.push_back(c.with_vars(evars));
    }
    PolyMap te(evars, res_single.chart, comps);
    CHECK(equal_up_to_sign(pullback(res_single, te), res_seq));
}

TEST_CASE("verify_wondertope") {
    SUBCASE("triangle with its two blown-up vertices: the pentagon") {
        Polytope tri = m05_triangle();
        auto vars = tri.chart_vars();
        GeomBuildingSet b(vars, {subspace(vars, {"z1", "z2"}), subspace(vars, {"z1-1", "z2-1"})});
        auto rep = verify_wondertope(tri, b);
        CHECK(rep.ok());
        size_t boundary = 0;
        for (auto& c : rep.checks)
            if (c.name.find(": simple pole") != std::string::npos &&
                c.name.rfind("divisor", 0) == 0)
                ++boundary;
        CHECK(boundary == 5);
        CHECK(predicted_boundary(tri, b).size() == 5);
    }
    SUBCASE("square pyramid with the apex edge line") {
        Polytope pyr = square_pyramid();
        GeomBuildingSet b(XYZ, {subspace(XYZ, {"x", "y+z-1"})});
        auto rep = verify_wondertope(pyr, b);
        CHECK(rep.ok());
        CHECK(predicted_boundary(pyr, b).size() == 6);
    }
    SUBCASE("cube with an edge line") {
        Polytope cube = unit_cube();
        GeomBuildingSet b(XYZ, {subspace(XYZ, {"y", "z"})});
        auto rep = verify_wondertope(cube, b);
        CHECK(rep.ok());
        CHECK(predicted_boundary(cube, b).size() == 7);
    }
    SUBCASE("face condition violation is an error") {
        Polytope tri = Polytope::from_vertices(XY, {pt({0, 0}), pt({1, 0}), pt({0, 1})});
        GeomBuildingSet b(XY, {subspace(XY, {"x-1/2", "y"})});
        CHECK_THROWS_AS(verify_wondertope(tri, b), error);
    }
}
