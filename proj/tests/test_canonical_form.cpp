#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "test_util.hpp"
#include "wondertope/canonical_form.hpp"

using namespace wt;

namespace {

const std::vector<std::string> X = {"x"};
const std::vector<std::string> XY = {"x", "y"};
const std::vector<std::string> XYZ = {"x", "y", "z"};

VecQ pt(std::initializer_list<long> v) {
    VecQ r;
    for (auto x : v) r.push_back(Rat(x));
    return r;
}

RatFunc rf(const std::string& e, const std::vector<std::string>& vars) { return parse_ratfunc(e, vars); }

Polytope unit_square() {
    return Polytope::from_vertices(XY, {pt({0, 0}), pt({1, 0}), pt({1, 1}), pt({0, 1})});
}

Polytope unit_cube() {
    std::vector<VecQ> vs;
    for (long a = 0; a <= 1; ++a)
        for (long b = 0; b <= 1; ++b)
            for (long c = 0; c <= 1; ++c) vs.push_back(pt({a, b, c}));
    return Polytope::from_vertices(XYZ, vs);
}

Polytope square_pyramid() {
    return Polytope::from_vertices(
        XYZ, {pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({1, 1, 0}), pt({0, 0, 1})});
}

Polytope pentagon() {
    return Polytope::from_vertices(
        XY, {pt({0, 0}), pt({4, 0}), pt({5, 3}), pt({2, 5}), pt({-1, 2})});
}

Polytope corner_simplex(size_t n) {
    std::vector<std::string> vars;
    for (size_t i = 1; i <= n; ++i) vars.push_back("x" + std::to_string(i));
    std::vector<VecQ> vs;
    vs.push_back(VecQ(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) {
        VecQ e(n, Rat(0));
        e[i] = 1;
        vs.push_back(e);
    }
    return Polytope::from_vertices(vars, vs);
}

}  // namespace

TEST_CASE("simplex_form") {
    SUBCASE("standard projective simplex: dlog form") {
        Polytope s2 = Polytope::standard_simplex(2);
        TopForm w = polytope_form(s2);
        CHECK(w == TopForm({"x1", "x2"}, rf("1/(x1*x2)", {"x1", "x2"})));
    }
    SUBCASE("bounded corner triangle") {
        Polytope tri = Polytope::from_vertices(XY, {pt({0, 0}), pt({1, 0}), pt({0, 1})});
        TopForm w = polytope_form(tri);
        CHECK(w == TopForm(XY, rf("1/(x*y*(1-x-y))", XY)));
    }
    SUBCASE("a point is +1") {
        Simplex s{{}, {VecQ{Rat(1)}}};
        CHECK(simplex_form(s) == TopForm({}, rf("1", {})));
    }
    SUBCASE("orientation independent of input ray order") {
        Simplex a{XY, {VecQ{Rat(1), Rat(0), Rat(0)}, VecQ{Rat(1), Rat(1), Rat(0)}, VecQ{Rat(1), Rat(0), Rat(1)}}};
        Simplex b{XY, {VecQ{Rat(1), Rat(1), Rat(0)}, VecQ{Rat(1), Rat(0), Rat(0)}, VecQ{Rat(1), Rat(0), Rat(1)}}};
        CHECK(simplex_form(a) == simplex_form(b));
    }
}

TEST_CASE("polytope_form") {
    SUBCASE("segment [0,1]: residues at the endpoints are +1, -1") {
        Polytope seg = Polytope::from_vertices(X, {pt({0}), pt({1})});
        TopForm w = polytope_form(seg);
        CHECK(w == TopForm(X, rf("1/(x*(1-x))", X)));
        CHECK(residue_linear(w, rf("x", X)) == TopForm({}, rf("1", {})));
        CHECK(residue_linear(w, rf("1-x", X)) == TopForm({}, rf("-1", {})));
    }
    SUBCASE("unit square: two independent routes") {
        TopForm w = polytope_form(unit_square());
        TopForm seg_x(X, rf("1/(x*(1-x))", X));
        TopForm seg_y({"y"}, rf("1/(y*(1-y))", {"y"}));
        CHECK(w == wedge(seg_x, seg_y));
        RatFunc sum = rf("1/(x*y*(1-x-y))", XY) + rf("1/((1-x)*(1-y)*(x+y-1))", XY);
        CHECK(w == TopForm(XY, sum));
    }
    SUBCASE("corner simplices up to dim 4") {
        for (size_t n = 1; n <= 4; ++n) {
            Polytope s = corner_simplex(n);
            TopForm w = polytope_form(s);
            RatFunc expect = RatFunc::constant(s.chart_vars(), 1);
            MPoly one_minus(s.chart_vars(), Rat(1));
            for (auto& v : s.chart_vars()) {
                expect = expect / RatFunc::var(s.chart_vars(), v);
                one_minus = one_minus - MPoly::var(s.chart_vars(), v);
            }
            expect = expect / RatFunc(one_minus);
            CHECK(w == TopForm(s.chart_vars(), expect));
        }
    }
    SUBCASE("cube equals the wedge of three segment forms") {
        TopForm w = polytope_form(unit_cube());
        TopForm expect = wedge(wedge(TopForm(X, rf("1/(x*(1-x))", X)),
                                     TopForm({"y"}, rf("1/(y*(1-y))", {"y"}))),
                               TopForm({"z"}, rf("1/(z*(1-z))", {"z"})));
        CHECK(w == expect);
    }
    SUBCASE("degenerate input rejected") {
        Polytope seg_in_plane = Polytope::from_vertices(XY, {pt({0, 0}), pt({1, 0})});
        CHECK_THROWS_AS(polytope_form(seg_in_plane), error);
    }
}

TEST_CASE("triangulation independence") {
    for (const Polytope& p : {unit_square(), pentagon(), unit_cube()}) {
        TopForm a = polytope_form(p);
        std::vector<size_t> order(p.rays().size());
        std::iota(order.begin(), order.end(), 0);
        std::reverse(order.begin(), order.end());
        TopForm b = polytope_form(p, order);
        CHECK(a == b);
        std::rotate(order.begin(), order.begin() + 1, order.end());
        CHECK(polytope_form(p, order) == a);
    }
}

TEST_CASE("facet_residue") {
    SUBCASE("square along y=0 gives the segment form") {
        Polytope sq = unit_square();
        bool found = false;
        for (size_t i = 0; i < sq.facets().size(); ++i) {
            if (sq.facet_poly(i).str() == "y") {
                found = true;
                CHECK(facet_residue(sq, i) == TopForm(X, rf("1/(x*(1-x))", X)));
            }
        }
        CHECK(found);
    }
    SUBCASE("corner simplex Delta^3 residues, both orientations") {
        Polytope s3 = corner_simplex(3);
        TopForm w = polytope_form(s3);
        auto vars = s3.chart_vars();
        TopForm r3 = residue_linear(w, rf("x3", vars));
        CHECK(r3 == TopForm({"x1", "x2"}, rf("1/(x1*x2*(1-x1-x2))", {"x1", "x2"})));
        TopForm r2 = residue_linear(w, rf("x2", vars));
        CHECK(r2 == TopForm({"x1", "x3"}, rf("-1/(x1*x3*(1-x1-x3))", {"x1", "x3"})));
    }
}

TEST_CASE("vertex residue soundness for polytope forms") {
    Polytope tri = Polytope::from_vertices(XY, {pt({0, 0}), pt({2, 1}), pt({1, 3})});
    TopForm w = polytope_form(tri);
    for (auto& f : tri.face_lattice()) {
        if (f.dim != 0) continue;
        std::vector<RatFunc> divisors;
        for (auto j : f.tight_facets) divisors.push_back(RatFunc(tri.facet_poly(j)));
        TopForm r = iterated_residue(w, divisors);
        REQUIRE(r.coef.is_constant());
        Rat v = r.coef.constant_value();
        CHECK((v == 1 || v == -1));
    }
}

TEST_CASE("verify_recursion") {
    SUBCASE("corner simplices") {
        for (size_t n = 2; n <= 3; ++n) {
            auto rep = verify_recursion(corner_simplex(n));
            CHECK(rep.ok());
        }
        // Delta^3: 1 + 4 + 6 + 4 distinct strata get first-visit checks.
        auto rep = verify_recursion(corner_simplex(3));
        size_t distinct = 0;
        for (auto& c : rep.checks)
            if (c.name.find("vertex residue") != std::string::npos ||
                c.name.find("stratum's canonical form") != std::string::npos)
                ++distinct;
        CHECK(distinct == 15);
    }
    SUBCASE("cube") { CHECK(verify_recursion(unit_cube()).ok()); }
    SUBCASE("square pyramid") { CHECK(verify_recursion(square_pyramid()).ok()); }
    SUBCASE("pentagon") { CHECK(verify_recursion(pentagon()).ok()); }
}

TEST_CASE("poles of polytope_form occur exactly at facet forms") {
    Polytope p = pentagon();
    TopForm w = polytope_form(p);
    for (size_t i = 0; i < p.facets().size(); ++i)
        CHECK(pole_order(w, RatFunc(p.facet_poly(i))) == 1);
    CHECK(pole_order(w, rf("x+y", XY)) == 0);
    MPoly rem = w.coef.den();
    for (size_t i = 0; i < p.facets().size(); ++i) {
        auto q = rem.divide_exact(p.facet_poly(i).primitive());
        REQUIRE(q.has_value());
        rem = *q;
    }
    CHECK(rem.is_constant());
}
