#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "wondertope/m0n.hpp"

using namespace wt;

namespace {
RatFunc rf(const std::string& e, const std::vector<std::string>& vars) { return parse_ratfunc(e, vars); }
}  // namespace

TEST_CASE("braid_data") {
    SUBCASE("n=4: 6 hyperplanes, |B^min| = 11") {
        BraidData bd = braid_data(4);
        CHECK(bd.normals.size() == 6);
        CHECK(bd.minimal.size() == 11);
        CHECK(bd.minimal == minimal_building_set(bd.lattice));
    }
    SUBCASE("n=3: 3 hyperplanes, |B^min| = 4") {
        BraidData bd = braid_data(3);
        CHECK(bd.normals.size() == 3);
        CHECK(bd.minimal.size() == 4);  // 2^3 - 3 - 1
    }
    SUBCASE("arrangement lattice matches the partition lattice") {
        BraidData bd = braid_data(4);
        FlatLattice arr = FlatLattice::from_arrangement(bd.normals);
        CHECK(arr.size() == bd.lattice.size());
        for (int r = 0; r <= 3; ++r) {
            size_t a = 0, b = 0;
            for (size_t f = 0; f < arr.size(); ++f)
                if (arr.rank(f) == r) ++a;
            for (size_t f = 0; f < bd.lattice.size(); ++f)
                if (bd.lattice.rank(f) == r) ++b;
            CHECK(a == b);
        }
    }
    SUBCASE("n < 3 rejected") { CHECK_THROWS_AS(braid_data(2), error); }
}

TEST_CASE("regions") {
    SUBCASE("n=4 order region is a triangle, simplex region the corner triangle") {
        Polytope z = order_region(4);
        CHECK(z.dim() == 2);
        CHECK(z.rays().size() == 3);
        Polytope x = simplex_region(4);
        CHECK(x.rays().size() == 3);
        CHECK(polytope_form(x) ==
              TopForm(x.chart_vars(), rf("1/(x1*x2*(1-x1-x2))", x.chart_vars())));
    }
    SUBCASE("n=3 gives the segment (0,1)") {
        Polytope z = order_region(3);
        CHECK(z.dim() == 1);
        CHECK(polytope_form(z) == TopForm({"z1"}, rf("1/(z1*(1-z1))", {"z1"})));
    }
}

TEST_CASE("parke_taylor forms") {
    CHECK(parke_taylor(4) == TopForm({"z1", "z2"}, rf("1/(z1*(z2-z1)*(1-z2))", {"z1", "z2"})));
    CHECK(parke_taylor(3) == TopForm({"z1"}, rf("1/(z1*(1-z1))", {"z1"})));
    CHECK(parke_taylor(5) ==
          TopForm({"z1", "z2", "z3"}, rf("1/(z1*(z2-z1)*(z3-z2)*(1-z3))", {"z1", "z2", "z3"})));
}

TEST_CASE("verify_parke_taylor for n = 3..6") {
    for (size_t n = 3; n <= 6; ++n) {
        auto rep = verify_parke_taylor(n);
        CHECK(rep.ok());
        if (!rep.ok()) MESSAGE(rep.table());
    }
}

TEST_CASE("Parke-Taylor boundary recursion") {
    // Residues along z1 = 0 and z_{i+1} = z_i reproduce lower forms.
    for (size_t n = 4; n <= 5; ++n) {
        TopForm pt = parke_taylor(n);
        auto vars = pt.chart;
        SUBCASE(("n=" + std::to_string(n) + " residue at z1=0").c_str()) {
            TopForm r = residue_linear(pt, RatFunc::var(vars, "z1"));
            // Relabel z_{i+1} -> z_i to compare with the lower form.
            TopForm lower = parke_taylor(n - 1);
            std::vector<RatFunc> comp;
            for (size_t i = 0; i + 1 < vars.size(); ++i)
                comp.push_back(RatFunc::var(r.chart, vars[i + 1]));
            PolyMap relabel(r.chart, lower.chart, comp);
            CHECK(equal_up_to_sign(pullback(lower, relabel), r));
        }
        SUBCASE(("n=" + std::to_string(n) + " residue at z2=z1").c_str()) {
            TopForm r = residue_linear(pt, RatFunc::var(vars, "z2") - RatFunc::var(vars, "z1"));
            // The residue is a Parke-Taylor-type form with z2 glued to z1.
            CHECK(!r.is_zero());
            for (size_t i = 0; i < r.chart.size(); ++i)
                CHECK(pole_order(r, RatFunc::var(r.chart, r.chart[i])) <= 1);
        }
    }
}

TEST_CASE("divisor_count") {
    for (size_t n = 3; n <= 6; ++n) {
        auto dc = divisor_count(n);
        CHECK(dc.count == (size_t(1) << n) - n - 2);
        CHECK(dc.matches_formula);
        CHECK(dc.matches_nested_vertices);
    }
    CHECK(divisor_count(4).count == 10);
    CHECK(divisor_count(5).count == 25);
    CHECK(divisor_count(3).count == 3);
}

TEST_CASE("verify_m05_pentagon") {
    auto rep = verify_m05_pentagon();
    CHECK(rep.ok());
    if (!rep.ok()) MESSAGE(rep.table());
}
