#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "test_util.hpp"
#include "wondertope/polytope.hpp"

using namespace wt;

namespace {

const std::vector<std::string> XY = {"x", "y"};
const std::vector<std::string> XYZ = {"x", "y", "z"};

VecQ pt(std::initializer_list<long> v) {
    VecQ r;
    for (auto x : v) r.push_back(Rat(x));
    return r;
}

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

LinearSubspace subspace(const std::vector<std::string>& vars, const std::vector<std::string>& eqs) {
    std::vector<MPoly> ps;
    for (auto& e : eqs) ps.push_back(parse_mpoly(e, vars));
    return LinearSubspace::from_affine_equations(vars, ps);
}

size_t count_faces_of_dim(const std::vector<Face>& faces, int d) {
    return size_t(std::count_if(faces.begin(), faces.end(), [&](const Face& f) { return f.dim == d; }));
}

}  // namespace

TEST_CASE("dd_convert: unit square") {
    Polytope p = unit_square();
    CHECK(p.dim() == 2);
    CHECK(p.rays().size() == 4);
    auto ineqs = p.inequality_polys();
    REQUIRE(ineqs.size() == 4);
    std::set<std::string> got;
    for (auto& f : ineqs) got.insert(f.str());
    CHECK(got == std::set<std::string>{"x", "y", "-x + 1", "-y + 1"});
}

TEST_CASE("dd_convert: standard triangle from inequalities") {
    Polytope p = Polytope::from_inequalities(
        XY, {parse_mpoly("x", XY), parse_mpoly("y", XY), parse_mpoly("1-x-y", XY)});
    CHECK(p.dim() == 2);
    CHECK(p.rays().size() == 3);
    CHECK(p.contains_affine({rat(1, 4), rat(1, 4)}));
    CHECK(!p.contains_affine({rat(1), rat(1)}));
}

TEST_CASE("dd_convert: cube has 8 vertices and 6 facets") {
    Polytope p = unit_cube();
    CHECK(p.rays().size() == 8);
    CHECK(p.facets().size() == 6);
    CHECK(p.volume() == 1);
}

TEST_CASE("dd_convert: unbounded input rejected") {
    CHECK_THROWS_WITH_AS(Polytope::from_inequalities(XY, {parse_mpoly("x", XY), parse_mpoly("y", XY)}),
                         "polytope must avoid the hyperplane at infinity", error);
}

TEST_CASE("dd_convert round trip") {
    for (const Polytope& p : {unit_square(), unit_cube(), square_pyramid(), pentagon()}) {
        Polytope back = Polytope::from_inequalities(p.chart_vars(), p.inequality_polys());
        CHECK(back == p);
        Polytope back2 = Polytope::from_vertices(p.chart_vars(), p.affine_vertices());
        CHECK(back2 == p);
    }
}

TEST_CASE("face_lattice: square 1+4+4+1") {
    auto faces = unit_square().face_lattice();
    CHECK(count_faces_of_dim(faces, 2) == 1);
    CHECK(count_faces_of_dim(faces, 1) == 4);
    CHECK(count_faces_of_dim(faces, 0) == 4);
    CHECK(count_faces_of_dim(faces, -1) == 1);
}

TEST_CASE("face_lattice: simplex f-vector (1,4,6,4,1) plus empty") {
    Polytope p = Polytope::from_vertices(
        XYZ, {pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})});
    auto faces = p.face_lattice();
    CHECK(count_faces_of_dim(faces, 3) == 1);
    CHECK(count_faces_of_dim(faces, 2) == 4);
    CHECK(count_faces_of_dim(faces, 1) == 6);
    CHECK(count_faces_of_dim(faces, 0) == 4);
    CHECK(count_faces_of_dim(faces, -1) == 1);
}

TEST_CASE("face_lattice: square pyramid via brute-force tight sets") {
    Polytope p = square_pyramid();
    auto faces = p.face_lattice();
    CHECK(count_faces_of_dim(faces, 0) == 5);
    CHECK(count_faces_of_dim(faces, 1) == 8);
    CHECK(count_faces_of_dim(faces, 2) == 5);
    // Independent oracle: distinct tight-ray sets over all facet subsets.
    std::set<std::vector<size_t>> sets;
    size_t nf = p.facets().size();
    for (size_t mask = 0; mask < (size_t(1) << nf); ++mask) {
        std::vector<size_t> tightset;
        for (size_t i = 0; i < p.rays().size(); ++i) {
            bool ok = true;
            for (size_t j = 0; j < nf; ++j)
                if ((mask >> j) & 1)
                    if (dot(p.facets()[j], p.rays()[i]) != 0) { ok = false; break; }
            if (ok) tightset.push_back(i);
        }
        sets.insert(tightset);
    }
    sets.insert({});
    CHECK(sets.size() == faces.size());
}

TEST_CASE("is_face_of") {
    SUBCASE("triangle with point interior to an edge fails") {
        Polytope tri = Polytope::from_vertices(XY, {pt({0, 0}), pt({1, 0}), pt({0, 1})});
        auto q = is_face_of(tri, subspace(XY, {"x-1/2", "y"}));
        CHECK(!q.is_face);
        REQUIRE(q.witness.has_value());
        CHECK(tri.contains_affine(*q.witness));
    }
    SUBCASE("cube and the x-axis line meet in an edge") {
        auto q = is_face_of(unit_cube(), subspace(XYZ, {"y", "z"}));
        CHECK(q.is_face);
        CHECK(q.face_rays.size() == 2);
    }
    SUBCASE("disjoint line gives the empty face") {
        auto q = is_face_of(unit_square(), subspace(XY, {"x-2"}));
        CHECK(q.is_face);
        CHECK(q.face_rays.empty());
    }
    SUBCASE("line through the interior is not a face") {
        auto q = is_face_of(unit_square(), subspace(XY, {"y-1/2"}));
        CHECK(!q.is_face);
    }
}

TEST_CASE("face_relative") {
    SUBCASE("cube and x-axis gives the segment [0,1]") {
        Polytope f = face_relative(unit_cube(), subspace(XYZ, {"y", "z"}));
        CHECK(f.dim() == 1);
        CHECK(f.chart_vars() == std::vector<std::string>{"u1"});
        auto vs = f.affine_vertices();
        REQUIRE(vs.size() == 2);
        CHECK(vs[0] == VecQ{Rat(0)});
        CHECK(vs[1] == VecQ{Rat(1)});
    }
    SUBCASE("pyramid and an apex-exterior line gives the apex point") {
        Polytope f = face_relative(square_pyramid(), subspace(XYZ, {"y", "2*x-z+1"}));
        CHECK(f.dim() == 0);
        CHECK(f.rays().size() == 1);
    }
    SUBCASE("disjoint line gives the empty polytope") {
        Polytope f = face_relative(unit_square(), subspace(XY, {"x-2"}));
        CHECK(f.is_empty());
    }
}

TEST_CASE("normal_polytope") {
    SUBCASE("cube and x-axis edge: normal cone is the quadrant") {
        Polytope q = normal_polytope(unit_cube(), subspace(XYZ, {"y", "z"}));
        CHECK(q.dim() == 1);
        CHECK(q.chart_vars() == std::vector<std::string>{"y2"});
        REQUIRE(q.rays().size() == 2);
        CHECK(q.rays()[0] == VecQ{Rat(0), Rat(1)});
        CHECK(q.rays()[1] == VecQ{Rat(1), Rat(0)});
    }
    SUBCASE("square pyramid and apex point: quadrilateral in P^2") {
        Polytope p = Polytope::from_vertices(
            XYZ, {pt({-1, -1, 0}), pt({1, -1, 0}), pt({-1, 1, 0}), pt({1, 1, 0}), pt({0, 0, 1})});
        Polytope q = normal_polytope(p, subspace(XYZ, {"x", "y", "z - 1"}));
        CHECK(q.dim() == 2);
        CHECK(q.rays().size() == 4);
        CHECK(q.facets().size() == 4);
    }
    SUBCASE("disjoint subspace gives empty") {
        Polytope q = normal_polytope(unit_square(), subspace(XY, {"x-2"}));
        CHECK(q.is_empty());
    }
    SUBCASE("pointedness of the normal cone") {
        for (const Polytope& p : {unit_cube(), square_pyramid()}) {
            for (auto eqs : {std::vector<std::string>{"y", "z"}, std::vector<std::string>{"x", "y"}}) {
                auto w = subspace(XYZ, eqs);
                auto fq = is_face_of(p, w);
                if (!fq.is_face) continue;
                Polytope q = normal_polytope(p, w);
                if (q.is_empty()) continue;
                CHECK(cone_is_pointed(q.rays()));
            }
        }
    }
}

TEST_CASE("triangulate") {
    SUBCASE("square into 2 triangles") {
        auto t = unit_square().triangulate();
        CHECK(t.simplices.size() == 2);
        CHECK(triangulation_is_valid(unit_square(), t));
    }
    SUBCASE("pentagon into 3 triangles") {
        auto t = pentagon().triangulate();
        CHECK(t.simplices.size() == 3);
        CHECK(triangulation_is_valid(pentagon(), t));
    }
    SUBCASE("cube: volume sums to 1") {
        auto t = unit_cube().triangulate();
        Rat v = 0;
        for (auto& s : t.simplices) v += s.volume();
        CHECK(v == 1);
        CHECK(triangulation_is_valid(unit_cube(), t));
    }
    SUBCASE("alternative pull orders stay valid") {
        for (const Polytope& p : {unit_square(), pentagon(), unit_cube(), square_pyramid()}) {
            std::vector<size_t> order(p.rays().size());
            std::iota(order.begin(), order.end(), 0);
            std::reverse(order.begin(), order.end());
            auto t = p.triangulate(order);
            CHECK(triangulation_is_valid(p, t));
        }
    }
    SUBCASE("standard projective simplex triangulates as itself") {
        Polytope s = Polytope::standard_simplex(3);
        CHECK(s.dim() == 3);
        CHECK(s.rays().size() == 4);
        auto t = s.triangulate();
        CHECK(t.simplices.size() == 1);
        CHECK(triangulation_is_valid(s, t));
    }
}

TEST_CASE("induced triangulations") {
    Polytope cube = unit_cube();
    auto w = subspace(XYZ, {"y", "z"});
    auto t = cube.triangulate();
    SUBCASE("face triangulation of the edge") {
        auto tw = induced_face_triangulation(t, cube, w);
        Polytope pw = face_relative(cube, w);
        CHECK(!tw.simplices.empty());
        CHECK(tw.simplices.size() <= 2);
        CHECK(triangulation_is_valid(pw, tw));
    }
    SUBCASE("normal triangulation over each face simplex") {
        auto tw = induced_face_triangulation(t, cube, w);
        Polytope qw = normal_polytope(cube, w);
        for (auto& f : tw.simplices) {
            auto tn = induced_normal_triangulation(t, cube, w, f);
            CHECK(!tn.simplices.empty());
            CHECK(triangulation_is_valid(qw, tn));
        }
    }
    SUBCASE("P_W a vertex: face triangulation is the point") {
        Polytope pyr = square_pyramid();
        auto wl = subspace(XYZ, {"y", "2*x-z+1"});
        auto tp = pyr.triangulate();
        auto tw = induced_face_triangulation(tp, pyr, wl);
        CHECK(tw.simplices.size() == 1);
        CHECK(tw.simplices[0].rays.size() == 1);
    }
    SUBCASE("P_W empty: empty triangulation") {
        auto tw = induced_face_triangulation(t, cube, subspace(XYZ, {"x-5", "y-5"}));
        CHECK(tw.simplices.empty());
    }
    SUBCASE("normal triangulation undefined when dim P_W < dim PW") {
        Polytope pyr = square_pyramid();
        auto wl = subspace(XYZ, {"y", "2*x-z+1"});  // P_W = apex, dim 0 < 1
        auto tp = pyr.triangulate();
        Simplex f{{}, {VecQ{Rat(1)}}};
        CHECK_THROWS_WITH_AS(induced_normal_triangulation(tp, pyr, wl, f),
                             "normal triangulation undefined", error);
    }
    SUBCASE("simplex with facet subspace: normal triangulation is itself") {
        Polytope tri = Polytope::from_vertices(XY, {pt({0, 0}), pt({1, 0}), pt({0, 1})});
        auto we = subspace(XY, {"y"});
        Triangulation tt = tri.triangulate();
        auto tw = induced_face_triangulation(tt, tri, we);
        REQUIRE(tw.simplices.size() == 1);
        auto tn = induced_normal_triangulation(tt, tri, we, tw.simplices[0]);
        CHECK(tn.simplices.size() == 1);
        Polytope qw = normal_polytope(tri, we);
        CHECK(triangulation_is_valid(qw, tn));
    }
}

TEST_CASE("dimension law: dim P_W + dim P^W = dim P - 1 for full face contact") {
    struct Case {
        Polytope p;
        std::vector<std::string> eqs;
    };
    std::vector<Case> cases = {
        {unit_cube(), {"y", "z"}},
        {unit_cube(), {"x", "y", "z"}},
        {square_pyramid(), {"x", "y", "z-1"}},
        {unit_square(), {"x", "y"}},
    };
    for (auto& c : cases) {
        auto w = subspace(c.p.chart_vars(), c.eqs);
        auto fq = is_face_of(c.p, w);
        REQUIRE(fq.is_face);
        Polytope pw = face_relative(c.p, w);
        if (pw.is_empty() || pw.dim() != w.dim()) continue;
        Polytope qw = normal_polytope(c.p, w);
        CHECK(pw.dim() + qw.dim() == c.p.dim() - 1);
    }
}
