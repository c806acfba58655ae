#include "wondertope/building_set.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace wt {

namespace {

// Pullback of a functional row through an affine chart change: the new row
// is old_row * backward.
VecQ pull_row(const VecQ& row, const MatQ& backward) {
    VecQ out(backward.ncols(), Rat(0));
    for (size_t j = 0; j < backward.ncols(); ++j)
        for (size_t i = 0; i < row.size(); ++i) out[j] += row[i] * backward[i][j];
    return out;
}

}  // namespace

GeomBuildingSet::GeomBuildingSet(std::vector<std::string> vars, std::vector<LinearSubspace> subs)
    : chart_vars(std::move(vars)), subspaces(std::move(subs)) {
    for (auto& s : subspaces) {
        if (s.chart_vars() != chart_vars) throw error("building-set member on a different chart");
        if (s.codim() == 0) throw error("building-set member is the whole space");
    }
    for (size_t i = 0; i < subspaces.size(); ++i)
        for (size_t j = i + 1; j < subspaces.size(); ++j)
            if (subspaces[i] == subspaces[j]) throw error("building-set members must be distinct");
    sort_inclusions_first();
}

void GeomBuildingSet::sort_inclusions_first() {
    std::stable_sort(subspaces.begin(), subspaces.end(),
                     [](const LinearSubspace& a, const LinearSubspace& b) { return a.dim() < b.dim(); });
}

int intersection_dim(const Polytope& p, const LinearSubspace& f) {
    auto rays = cone_section_rays(p, f);
    if (rays.empty()) return -1;
    MatQ m(rays);
    return int(rank(m)) - 1;
}

VerificationReport check_face_condition(const Polytope& p, const GeomBuildingSet& b) {
    VerificationReport rep;
    for (size_t i = 0; i < b.subspaces.size(); ++i) {
        auto fq = is_face_of(p, b.subspaces[i]);
        std::ostringstream name;
        name << "member " << i << " " << b.subspaces[i].str() << ": intersection with P is a face";
        std::string witness;
        if (!fq.is_face && fq.witness) {
            std::ostringstream w;
            w << "witness point (";
            for (size_t j = 0; j < fq.witness->size(); ++j)
                w << (j ? "," : "") << rat_str((*fq.witness)[j]);
            w << ")";
            witness = w.str();
        }
        rep.add(name.str(), fq.is_face, witness);
    }
    return rep;
}

bool check_facet_hyperplanes(const Polytope& p, const GeomBuildingSet& b) {
    for (size_t i = 0; i < p.facets().size(); ++i) {
        LinearSubspace h = LinearSubspace::from_affine_equations(p.chart_vars(), {p.facet_poly(i)});
        bool found = std::any_of(b.subspaces.begin(), b.subspaces.end(),
                                 [&](const LinearSubspace& s) { return s == h; });
        if (!found) return false;
    }
    return true;
}

VerificationReport check_building_set(const GeomBuildingSet& b) {
    VerificationReport rep;
    // Intersection closure of the family.
    std::set<LinearSubspace> closure(b.subspaces.begin(), b.subspaces.end());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<LinearSubspace> cur(closure.begin(), closure.end());
        for (auto& a : cur)
            for (auto& s : b.subspaces) {
                LinearSubspace l = a.intersect(s);
                if (!closure.count(l)) {
                    closure.insert(l);
                    grew = true;
                }
            }
    }
    for (auto& l : closure) {
        // Condition (3) lives on the projective side: projectively empty
        // intersections carry no stratum and are skipped. Empty members are
        // allowed but inert.
        if (l.is_empty()) continue;
        // Minimal members containing L.
        std::vector<size_t> containing;
        for (size_t i = 0; i < b.subspaces.size(); ++i)
            if (b.subspaces[i].contains(l)) containing.push_back(i);
        std::vector<size_t> minimal;
        for (auto i : containing) {
            bool is_min = true;
            for (auto j : containing) {
                if (i == j) continue;
                if (b.subspaces[i].contains(b.subspaces[j]) && !(b.subspaces[i] == b.subspaces[j])) {
                    is_min = false;
                    break;
                }
            }
            if (is_min) minimal.push_back(i);
        }
        size_t codim_sum = 0;
        for (auto i : minimal) codim_sum += b.subspaces[i].codim();
        bool ok = codim_sum == l.codim();
        std::ostringstream name, witness;
        name << "intersection " << l.str() << ": codimension factorization";
        witness << "sum of factor codims " << codim_sum << " vs codim " << l.codim();
        rep.add(name.str(), ok, witness.str());
    }
    return rep;
}

FacetRestriction restrict_to_facet(const Polytope& p, const GeomBuildingSet& b,
                                   const LinearSubspace& h) {
    if (!h.is_hyperplane()) throw error("facet restriction needs a hyperplane");
    auto std_ = standardize(h, face_chart_name);
    size_t n = p.chart_vars().size();
    std::vector<std::string> vars(std_.new_vars.begin(), std_.new_vars.begin() + (n - 1));

    FacetRestriction out;
    out.polytope = face_relative(p, h);
    std::vector<LinearSubspace> members;
    for (auto& f : b.subspaces) {
        if (f.contains(h)) continue;
        LinearSubspace cut = f.intersect(h);
        // Express in the adapted chart and drop the last coordinate.
        MatQ eqs;
        for (auto& row : cut.equations().rows) {
            VecQ u = pull_row(row, std_.backward);
            u.pop_back();
            eqs.rows.push_back(u);
        }
        LinearSubspace member(vars, eqs);
        if (std::find(members.begin(), members.end(), member) == members.end())
            members.push_back(member);
    }
    out.building_set = GeomBuildingSet(vars, members);
    return out;
}

GeomBuildingSet restrict_inside(const GeomBuildingSet& b, const LinearSubspace& w) {
    auto std_ = standardize(w, face_chart_name);
    size_t k = std_.center_dim_k;
    std::vector<std::string> vars(std_.new_vars.begin(), std_.new_vars.begin() + k);
    std::vector<LinearSubspace> members;
    for (auto& f : b.subspaces) {
        if (f.contains(w)) continue;
        LinearSubspace cut = f.intersect(w);
        MatQ eqs;
        for (auto& row : cut.equations().rows) {
            VecQ u = pull_row(row, std_.backward);
            // Coordinates u_{k+1..n} vanish on W; drop those columns.
            VecQ reduced(u.begin(), u.begin() + k + 1);
            eqs.rows.push_back(reduced);
        }
        LinearSubspace member(vars, eqs);
        if (std::find(members.begin(), members.end(), member) == members.end())
            members.push_back(member);
    }
    return GeomBuildingSet(vars, members);
}

GeomBuildingSet restrict_quotient(const GeomBuildingSet& b, const LinearSubspace& w,
                                  int chart_index) {
    auto std_ = standardize(w, normal_chart_name);
    size_t n = b.chart_vars.size();
    size_t k = std_.center_dim_k;
    size_t j = chart_index < 0 ? n : size_t(chart_index);
    std::vector<std::string> vars;
    for (size_t i = k + 1; i <= n; ++i)
        if (i != j) vars.push_back(normal_chart_name(i));
    std::vector<LinearSubspace> members;
    for (auto& f : b.subspaces) {
        if (!(w.contains(f)) || f == w) continue;  // need W' strictly containing W upstairs
        MatQ eqs;
        for (auto& row : f.equations().rows) {
            VecQ u = pull_row(row, std_.backward);
            // Functionals of subspaces containing W vanish on the W block.
            for (size_t i = 0; i <= k; ++i)
                if (u[i] != 0) throw error("quotient member does not contain W");
            VecQ q;
            q.push_back(u[j]);
            for (size_t i = k + 1; i <= n; ++i)
                if (i != j) q.push_back(u[i]);
            eqs.rows.push_back(q);
        }
        LinearSubspace member(vars, eqs);
        if (member.codim() == 0) continue;
        if (std::find(members.begin(), members.end(), member) == members.end())
            members.push_back(member);
    }
    return GeomBuildingSet(vars, members);
}

namespace {

void well_adapted_rec(const Polytope& p, const GeomBuildingSet& b, const std::string& label,
                      VerificationReport& rep) {
    if (p.chart_vars().size() <= 1) {
        rep.add(label + ": dimension 1 base case", true);
        return;
    }
    for (size_t i = 0; i < p.facets().size(); ++i) {
        LinearSubspace h = LinearSubspace::from_affine_equations(p.chart_vars(), {p.facet_poly(i)});
        std::string hl = label + " / facet " + p.facet_poly(i).str();
        auto res = restrict_to_facet(p, b, h);
        auto bs = check_building_set(res.building_set);
        rep.add(hl + ": restricted family is a building set", bs.ok(),
                bs.ok() ? "" : bs.checks[0].witness);
        auto fc = check_face_condition(res.polytope, res.building_set);
        rep.add(hl + ": restricted family meets P_H in faces", fc.ok());
        if (bs.ok() && fc.ok()) {
            well_adapted_rec(res.polytope, res.building_set, hl, rep);
        }
    }
}

}  // namespace

VerificationReport check_well_adapted(const Polytope& p, const GeomBuildingSet& b) {
    VerificationReport pre = check_face_condition(p, b);
    if (!pre.ok()) throw error("face condition violated");
    if (!check_building_set(b).ok()) throw error("not a building set");
    VerificationReport rep;
    well_adapted_rec(p, b, "B", rep);
    return rep;
}

std::vector<PredictedDivisor> predicted_boundary(const Polytope& p, const GeomBuildingSet& b) {
    std::vector<PredictedDivisor> out;
    for (auto& f : b.subspaces) {
        if (f.is_empty()) continue;
        if (intersection_dim(p, f) == f.dim()) out.push_back({true, f, "E_" + f.str()});
    }
    for (size_t i = 0; i < p.facets().size(); ++i) {
        LinearSubspace h = LinearSubspace::from_affine_equations(p.chart_vars(), {p.facet_poly(i)});
        bool in_b = std::any_of(b.subspaces.begin(), b.subspaces.end(),
                                [&](const LinearSubspace& s) { return s == h; });
        if (!in_b) out.push_back({false, h, "H_" + p.facet_poly(i).str()});
    }
    return out;
}

}  // namespace wt
