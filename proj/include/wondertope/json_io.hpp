#pragma once

#include <json.hpp>

#include "wondertope/building_set.hpp"
#include "wondertope/matroid.hpp"
#include "wondertope/report.hpp"

namespace wt {

using nlohmann::json;

/// {"vars": [...], "vertices": [["p/q",...],...]} or
/// {"vars": [...], "inequalities": [[c0, c1, ...],...]}; rationals as exact
/// strings or integers. Invariants are checked while building.
Polytope parse_polytope(const json& j);

/// {"vars": [...], "equations": [[c0, c1, ...],...]} with c0 the constant.
LinearSubspace parse_subspace(const json& j, const std::vector<std::string>& fallback_vars = {});

/// {"vars": [...], "subspaces": [subspace, ...]}.
GeomBuildingSet parse_building_set(const json& j);

/// {"groundset": n, "flats": [[indices],...]}, {"arrangement": [[...],...]},
/// {"partition": n}, {"boolean": n} or {"uniform": [rank, n]}.
FlatLattice parse_lattice(const json& j);

json polytope_to_json(const Polytope& p);
json subspace_to_json(const LinearSubspace& s);
json form_to_json(const TopForm& w);
json report_to_json(const VerificationReport& r);  // {"schema": 1, ...}

}  // namespace wt
