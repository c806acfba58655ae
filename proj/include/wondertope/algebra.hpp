#pragma once

#include "wondertope/ratfunc.hpp"

namespace wt {

/// Rational map between affine charts: one component per target variable,
/// each a rational function of the source variables.
struct PolyMap {
    std::vector<std::string> source_vars;
    std::vector<std::string> target_vars;
    std::vector<RatFunc> components;  // components[i] = image of target_vars[i]

    PolyMap() = default;
    PolyMap(std::vector<std::string> src, std::vector<std::string> tgt, std::vector<RatFunc> comp);

    static PolyMap identity(const std::vector<std::string>& vars);
};

/// outer after inner: substitutes inner's components into outer's.
PolyMap compose(const PolyMap& outer, const PolyMap& inner);

/// Composition with f's variables contained in m.target_vars.
RatFunc substitute(const RatFunc& f, const PolyMap& m);

/// Symbolic determinant of d(components)/d(source_vars); map must be square.
RatFunc jacobian_det(const PolyMap& m);

/// Rational top-degree form coef * dx_1 ^ ... ^ dx_n on an ordered chart.
struct TopForm {
    std::vector<std::string> chart;
    RatFunc coef;

    TopForm() = default;
    TopForm(std::vector<std::string> chart_, RatFunc coef_);

    bool is_zero() const { return coef.is_zero(); }
    TopForm operator-() const { return TopForm(chart, -coef); }
    TopForm operator+(const TopForm& o) const;
    TopForm operator-(const TopForm& o) const { return *this + (-o); }
    bool operator==(const TopForm& o) const { return chart == o.chart && coef == o.coef; }

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const TopForm& w) { return os << w.str(); }
};

/// Exact comparison modulo global sign (for cross-convention checks).
bool equal_up_to_sign(const TopForm& a, const TopForm& b);

TopForm parse_topform(const std::string& text);

/// coef' = substitute(coef, m) * jacobian_det(m) on m's source chart.
TopForm pullback(const TopForm& w, const PolyMap& m);

/// Charts must be disjoint; result chart is the concatenation.
TopForm wedge(const TopForm& a, const TopForm& b);

/// Pole order of w along the affine-linear hypersurface {f = 0}:
/// multiplicity of f in the denominator minus multiplicity in the numerator
/// (negative values report vanishing order).
int pole_order(const TopForm& w, const RatFunc& f);

/// Residue along {f = 0} for f affine-linear in w's chart, with the region of
/// interest on {f >= 0} when interior_nonnegative (else f is negated first).
/// Eliminates the highest-index chart variable with nonzero coefficient in f;
/// the sign factor (-1)^(n-k) moves dx_k to the last wedge slot.
TopForm residue_linear(const TopForm& w, const RatFunc& f, bool interior_nonnegative = true);

/// Pivot variable index residue_linear would eliminate for f.
int residue_pivot(const std::vector<std::string>& chart, const RatFunc& f);

/// The pivot variable of f on the chart and its affine solution on {f = 0}
/// (a rational function of the remaining chart variables).
std::pair<std::string, RatFunc> pivot_solution(const std::vector<std::string>& chart, const RatFunc& f);

}  // namespace wt
