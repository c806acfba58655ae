#include "wondertope/algebra.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace wt {

PolyMap::PolyMap(std::vector<std::string> src, std::vector<std::string> tgt, std::vector<RatFunc> comp)
    : source_vars(std::move(src)), target_vars(std::move(tgt)), components(std::move(comp)) {
    if (components.size() != target_vars.size()) throw error("map component count mismatch");
    for (auto& c : components)
        for (auto& v : c.vars())
            if (std::find(source_vars.begin(), source_vars.end(), v) == source_vars.end())
                throw error("map component uses non-source variable " + v);
    for (auto& c : components) c = c.with_vars(source_vars);
}

PolyMap PolyMap::identity(const std::vector<std::string>& vars) {
    std::vector<RatFunc> comp;
    for (auto& v : vars) comp.push_back(RatFunc::var(vars, v));
    return PolyMap(vars, vars, std::move(comp));
}

PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
    if (outer.source_vars != inner.target_vars) throw error("compose: chart mismatch");
    std::vector<RatFunc> comp;
    for (auto& c : outer.components) comp.push_back(substitute(c, inner));
    return PolyMap(inner.source_vars, outer.target_vars, std::move(comp));
}

RatFunc substitute(const RatFunc& f, const PolyMap& m) {
    for (auto& v : f.vars())
        if (std::find(m.target_vars.begin(), m.target_vars.end(), v) == m.target_vars.end())
            throw error("substitute: variable " + v + " not in map target");
    auto subst_poly = [&](const MPoly& p) {
        RatFunc acc = RatFunc::constant(m.source_vars, 0);
        // Cache powers of each component.
        std::vector<std::vector<RatFunc>> powers(m.components.size());
        for (size_t i = 0; i < m.components.size(); ++i)
            powers[i].push_back(RatFunc::constant(m.source_vars, 1));
        auto power = [&](size_t i, int k) {
            while (int(powers[i].size()) <= k) powers[i].push_back(powers[i].back() * m.components[i]);
            return powers[i][k];
        };
        for (auto& [e, c] : p.terms()) {
            RatFunc t = RatFunc::constant(m.source_vars, c);
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                int j = -1;
                for (size_t k = 0; k < m.target_vars.size(); ++k)
                    if (m.target_vars[k] == p.vars()[i]) { j = int(k); break; }
                t = t * power(size_t(j), e[i]);
            }
            acc = acc + t;
        }
        return acc;
    };
    const MPoly num = f.num().with_vars(f.vars());
    RatFunc n = subst_poly(f.num()), d = subst_poly(f.den());
    if (d.is_zero()) throw error("map image inside pole locus");
    return n / d;
}

RatFunc jacobian_det(const PolyMap& m) {
    size_t n = m.source_vars.size();
    if (n != m.target_vars.size()) throw error("jacobian of non-square map");
    std::vector<std::vector<RatFunc>> J(n, std::vector<RatFunc>(n));
    for (size_t i = 0; i < n; ++i) {
        RatFunc ci = m.components[i].with_vars(m.source_vars);
        for (size_t j = 0; j < n; ++j) J[i][j] = ci.derivative(int(j));
    }
    // Laplace expansion; fine at chart dimensions used here.
    std::vector<size_t> cols(n);
    for (size_t j = 0; j < n; ++j) cols[j] = j;
    std::function<RatFunc(size_t, std::vector<size_t>&)> det = [&](size_t row, std::vector<size_t>& cs) {
        if (cs.empty()) return RatFunc::constant(m.source_vars, 1);
        RatFunc acc = RatFunc::constant(m.source_vars, 0);
        for (size_t t = 0; t < cs.size(); ++t) {
            size_t col = cs[t];
            if (J[row][col].is_zero()) continue;
            std::vector<size_t> rest;
            for (size_t u = 0; u < cs.size(); ++u)
                if (u != t) rest.push_back(cs[u]);
            RatFunc minor = det(row + 1, rest);
            RatFunc term = J[row][col] * minor;
            acc = (t % 2 == 0) ? acc + term : acc - term;
        }
        return acc;
    };
    return det(0, cols);
}

TopForm::TopForm(std::vector<std::string> chart_, RatFunc coef_)
    : chart(std::move(chart_)), coef(std::move(coef_)) {
    std::set<std::string> seen(chart.begin(), chart.end());
    if (seen.size() != chart.size()) throw error("chart variables not distinct");
    for (auto& v : coef.vars())
        if (!seen.count(v)) throw error("form coefficient uses non-chart variable " + v);
    coef = coef.with_vars(chart);
}

TopForm TopForm::operator+(const TopForm& o) const {
    if (chart != o.chart) throw error("form addition on different charts");
    return TopForm(chart, coef + o.coef);
}

std::string TopForm::str() const {
    std::ostringstream os;
    os << coef.str();
    for (auto& v : chart) os << " d(" << v << ")";
    return os.str();
}

bool equal_up_to_sign(const TopForm& a, const TopForm& b) {
    return a.chart == b.chart && (a.coef == b.coef || a.coef == -b.coef);
}

TopForm parse_topform(const std::string& text) {
    // Grammar: <coef expr> ("d(" name ")")*
    size_t d = text.find(" d(");
    std::string coef_part = d == std::string::npos ? text : text.substr(0, d);
    std::vector<std::string> chart;
    size_t pos = d;
    while (pos != std::string::npos && pos < text.size()) {
        size_t open = text.find("d(", pos);
        if (open == std::string::npos) break;
        size_t close = text.find(')', open);
        if (close == std::string::npos) throw error("malformed form literal");
        chart.push_back(text.substr(open + 2, close - open - 2));
        pos = close + 1;
    }
    return TopForm(chart, parse_ratfunc(coef_part, chart));
}

TopForm pullback(const TopForm& w, const PolyMap& m) {
    if (w.chart != m.target_vars) throw error("pullback: form chart differs from map target");
    if (m.source_vars.size() != m.target_vars.size()) throw error("pullback: dimension mismatch");
    RatFunc c = substitute(w.coef, m) * jacobian_det(m);
    return TopForm(m.source_vars, c);
}

TopForm wedge(const TopForm& a, const TopForm& b) {
    for (auto& v : a.chart)
        if (std::find(b.chart.begin(), b.chart.end(), v) != b.chart.end())
            throw error("wedge: overlapping chart variable " + v);
    std::vector<std::string> chart = a.chart;
    chart.insert(chart.end(), b.chart.begin(), b.chart.end());
    return TopForm(chart, a.coef.with_vars(chart) * b.coef.with_vars(chart));
}

namespace {

MPoly linear_part_check(const RatFunc& f, const std::vector<std::string>& chart) {
    if (!f.is_polynomial()) throw error("divisor must be polynomial");
    MPoly p = f.num().divide_coeff(f.den().constant_value()).with_vars(chart);
    if (p.degree() > 1) throw error("divisor is not affine-linear");
    if (p.degree() < 1) throw error("divisor is constant");
    return p;
}

}  // namespace

int pole_order(const TopForm& w, const RatFunc& f) {
    if (!f.is_polynomial() || f.num().is_constant()) throw error("pole_order: divisor must be a non-constant polynomial");
    MPoly d = f.num().primitive().with_vars(w.chart);
    if (w.coef.is_zero()) return 0;
    MPoly num = w.coef.num().with_vars(w.chart);
    MPoly den = w.coef.den().with_vars(w.chart);
    return den.multiplicity(d) - num.multiplicity(d);
}

int residue_pivot(const std::vector<std::string>& chart, const RatFunc& f) {
    MPoly p = linear_part_check(f, chart);
    int pivot = -1;
    for (int v = int(chart.size()) - 1; v >= 0; --v) {
        if (p.degree_in(v) == 1) { pivot = v; break; }
    }
    if (pivot < 0) throw error("divisor has no linear chart variable");
    return pivot;
}

std::pair<std::string, RatFunc> pivot_solution(const std::vector<std::string>& chart, const RatFunc& f) {
    MPoly p = linear_part_check(f, chart);
    int k = residue_pivot(chart, f);
    Exp ek(chart.size(), 0);
    ek[size_t(k)] = 1;
    Rat ck = 0;
    MPoly rest(chart);
    for (auto& [e, c] : p.terms()) {
        if (e == ek) ck = c;
        else rest.add_term(e, c);
    }
    RatFunc sol = RatFunc(-rest) / RatFunc::constant(chart, ck);
    return {chart[size_t(k)], sol};
}

TopForm residue_linear(const TopForm& w, const RatFunc& f, bool interior_nonnegative) {
    RatFunc g = interior_nonnegative ? f : -f;
    MPoly p = linear_part_check(g, w.chart);
    int ord = pole_order(w, g);
    if (ord >= 2) throw error("non-simple pole");
    int k = residue_pivot(w.chart, g);
    size_t n = w.chart.size();

    // Coefficient of the pivot variable and the affine solution on {f = 0}.
    Exp ek(n, 0);
    ek[size_t(k)] = 1;
    Rat ck = 0;
    MPoly rest(w.chart);
    for (auto& [e, c] : p.terms()) {
        if (e == ek) ck = c;
        else rest.add_term(e, c);
    }
    RatFunc solution = RatFunc(-rest) / RatFunc::constant(w.chart, ck);

    RatFunc alpha = w.coef * RatFunc(p) / RatFunc::constant(w.chart, ck);
    if ((int(n) - (k + 1)) % 2 == 1) alpha = -alpha;
    RatFunc restricted = alpha.substitute_var(w.chart[size_t(k)], solution);

    std::vector<std::string> sub_chart = w.chart;
    sub_chart.erase(sub_chart.begin() + k);
    return TopForm(sub_chart, restricted.without_var(w.chart[size_t(k)]));
}

}  // namespace wt
