#include "wondertope/mpoly.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace wt {

bool GrlexLess::operator()(const Exp& a, const Exp& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

MPoly::MPoly(std::vector<std::string> vars, const Rat& c) : vars_(std::move(vars)) {
    if (c != 0) terms_[Exp(vars_.size(), 0)] = c;
}

MPoly MPoly::var(std::vector<std::string> vars, const std::string& name) {
    MPoly p(std::move(vars));
    int i = p.var_index(name);
    if (i < 0) throw error("unknown variable: " + name);
    Exp e(p.vars_.size(), 0);
    e[i] = 1;
    p.terms_[e] = 1;
    return p;
}

bool MPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && degree() == 0);
}

Rat MPoly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw error("polynomial is not constant: " + str());
    return terms_.begin()->second;
}

int MPoly::var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    return it == vars_.end() ? -1 : int(it - vars_.begin());
}

int MPoly::degree() const {
    if (terms_.empty()) return -1;
    const Exp& e = terms_.rbegin()->first;
    return std::accumulate(e.begin(), e.end(), 0);
}

int MPoly::degree_in(int v) const {
    int d = 0;
    for (auto& [e, c] : terms_) d = std::max(d, e[v]);
    return d;
}

void MPoly::add_term(const Exp& e, const Rat& c) {
    if (e.size() != vars_.size()) throw error("exponent arity mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0) terms_[e] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MPoly MPoly::operator-() const {
    MPoly r(vars_);
    for (auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
    if (vars_ != o.vars_) {
        auto vs = merge_vars(vars_, o.vars_);
        return with_vars(vs) + o.with_vars(vs);
    }
    MPoly r = *this;
    for (auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
    if (vars_ != o.vars_) {
        auto vs = merge_vars(vars_, o.vars_);
        return with_vars(vs) * o.with_vars(vs);
    }
    MPoly r(vars_);
    for (auto& [e1, c1] : terms_)
        for (auto& [e2, c2] : o.terms_) {
            Exp e(e1.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

MPoly MPoly::operator*(const Rat& c) const {
    MPoly r(vars_);
    if (c == 0) return r;
    for (auto& [e, k] : terms_) r.terms_[e] = k * c;
    return r;
}

MPoly MPoly::pow(int k) const {
    if (k < 0) throw error("negative power of polynomial");
    MPoly r(vars_, Rat(1));
    MPoly base = *this;
    while (k > 0) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

MPoly MPoly::derivative(int v) const {
    MPoly r(vars_);
    for (auto& [e, c] : terms_) {
        if (e[v] == 0) continue;
        Exp d = e;
        d[v] -= 1;
        r.add_term(d, c * e[v]);
    }
    return r;
}

Rat MPoly::eval(const std::vector<Rat>& point) const {
    if (point.size() != vars_.size()) throw error("evaluation arity mismatch");
    Rat acc = 0;
    for (auto& [e, c] : terms_) {
        Rat t = c;
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

std::pair<Exp, Rat> MPoly::leading() const {
    if (terms_.empty()) throw error("leading term of zero polynomial");
    auto it = terms_.rbegin();
    return {it->first, it->second};
}

MPoly MPoly::with_vars(const std::vector<std::string>& vars) const {
    if (vars == vars_) return *this;
    MPoly r(vars);
    std::vector<int> pos(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        pos[i] = r.var_index(vars_[i]);
        if (pos[i] < 0) throw error("with_vars: missing variable " + vars_[i]);
    }
    for (auto& [e, c] : terms_) {
        Exp ne(vars.size(), 0);
        for (size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
        r.add_term(ne, c);
    }
    return r;
}

MPoly MPoly::without_var(int v) const {
    std::vector<std::string> vs = vars_;
    vs.erase(vs.begin() + v);
    MPoly r(vs);
    for (auto& [e, c] : terms_) {
        if (e[v] != 0) throw error("without_var: variable in use: " + vars_[v]);
        Exp ne = e;
        ne.erase(ne.begin() + v);
        r.add_term(ne, c);
    }
    return r;
}

std::pair<MPoly, MPoly> MPoly::divmod(const MPoly& d) const {
    if (d.is_zero()) throw error("division by zero polynomial");
    if (vars_ != d.vars_) {
        auto vs = merge_vars(vars_, d.vars_);
        return with_vars(vs).divmod(d.with_vars(vs));
    }
    auto [de, dc] = d.leading();
    MPoly q(vars_), r(vars_), p = *this;
    while (!p.is_zero()) {
        auto [pe, pc] = p.leading();
        bool divisible = true;
        Exp qe(pe.size());
        for (size_t i = 0; i < pe.size(); ++i) {
            qe[i] = pe[i] - de[i];
            if (qe[i] < 0) { divisible = false; break; }
        }
        if (divisible) {
            MPoly t(vars_);
            t.terms_[qe] = pc / dc;
            q = q + t;
            p = p - t * d;
        } else {
            MPoly t(vars_);
            t.terms_[pe] = pc;
            r = r + t;
            p = p - t;
        }
    }
    return {q, r};
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

int MPoly::multiplicity(const MPoly& d) const {
    if (is_zero()) return 0;
    if (d.is_constant()) throw error("multiplicity of constant divisor");
    int m = 0;
    MPoly p = *this;
    while (true) {
        auto q = p.divide_exact(d);
        if (!q) return m;
        p = *q;
        ++m;
    }
}

Rat MPoly::content() const {
    if (is_zero()) return 0;
    mpz_class g = 0, l = 1;
    for (auto& [e, c] : terms_) {
        mpz_class num = abs(c.get_num());
        mpz_class den = c.get_den();
        mpz_class t;
        mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
        g = t;
        mpz_lcm(t.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
        l = t;
    }
    Rat c(g, l);
    c.canonicalize();
    if (sign(leading().second) < 0) c = -c;
    return c;
}

MPoly MPoly::divide_coeff(const Rat& c) const {
    if (c == 0) throw error("division by zero");
    MPoly r(vars_);
    for (auto& [e, k] : terms_) r.terms_[e] = k / c;
    return r;
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Descending graded-lex: leading term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rat a = c;
        if (first) {
            if (sign(a) < 0) { os << "-"; a = -a; }
        } else {
            os << (sign(a) < 0 ? " - " : " + ");
            if (sign(a) < 0) a = -a;
        }
        first = false;
        bool any_var = std::any_of(e.begin(), e.end(), [](int k) { return k > 0; });
        if (a != 1 || !any_var) {
            os << rat_str(a);
            if (any_var) os << "*";
        }
        bool started = false;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (started) os << "*";
            started = true;
            os << vars_[i];
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> r = a;
    for (auto& v : b)
        if (std::find(r.begin(), r.end(), v) == r.end()) r.push_back(v);
    return r;
}

namespace {

// Univariate view in variable v: coefficients keep the full variable list
// with exponent 0 at v.
std::map<int, MPoly> univariate_view(const MPoly& p, int v) {
    std::map<int, MPoly> coeffs;
    for (auto& [e, c] : p.terms()) {
        Exp re = e;
        int k = re[v];
        re[v] = 0;
        auto it = coeffs.find(k);
        if (it == coeffs.end()) it = coeffs.emplace(k, MPoly(p.vars())).first;
        it->second.add_term(re, c);
    }
    return coeffs;
}

MPoly from_univariate(const std::map<int, MPoly>& coeffs, const std::vector<std::string>& vars, int v) {
    MPoly r(vars);
    MPoly x = MPoly::var(vars, vars[v]);
    for (auto& [k, c] : coeffs) r = r + c * x.pow(k);
    return r;
}

MPoly univ_leading_coeff(const MPoly& p, int v) {
    auto view = univariate_view(p, v);
    return view.rbegin()->second;
}

// Pseudo-remainder of a by b in variable v: lc(b)^(da-db+1) * a mod b.
// The full power of lc(b) is restored even when leading terms cancel early,
// as the subresultant divisibility theorem assumes it.
MPoly pseudo_rem(const MPoly& a, const MPoly& b, int v) {
    int da = a.degree_in(v), db = b.degree_in(v);
    if (a.is_zero() || da < db) return a;
    MPoly lcb = univ_leading_coeff(b, v);
    MPoly r = a;
    MPoly x = MPoly::var(a.vars(), a.vars()[v]);
    int dr = da;
    int steps = 0;
    while (!r.is_zero() && (dr = r.degree_in(v)) >= db) {
        MPoly lcr = univ_leading_coeff(r, v);
        r = r * lcb - b * lcr * x.pow(dr - db);
        ++steps;
        if (!r.is_zero() && r.degree_in(v) == dr) throw error("pseudo_rem: no degree drop");
    }
    int missing = (da - db + 1) - steps;
    if (missing > 0 && !r.is_zero()) r = r * lcb.pow(missing);
    return r;
}

// Content of p as a univariate polynomial in v (gcd of its coefficients).
MPoly univ_content(const MPoly& p, int v) {
    MPoly g(p.vars());
    for (auto& [k, c] : univariate_view(p, v)) g = poly_gcd(g, c);
    return g;
}

int pick_main_var(const MPoly& a, const MPoly& b) {
    for (int v = int(a.vars().size()) - 1; v >= 0; --v)
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0) return v;
    return -1;
}

}  // namespace

MPoly poly_gcd(const MPoly& a, const MPoly& b) {
    if (a.vars() != b.vars()) {
        auto vs = merge_vars(a.vars(), b.vars());
        return poly_gcd(a.with_vars(vs), b.with_vars(vs));
    }
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    int v = pick_main_var(a, b);
    if (v < 0) return MPoly(a.vars(), Rat(1));  // both nonzero constants
    int da = a.degree_in(v), db = b.degree_in(v);
    if (da == 0) return poly_gcd(a, univ_content(b, v));
    if (db == 0) return poly_gcd(univ_content(a, v), b);

    MPoly ca = univ_content(a, v), cb = univ_content(b, v);
    MPoly cont = poly_gcd(ca, cb);
    MPoly f = *a.divide_exact(ca), g = *b.divide_exact(cb);
    if (f.degree_in(v) < g.degree_in(v)) std::swap(f, g);

    // Subresultant PRS (Brown). f, g primitive w.r.t. v.
    MPoly one(a.vars(), Rat(1));
    MPoly h = one, s = one;
    while (true) {
        int delta = f.degree_in(v) - g.degree_in(v);
        MPoly r = pseudo_rem(f, g, v);
        if (r.is_zero()) break;
        if (r.degree_in(v) == 0) {
            g = r;  // gcd of primitive parts is v-free, hence trivial below
            break;
        }
        MPoly divisor = s * h.pow(delta);
        auto q = r.divide_exact(divisor);
        if (!q) throw error("subresultant PRS: inexact division");
        f = g;
        g = *q;
        s = univ_leading_coeff(f, v);
        if (delta >= 1) {
            auto hq = s.pow(delta).divide_exact(h.pow(delta - 1));
            if (!hq) throw error("subresultant PRS: inexact h update");
            h = *hq;
        }
        // delta == 0 leaves h unchanged (h^{1-delta} g^delta = h).
    }
    if (g.degree_in(v) == 0) return cont.primitive();
    MPoly pp = *g.divide_exact(univ_content(g, v));
    return (cont * pp).primitive();
}

MPoly poly_gcd_primitive_prs(const MPoly& a, const MPoly& b) {
    if (a.vars() != b.vars()) {
        auto vs = merge_vars(a.vars(), b.vars());
        return poly_gcd_primitive_prs(a.with_vars(vs), b.with_vars(vs));
    }
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    int v = pick_main_var(a, b);
    if (v < 0) return MPoly(a.vars(), Rat(1));
    int da = a.degree_in(v), db = b.degree_in(v);
    if (da == 0) return poly_gcd_primitive_prs(a, univ_content(b, v));
    if (db == 0) return poly_gcd_primitive_prs(univ_content(a, v), b);

    auto content_of = [&](const MPoly& p) {
        MPoly g(p.vars());
        for (auto& [k, c] : univariate_view(p, v)) g = poly_gcd_primitive_prs(g, c);
        return g;
    };
    MPoly ca = content_of(a), cb = content_of(b);
    MPoly cont = poly_gcd_primitive_prs(ca, cb);
    MPoly f = *a.divide_exact(ca), g = *b.divide_exact(cb);
    if (f.degree_in(v) < g.degree_in(v)) std::swap(f, g);
    while (true) {
        MPoly r = pseudo_rem(f, g, v);
        if (r.is_zero()) break;
        if (r.degree_in(v) == 0) return cont.primitive();
        f = g;
        g = *r.divide_exact(content_of(r));
    }
    return (cont * g).primitive();
}

}  // namespace wt
