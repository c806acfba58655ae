#include "wondertope/ratfunc.hpp"

#include <cctype>
#include <sstream>

namespace wt {

RatFunc::RatFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.vars() != den_.vars()) {
        auto vs = merge_vars(num_.vars(), den_.vars());
        num_ = num_.with_vars(vs);
        den_ = den_.with_vars(vs);
    }
    normalize();
}

RatFunc RatFunc::constant(std::vector<std::string> vars, const Rat& c) {
    return RatFunc(MPoly(vars, c), MPoly(vars, Rat(1)));
}

RatFunc RatFunc::var(std::vector<std::string> vars, const std::string& name) {
    MPoly v = MPoly::var(vars, name);
    return RatFunc(v, MPoly(vars, Rat(1)));
}

void RatFunc::normalize() {
    if (den_.is_zero()) throw error("division by zero polynomial");
    if (num_.is_zero()) {
        num_ = MPoly(num_.vars());
        den_ = MPoly(num_.vars(), Rat(1));
        return;
    }
    MPoly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = *num_.divide_exact(g);
        den_ = *den_.divide_exact(g);
    }
    Rat c = den_.content();
    num_ = num_.divide_coeff(c);
    den_ = den_.divide_coeff(c);
}

RatFunc normalize(const RatFunc& f) { return f; }  // constructor already canonicalizes

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw error("division by zero polynomial");
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::pow(int k) const {
    if (k < 0) return RatFunc(den_, num_).pow(-k);
    return RatFunc(num_.pow(k), den_.pow(k));
}

RatFunc RatFunc::derivative(int v) const {
    MPoly n = num_.derivative(v) * den_ - num_ * den_.derivative(v);
    return RatFunc(n, den_ * den_);
}

Rat RatFunc::eval(const std::vector<Rat>& point) const {
    Rat d = den_.eval(point);
    if (d == 0) throw error("evaluation at a pole");
    return num_.eval(point) / d;
}

RatFunc RatFunc::substitute_var(const std::string& name, const RatFunc& value) const {
    int v = num_.var_index(name);
    if (v < 0) return *this;
    auto subst_poly = [&](const MPoly& p) {
        // Horner-free expansion: p = sum of coeff(v^k) * value^k.
        RatFunc acc = RatFunc::constant(p.vars(), 0);
        RatFunc val = value.with_vars(merge_vars(p.vars(), value.vars()));
        std::map<int, MPoly> by_deg;
        for (auto& [e, c] : p.terms()) {
            Exp re = e;
            int k = re[v];
            re[v] = 0;
            auto it = by_deg.find(k);
            if (it == by_deg.end()) it = by_deg.emplace(k, MPoly(p.vars())).first;
            it->second.add_term(re, c);
        }
        for (auto& [k, coef] : by_deg) acc = acc + RatFunc(coef) * val.pow(k);
        return acc;
    };
    RatFunc n = subst_poly(num_), d = subst_poly(den_);
    if (d.is_zero()) throw error("map image inside pole locus");
    return n / d;
}

RatFunc RatFunc::with_vars(const std::vector<std::string>& vars) const {
    return RatFunc(num_.with_vars(vars), den_.with_vars(vars));
}

RatFunc RatFunc::without_var(const std::string& name) const {
    int v = num_.var_index(name);
    if (v < 0) return *this;
    return RatFunc(num_.without_var(v), den_.without_var(v));
}

std::string RatFunc::str() const {
    if (is_polynomial() && den_.constant_value() == 1) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    const std::vector<std::string>& vars;

    void skip() { while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos; }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }

    RatFunc expr() {
        RatFunc r = term();
        while (true) {
            if (eat('+')) r = r + term();
            else if (eat('-')) r = r - term();
            else return r;
        }
    }
    RatFunc term() {
        RatFunc r = factor();
        while (true) {
            if (eat('*')) r = r * factor();
            else if (eat('/')) r = r / factor();
            else return r;
        }
    }
    RatFunc factor() {
        RatFunc b = base();
        if (eat('^')) {
            bool neg = eat('-');
            std::string digits;
            skip();
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) digits += s[pos++];
            if (digits.empty()) throw error("expected exponent at position " + std::to_string(pos));
            int k = std::stoi(digits);
            b = b.pow(neg ? -k : k);
        }
        return b;
    }
    RatFunc base() {
        skip();
        if (pos >= s.size()) throw error("unexpected end of expression");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            RatFunc r = expr();
            if (!eat(')')) throw error("missing ')'");
            return r;
        }
        if (c == '-') {
            ++pos;
            return -factor();
        }
        if (std::isdigit((unsigned char)c)) {
            std::string digits;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) digits += s[pos++];
            return RatFunc::constant(vars, parse_rat(digits));
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::string name;
            while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) || s[pos] == '_')) name += s[pos++];
            return RatFunc::var(vars, name);
        }
        throw error(std::string("unexpected character '") + c + "' in expression");
    }
};

}  // namespace

RatFunc parse_ratfunc(const std::string& expr, const std::vector<std::string>& vars) {
    Parser p{expr, 0, vars};
    RatFunc r = p.expr();
    p.skip();
    if (p.pos != expr.size()) throw error("trailing input in expression: " + expr.substr(p.pos));
    return r.with_vars(vars);
}

MPoly parse_mpoly(const std::string& expr, const std::vector<std::string>& vars) {
    RatFunc f = parse_ratfunc(expr, vars);
    if (!f.is_polynomial()) throw error("expression is not a polynomial: " + expr);
    Rat d = f.den().constant_value();
    return f.num().divide_coeff(d);
}

}  // namespace wt
