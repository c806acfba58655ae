#pragma once

#include <optional>
#include <ostream>

#include "wondertope/mpoly.hpp"

namespace wt {

/// Rational function num/den over a fixed variable list, kept canonical:
/// gcd(num, den) = 1, den primitive with positive graded-lex leading
/// coefficient. Equality is structural.
class RatFunc {
  public:
    RatFunc() : num_(MPoly({}, Rat(0))), den_(MPoly({}, Rat(1))) {}
    RatFunc(MPoly num, MPoly den);
    explicit RatFunc(const MPoly& num) : RatFunc(num, MPoly(num.vars(), Rat(1))) {}

    static RatFunc constant(std::vector<std::string> vars, const Rat& c);
    static RatFunc var(std::vector<std::string> vars, const std::string& name);

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    const std::vector<std::string>& vars() const { return num_.vars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat constant_value() const { return num_.constant_value() / den_.constant_value(); }
    bool is_polynomial() const { return den_.is_constant(); }

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

    RatFunc pow(int k) const;
    RatFunc derivative(int v) const;

    /// Exact evaluation; denominator must not vanish at the point.
    Rat eval(const std::vector<Rat>& point) const;

    /// Substitutes value for one variable; the result keeps this variable in
    /// its list (with degree 0) so charts stay aligned.
    RatFunc substitute_var(const std::string& name, const RatFunc& value) const;

    RatFunc with_vars(const std::vector<std::string>& vars) const;
    RatFunc without_var(const std::string& name) const;

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.str(); }

  private:
    MPoly num_, den_;
    void normalize();
};

/// normalize(f): canonical representative per the conventions above.
RatFunc normalize(const RatFunc& f);

/// Parses an arithmetic expression (+ - * / ^, parentheses, integers,
/// rationals p/q, variable names) over the given chart variables.
RatFunc parse_ratfunc(const std::string& expr, const std::vector<std::string>& vars);

/// Parse restricted to polynomials (error if a true denominator remains).
MPoly parse_mpoly(const std::string& expr, const std::vector<std::string>& vars);

}  // namespace wt
