#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wondertope/rat.hpp"

namespace wt {

/// Exponent vector; one entry per variable of the owning polynomial.
using Exp = std::vector<int>;

/// Graded lexicographic order: compare total degree, then exponents left to
/// right (larger exponent on an earlier variable wins).
struct GrlexLess {
    bool operator()(const Exp& a, const Exp& b) const;
};

/// Sparse multivariate polynomial over Q with a fixed, ordered variable list.
/// No zero coefficients are stored; exponent vectors match the variable count.
class MPoly {
  public:
    MPoly() = default;
    explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}
    MPoly(std::vector<std::string> vars, const Rat& c);

    static MPoly constant(std::vector<std::string> vars, const Rat& c) { return MPoly(std::move(vars), c); }
    static MPoly var(std::vector<std::string> vars, const std::string& name);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Exp, Rat, GrlexLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term value; polynomial must be constant.
    Rat constant_value() const;

    int var_index(const std::string& name) const;  // -1 when absent
    int degree() const;                            // total degree, -1 for 0
    int degree_in(int v) const;

    void add_term(const Exp& e, const Rat& c);

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator*(const Rat& c) const;
    bool operator==(const MPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

    MPoly pow(int k) const;
    MPoly derivative(int v) const;
    Rat eval(const std::vector<Rat>& point) const;

    /// Leading term in graded-lex order.
    std::pair<Exp, Rat> leading() const;

    /// Re-expresses this polynomial over a superset variable list.
    MPoly with_vars(const std::vector<std::string>& vars) const;
    /// Drops variables the polynomial does not use (they must have degree 0).
    MPoly without_var(int v) const;

    /// Division with remainder by a single divisor (graded-lex leading terms).
    /// Exact for divisible inputs; remainder has no term divisible by lt(d).
    std::pair<MPoly, MPoly> divmod(const MPoly& d) const;
    /// Quotient when d divides exactly, nullopt otherwise.
    std::optional<MPoly> divide_exact(const MPoly& d) const;
    /// Multiplicity of d in this polynomial (0 for the zero polynomial).
    int multiplicity(const MPoly& d) const;

    /// Rational content: positive gcd of coefficient numerators over lcm of
    /// denominators, signed so the leading coefficient of p/content is >0.
    Rat content() const;
    MPoly primitive() const { return is_zero() ? *this : divide_coeff(content()); }
    MPoly divide_coeff(const Rat& c) const;

    /// True affine-linear: total degree <= 1.
    bool is_affine_linear() const { return degree() <= 1; }

    std::string str() const;

    friend std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.str(); }

  private:
    std::vector<std::string> vars_;
    std::map<Exp, Rat, GrlexLess> terms_;
};

/// Merged variable list: keeps a's order, then appends b's unseen variables.
std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// Polynomial gcd over Q, primitive with positive leading coefficient.
/// Subresultant PRS on primitive parts, recursing through the variables.
MPoly poly_gcd(const MPoly& a, const MPoly& b);

/// Primitive-PRS gcd; independent slower route kept for cross-checking.
MPoly poly_gcd_primitive_prs(const MPoly& a, const MPoly& b);

}  // namespace wt
