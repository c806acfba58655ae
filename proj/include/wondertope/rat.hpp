#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace wt {

/// Exact rational number. GMP keeps gcd(|num|,den)=1 and den>0 canonically.
using Rat = mpq_class;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw error("division by zero");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p", "-p" or "p/q".
inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw error("bad rational literal: " + s);
    r.canonicalize();
    if (r.get_den() == 0) throw error("zero denominator in rational: " + s);
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline int sign(const Rat& r) { return sgn(r); }

}  // namespace wt
